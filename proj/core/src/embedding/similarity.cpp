#include "neurocap/embedding/similarity.hpp"

#include <algorithm>

#include "neurocap/error.hpp"

namespace neurocap::embedding {

double cosine_similarity(const Vector& a, const Vector& b) {
    require_dim(static_cast<std::size_t>(b.size()), static_cast<std::size_t>(a.size()),
                "cosine_similarity");
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0.0 || nb == 0.0) throw ArgumentError("cosine_similarity: zero-norm vector");
    return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

}  // namespace neurocap::embedding
