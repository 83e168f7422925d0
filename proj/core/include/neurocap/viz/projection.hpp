#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "neurocap/tensor.hpp"

namespace neurocap::viz {

enum class Method { pca, tsne };

std::string_view to_string(Method m);
Method method_from_string(std::string_view name);

struct ProjectionResult {
    Tensor2 points;                   // N x k
    std::vector<std::string> labels;  // N entries, possibly empty strings
    Method method = Method::pca;
    std::vector<double> explained_variance_ratio;  // pca only
    double initial_kl = 0.0;                       // tsne only
    double final_kl = 0.0;
    std::uint64_t seed = 0;
};

}  // namespace neurocap::viz
