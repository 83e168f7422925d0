#include "neurocap/viz/silhouette.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "neurocap/error.hpp"

namespace neurocap::viz {

double silhouette_score(const Tensor2& points, const std::vector<std::string>& labels) {
    const auto n = static_cast<std::size_t>(points.rows());
    if (labels.size() != n) throw DimensionError("silhouette: label count differs from point count");
    std::map<std::string, int> ids;
    for (const auto& l : labels) ids.emplace(l, 0);
    if (ids.size() < 2 || ids.size() > n - 1) {
        throw ArgumentError("silhouette: need between 2 and N-1 distinct labels");
    }
    int next = 0;
    for (auto& [label, id] : ids) id = next++;
    std::vector<int> cluster(n);
    std::vector<std::size_t> sizes(ids.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        cluster[i] = ids[labels[i]];
        ++sizes[static_cast<std::size_t>(cluster[i])];
    }

    double total = 0.0;
    std::vector<double> sums(ids.size());
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto diff = points.row(static_cast<Eigen::Index>(i)) - points.row(static_cast<Eigen::Index>(j));
            sums[static_cast<std::size_t>(cluster[j])] += diff.norm();
        }
        const auto own = static_cast<std::size_t>(cluster[i]);
        if (sizes[own] == 1) continue;
        const double a = sums[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < sizes.size(); ++c) {
            if (c != own) b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
        }
        const double denom = std::max(a, b);
        if (denom > 0) total += (b - a) / denom;
    }
    return total / static_cast<double>(n);
}

}  // namespace neurocap::viz
