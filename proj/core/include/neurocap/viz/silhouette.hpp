#pragma once

#include <string>
#include <vector>

#include "neurocap/tensor.hpp"

namespace neurocap::viz {

/// Mean silhouette coefficient under Euclidean distance. Points alone in
/// their cluster score 0. Requires 2 <= clusters <= N - 1.
double silhouette_score(const Tensor2& points, const std::vector<std::string>& labels);

}  // namespace neurocap::viz
