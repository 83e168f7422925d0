#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "neurocap/viz/projection.hpp"

namespace neurocap::viz {

struct PcaResult {
    ProjectionResult projection;
    Tensor2 components;  // k x D, orthonormal rows
    Vector mean;         // D
    Vector eigenvalues;  // all D covariance eigenvalues, descending
};

/// Projects the rows of `vectors` onto the top-k eigenvectors of their sample
/// covariance. Each component's largest-magnitude entry is made positive.
/// Requires N >= 2 and 1 <= k <= min(N - 1, D); all-identical rows are rejected.
PcaResult pca_project(const Tensor2& vectors, std::size_t k, std::vector<std::string> labels = {});

/// Maps projected coordinates back to the input space.
Tensor2 pca_reconstruct(const PcaResult& pca);

}  // namespace neurocap::viz
