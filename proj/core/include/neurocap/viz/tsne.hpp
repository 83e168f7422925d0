#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "neurocap/viz/projection.hpp"

namespace neurocap::viz {

struct TsneOptions {
    double perplexity = 0.0;  // 0 selects default_perplexity(N)
    std::uint64_t seed = 0;
    std::size_t iterations = 1000;
    double exaggeration = 12.0;
    std::size_t exaggeration_iterations = 250;
    double learning_rate = 200.0;
    double initial_momentum = 0.5;
    double final_momentum = 0.8;
    std::size_t momentum_switch = 250;
    double min_gain = 0.01;
};

/// min(30, (N - 1) / 3 - 1).
double default_perplexity(std::size_t n);

/// Symmetrized joint affinities (P + P^T) / sum over squared Euclidean
/// distances, with each row's bandwidth found by binary search so its
/// entropy equals log(perplexity).
Tensor2 tsne_affinities(const Tensor2& vectors, double perplexity);

/// KL(P || Q) for the Student-t affinities Q of the embedding `points`.
double tsne_kl(const Tensor2& p, const Tensor2& points);

/// Exact t-SNE into two dimensions. Requires N >= 4 and perplexity < (N - 1) / 3.
ProjectionResult tsne_project(const Tensor2& vectors, const TsneOptions& options = {},
                              std::vector<std::string> labels = {});

}  // namespace neurocap::viz
