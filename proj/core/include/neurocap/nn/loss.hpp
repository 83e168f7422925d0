#pragma once

#include <cstddef>
#include <span>

#include "neurocap/tensor.hpp"

namespace neurocap::nn {

struct LossResult {
    double loss = 0.0;
    Vector grad;
};

/// (1/D) sum (pred - target)^2 and its gradient (2/D)(pred - target).
LossResult mse_loss(const Vector& pred, const Vector& target);

/// -log softmax(logits)[target] with gradient softmax - onehot.
LossResult softmax_cross_entropy(const Vector& logits, std::size_t target);

Vector softmax(const Vector& logits);
Vector log_softmax(const Vector& logits);

/// Mean over rows of the per-row MSE; `grad` (optional) receives d(mean)/dpred.
double mse_loss(const Tensor2& pred, const Tensor2& target, Tensor2* grad);

/// Sum of per-row cross-entropies. Rows whose target is negative are masked:
/// they contribute neither loss nor gradient. `grad` (optional) receives the
/// unscaled per-row gradients.
double softmax_cross_entropy(const Tensor2& logits, std::span<const int> targets, Tensor2* grad);

}  // namespace neurocap::nn
