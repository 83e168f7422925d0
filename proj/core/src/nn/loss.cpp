#include "neurocap/nn/loss.hpp"

#include <cmath>
#include <string>

#include "neurocap/error.hpp"

namespace neurocap::nn {

LossResult mse_loss(const Vector& pred, const Vector& target) {
    require_dim(static_cast<std::size_t>(pred.size()), static_cast<std::size_t>(target.size()),
                "mse_loss");
    if (pred.size() == 0) throw DimensionError("mse_loss: empty vectors");
    const double d = static_cast<double>(pred.size());
    const Vector diff = pred - target;
    return {diff.squaredNorm() / d, (2.0 / d) * diff};
}

Vector log_softmax(const Vector& logits) {
    if (logits.size() == 0) throw DimensionError("log_softmax: empty logits");
    const double mx = logits.maxCoeff();
    const Vector shifted = logits.array() - mx;
    const double lse = std::log(shifted.array().exp().sum());
    return shifted.array() - lse;
}

Vector softmax(const Vector& logits) {
    if (logits.size() == 0) throw DimensionError("softmax: empty logits");
    const double mx = logits.maxCoeff();
    Vector e = (logits.array() - mx).exp();
    return e / e.sum();
}

LossResult softmax_cross_entropy(const Vector& logits, std::size_t target) {
    if (target >= static_cast<std::size_t>(logits.size())) {
        throw ArgumentError("softmax_cross_entropy: target index " + std::to_string(target) +
                            " out of range for " + std::to_string(logits.size()) + " classes");
    }
    const Vector lp = log_softmax(logits);
    Vector grad = lp.array().exp();
    grad(static_cast<Eigen::Index>(target)) -= 1.0;
    return {-lp(static_cast<Eigen::Index>(target)), std::move(grad)};
}

double mse_loss(const Tensor2& pred, const Tensor2& target, Tensor2* grad) {
    if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
        throw DimensionError("mse_loss: shape mismatch");
    }
    if (pred.size() == 0) throw DimensionError("mse_loss: empty batch");
    const double n = static_cast<double>(pred.rows());
    const double d = static_cast<double>(pred.cols());
    const Tensor2 diff = pred - target;
    if (grad != nullptr) *grad = (2.0 / (n * d)) * diff;
    return diff.squaredNorm() / (n * d);
}

double softmax_cross_entropy(const Tensor2& logits, std::span<const int> targets, Tensor2* grad) {
    if (static_cast<std::size_t>(logits.rows()) != targets.size()) {
        throw DimensionError("softmax_cross_entropy: one target per row required");
    }
    const Eigen::Index classes = logits.cols();
    if (grad != nullptr) *grad = Tensor2::Zero(logits.rows(), classes);
    double total = 0.0;
    for (Eigen::Index r = 0; r < logits.rows(); ++r) {
        const int t = targets[static_cast<std::size_t>(r)];
        if (t < 0) continue;
        if (t >= classes) {
            throw ArgumentError("softmax_cross_entropy: target index " + std::to_string(t) +
                                " out of range");
        }
        const double mx = logits.row(r).maxCoeff();
        const Eigen::RowVectorXd e = (logits.row(r).array() - mx).exp();
        const double sum = e.sum();
        total += -(logits(r, t) - mx - std::log(sum));
        if (grad != nullptr) {
            grad->row(r) = e / sum;
            (*grad)(r, t) -= 1.0;
        }
    }
    return total;
}

}  // namespace neurocap::nn
