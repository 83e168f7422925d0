#include "neurocap/viz/tsne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "neurocap/error.hpp"
#include "neurocap/random.hpp"

namespace neurocap::viz {

namespace {

constexpr double kEntropyTolerance = 1e-5;
constexpr int kBandwidthSearchSteps = 50;

Tensor2 squared_distances(const Tensor2& x) {
    const Vector sq = x.rowwise().squaredNorm();
    Tensor2 d = (-2.0 * (x * x.transpose())).eval();
    d.colwise() += sq;
    d.rowwise() += sq.transpose();
    d = d.cwiseMax(0.0);
    d.diagonal().setZero();
    return d;
}

// Student-t kernel numerators with a zero diagonal; returns their sum.
double student_kernel(const Tensor2& y, Tensor2& num) {
    num = squared_distances(y);
    num = (1.0 + num.array()).inverse().matrix();
    num.diagonal().setZero();
    return num.sum();
}

void check_perplexity(std::size_t n, double perplexity) {
    if (n < 4) throw ArgumentError("tsne: need at least 4 points");
    const double limit = (static_cast<double>(n) - 1.0) / 3.0;
    if (!(perplexity > 1.0) || !(perplexity < limit)) {
        throw ArgumentError("tsne: perplexity " + std::to_string(perplexity) + " infeasible for N=" +
                            std::to_string(n) + " (need 1 < perplexity < " + std::to_string(limit) + ")");
    }
}

}  // namespace

double default_perplexity(std::size_t n) {
    return std::min(30.0, (static_cast<double>(n) - 1.0) / 3.0 - 1.0);
}

Tensor2 tsne_affinities(const Tensor2& vectors, double perplexity) {
    const auto n = vectors.rows();
    check_perplexity(static_cast<std::size_t>(n), perplexity);
    require_finite(as_span(vectors), "tsne input");
    const Tensor2 dist = squared_distances(vectors);
    const double target = std::log(perplexity);

    Tensor2 p = Tensor2::Zero(n, n);
    Vector row(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        // Shifting by the nearest distance leaves the conditional distribution
        // unchanged and keeps exp() from underflowing for distant points.
        double nearest = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j != i) nearest = std::min(nearest, dist(i, j));
        }
        double beta = 1.0;
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (int step = 0; step < kBandwidthSearchSteps; ++step) {
            double sum = 0.0;
            double weighted = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                const double shifted = dist(i, j) - nearest;
                row(j) = j == i ? 0.0 : std::exp(-beta * shifted);
                sum += row(j);
                weighted += row(j) * shifted;
            }
            const double entropy = std::log(sum) + beta * weighted / sum;
            row /= sum;
            const double diff = entropy - target;
            if (std::abs(diff) < kEntropyTolerance) break;
            if (diff > 0) {
                lo = beta;
                beta = std::isinf(hi) ? beta * 2.0 : (beta + hi) / 2.0;
            } else {
                hi = beta;
                beta = std::isinf(lo) ? beta / 2.0 : (beta + lo) / 2.0;
            }
        }
        p.row(i) = row.transpose();
    }
    p = (p + p.transpose()).eval();
    p /= p.sum();
    require_finite(as_span(p), "tsne affinities");
    return p;
}

double tsne_kl(const Tensor2& p, const Tensor2& points) {
    Tensor2 num;
    const double z = student_kernel(points, num);
    double kl = 0.0;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        for (Eigen::Index j = 0; j < p.cols(); ++j) {
            if (i == j || p(i, j) <= 0.0) continue;
            const double q = std::max(num(i, j) / z, 1e-300);
            kl += p(i, j) * std::log(p(i, j) / q);
        }
    }
    return kl;
}

ProjectionResult tsne_project(const Tensor2& vectors, const TsneOptions& options,
                              std::vector<std::string> labels) {
    const auto n = static_cast<std::size_t>(vectors.rows());
    if (n < 4) throw ArgumentError("tsne: need at least 4 points");
    if (!labels.empty() && labels.size() != n) throw DimensionError("tsne: label count differs from point count");
    const double perplexity = options.perplexity > 0 ? options.perplexity : default_perplexity(n);
    const Tensor2 p = tsne_affinities(vectors, perplexity);
    const auto rows = static_cast<Eigen::Index>(n);

    Rng rng(options.seed);
    Tensor2 y(rows, 2);
    for (double& v : as_span(y)) v = 1e-4 * rng.normal();

    ProjectionResult out;
    out.method = Method::tsne;
    out.seed = options.seed;
    out.labels = labels.empty() ? std::vector<std::string>(n) : std::move(labels);
    out.initial_kl = tsne_kl(p, y);

    Tensor2 velocity = Tensor2::Zero(rows, 2);
    Tensor2 gains = Tensor2::Ones(rows, 2);
    Tensor2 num;
    Tensor2 grad(rows, 2);
    for (std::size_t iter = 0; iter < options.iterations; ++iter) {
        const double exaggeration = iter < options.exaggeration_iterations ? options.exaggeration : 1.0;
        const double momentum = iter < options.momentum_switch ? options.initial_momentum : options.final_momentum;
        const double z = student_kernel(y, num);
        // dC/dy_i = 4 sum_j (p_ij - q_ij) num_ij (y_i - y_j)
        const Tensor2 w = ((exaggeration * p).array() - num.array() / z).matrix().cwiseProduct(num);
        const Vector wsum = w.rowwise().sum();
        grad = 4.0 * (wsum.asDiagonal() * y - w * y);
        for (Eigen::Index k = 0; k < grad.size(); ++k) {
            double& g = gains.data()[k];
            const bool same_sign = (grad.data()[k] > 0) == (velocity.data()[k] > 0);
            g = same_sign ? g * 0.8 : g + 0.2;
            g = std::max(g, options.min_gain);
        }
        velocity = momentum * velocity - options.learning_rate * gains.cwiseProduct(grad);
        y += velocity;
        y.rowwise() -= y.colwise().mean();
        if (!all_finite(as_span(y))) {
            throw NumericError("tsne: non-finite coordinates at iteration " + std::to_string(iter));
        }
    }
    out.final_kl = tsne_kl(p, y);
    out.points = std::move(y);
    return out;
}

}  // namespace neurocap::viz
