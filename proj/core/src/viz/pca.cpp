#include "neurocap/viz/pca.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "neurocap/error.hpp"

namespace neurocap::viz {

PcaResult pca_project(const Tensor2& vectors, std::size_t k, std::vector<std::string> labels) {
    const auto n = static_cast<std::size_t>(vectors.rows());
    const auto d = static_cast<std::size_t>(vectors.cols());
    if (n < 2) throw ArgumentError("pca: need at least 2 points");
    if (k < 1 || k > std::min(n - 1, d)) {
        throw ArgumentError("pca: k=" + std::to_string(k) + " outside [1, min(N-1, D)] = [1, " +
                            std::to_string(std::min(n - 1, d)) + "]");
    }
    if (!labels.empty() && labels.size() != n) throw DimensionError("pca: label count differs from point count");
    require_finite(as_span(vectors), "pca input");

    PcaResult out;
    out.mean = vectors.colwise().mean().transpose();
    Tensor2 centered = vectors.rowwise() - out.mean.transpose();
    const double scale = std::max(1.0, vectors.cwiseAbs().maxCoeff());
    if (centered.cwiseAbs().maxCoeff() <= 1e-12 * scale) {
        throw ArgumentError("pca: degenerate input, all points identical");
    }
    const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw NumericError("pca: eigendecomposition failed");

    // Eigen returns ascending eigenvalues; reverse to descending.
    out.eigenvalues = solver.eigenvalues().reverse();
    const double total = cov.trace();
    out.components.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(d));
    for (std::size_t c = 0; c < k; ++c) {
        Vector v = solver.eigenvectors().col(static_cast<Eigen::Index>(d - 1 - c));
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0) v = -v;
        out.components.row(static_cast<Eigen::Index>(c)) = v.transpose();
    }

    auto& proj = out.projection;
    proj.method = Method::pca;
    proj.points = centered * out.components.transpose();
    proj.labels = labels.empty() ? std::vector<std::string>(n) : std::move(labels);
    for (std::size_t c = 0; c < k; ++c) {
        proj.explained_variance_ratio.push_back(std::max(0.0, out.eigenvalues(static_cast<Eigen::Index>(c))) /
                                                total);
    }
    require_finite(as_span(proj.points), "pca projection");
    return out;
}

Tensor2 pca_reconstruct(const PcaResult& pca) {
    Tensor2 out = pca.projection.points * pca.components;
    out.rowwise() += pca.mean.transpose();
    return out;
}

}  // namespace neurocap::viz
