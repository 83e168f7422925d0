#include "oracles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>

#include <Eigen/SVD>
#include <unistd.h>

namespace neurocap::support {

std::pair<Vector, Eigen::MatrixXd> jacobi_eigen(const Eigen::MatrixXd& symmetric) {
    const Eigen::Index n = symmetric.rows();
    Eigen::MatrixXd a = symmetric;
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        }
        if (off < 1e-30 * std::max(1.0, a.squaredNorm())) break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) > a(j, j); });
    Vector values(n);
    Eigen::MatrixXd vectors(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
        vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    return {values, vectors};
}

double max_subspace_angle(const Tensor2& a, const Tensor2& b) {
    // Orthonormal bases of both row spaces, then the smallest singular value
    // of their product is the cosine of the largest principal angle.
    const Eigen::MatrixXd qa = Eigen::HouseholderQR<Eigen::MatrixXd>(a.transpose()).householderQ() *
                               Eigen::MatrixXd::Identity(a.cols(), a.rows());
    const Eigen::MatrixXd qb = Eigen::HouseholderQR<Eigen::MatrixXd>(b.transpose()).householderQ() *
                               Eigen::MatrixXd::Identity(b.cols(), b.rows());
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(qa.transpose() * qb);
    const double smallest = std::clamp(svd.singularValues().minCoeff(), -1.0, 1.0);
    // acos loses precision near 1; use asin of the orthogonal residual instead.
    const Eigen::MatrixXd residual = qb - qa * (qa.transpose() * qb);
    const double sine = Eigen::JacobiSVD<Eigen::MatrixXd>(residual).singularValues().maxCoeff();
    return smallest > 0.7 ? std::asin(std::min(1.0, sine)) : std::acos(smallest);
}

std::string rescan_nearest(const embedding::EmbeddingStore& store, const Vector& query) {
    std::string best_id;
    double best = -2.0;
    for (const auto& rec : store.records()) {
        double dot = 0.0, na = 0.0, nb = 0.0;
        for (Eigen::Index i = 0; i < query.size(); ++i) {
            dot += rec.vector(i) * query(i);
            na += rec.vector(i) * rec.vector(i);
            nb += query(i) * query(i);
        }
        const double sim = std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
        if (sim > best || (sim == best && rec.id < best_id)) {
            best = sim;
            best_id = rec.id;
        }
    }
    return best_id;
}

TempDir::TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("neurocap-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

}  // namespace neurocap::support
