#pragma once

#include <filesystem>
#include <string>
#include <utility>

#include "neurocap/embedding/store.hpp"
#include "neurocap/tensor.hpp"

namespace neurocap::support {

/// Cyclic Jacobi rotations on a symmetric matrix. Returns eigenvalues in
/// descending order and the matching unit eigenvectors as columns.
std::pair<Vector, Eigen::MatrixXd> jacobi_eigen(const Eigen::MatrixXd& symmetric);

/// Largest principal angle (radians) between the row spaces of `a` and `b`.
double max_subspace_angle(const Tensor2& a, const Tensor2& b);

/// Linear scan over every record: highest cosine, ties to the smaller id.
std::string rescan_nearest(const embedding::EmbeddingStore& store, const Vector& query);

/// Fresh empty directory under the system temp path, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace neurocap::support
