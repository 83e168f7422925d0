#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace neurocap {

/// Dense row-major matrix of doubles.
using Tensor2 = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

inline std::span<double> as_span(Tensor2& t) { return {t.data(), static_cast<std::size_t>(t.size())}; }
inline std::span<double> as_span(Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
inline std::span<const double> as_span(const Tensor2& t) {
    return {t.data(), static_cast<std::size_t>(t.size())};
}
inline std::span<const double> as_span(const Vector& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

bool all_finite(std::span<const double> values);

// Throws NumericError naming `what` if any entry is NaN or infinite.
void require_finite(std::span<const double> values, std::string_view what);

// Throws DimensionError unless got == expected.
void require_dim(std::size_t got, std::size_t expected, std::string_view what);

}  // namespace neurocap
