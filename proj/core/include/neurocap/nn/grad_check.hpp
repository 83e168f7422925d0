#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "neurocap/nn/adam.hpp"

namespace neurocap::nn {

struct GradCheckOptions {
    double step = 1e-6;
    double tolerance = 1e-5;
    // Denominator floor: error_i = |a_i - n_i| / max(|a_i|, |n_i|, scale_floor).
    // Components far below the floor are compared absolutely, which keeps
    // finite-difference roundoff on near-zero gradients from dominating.
    double scale_floor = 1e-3;
};

struct GradCheckReport {
    double max_relative_error = 0.0;
    std::size_t worst_block = 0;
    std::size_t worst_index = 0;
    double worst_analytic = 0.0;
    double worst_numeric = 0.0;
    std::size_t checked = 0;
    bool passed = false;
};

/// Compares analytic gradients against central finite differences of `loss`,
/// perturbing each parameter in `params` in place (values are restored).
/// Throws NumericError if the loss is non-finite at any probe.
GradCheckReport gradient_check(const std::function<double()>& loss, const ParamList& params,
                               const ParamList& analytic, const GradCheckOptions& options = {});

GradCheckReport gradient_check(const std::function<double()>& loss, std::span<double> params,
                               std::span<const double> analytic,
                               const GradCheckOptions& options = {});

}  // namespace neurocap::nn
