#include "neurocap/nn/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "neurocap/error.hpp"

namespace neurocap::nn {

namespace {

double checked_loss(const std::function<double()>& loss) {
    const double v = loss();
    if (!std::isfinite(v)) throw NumericError("gradient_check: non-finite loss");
    return v;
}

}  // namespace

GradCheckReport gradient_check(const std::function<double()>& loss, const ParamList& params,
                               const ParamList& analytic, const GradCheckOptions& options) {
    if (params.size() != analytic.size()) {
        throw DimensionError("gradient_check: parameter/gradient block count mismatch");
    }
    checked_loss(loss);
    GradCheckReport report;
    for (std::size_t b = 0; b < params.size(); ++b) {
        if (params[b].size() != analytic[b].size()) {
            throw DimensionError("gradient_check: block " + std::to_string(b) + " size mismatch");
        }
        for (std::size_t k = 0; k < params[b].size(); ++k) {
            double& p = params[b][k];
            const double saved = p;
            p = saved + options.step;
            const double up = checked_loss(loss);
            p = saved - options.step;
            const double down = checked_loss(loss);
            p = saved;
            const double numeric = (up - down) / (2.0 * options.step);
            const double a = analytic[b][k];
            const double scale =
                std::max({std::abs(a), std::abs(numeric), options.scale_floor});
            const double err = std::abs(a - numeric) / scale;
            if (err > report.max_relative_error || report.checked == 0) {
                report.max_relative_error = err;
                report.worst_block = b;
                report.worst_index = k;
                report.worst_analytic = a;
                report.worst_numeric = numeric;
            }
            ++report.checked;
        }
    }
    report.passed = report.max_relative_error < options.tolerance;
    return report;
}

GradCheckReport gradient_check(const std::function<double()>& loss, std::span<double> params,
                               std::span<const double> analytic, const GradCheckOptions& options) {
    // The analytic block is only read; the const_cast lets it share ParamList.
    std::span<double> a(const_cast<double*>(analytic.data()), analytic.size());
    return gradient_check(loss, ParamList{params}, ParamList{a}, options);
}

}  // namespace neurocap::nn
