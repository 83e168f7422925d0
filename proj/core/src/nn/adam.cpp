#include "neurocap/nn/adam.hpp"

#include <cmath>

#include "neurocap/error.hpp"

namespace neurocap::nn {

AdamState::AdamState(const ParamList& params, AdamOptions options) : options_(options) {
    first_.reserve(params.size());
    second_.reserve(params.size());
    for (const auto& p : params) {
        first_.emplace_back(p.size(), 0.0);
        second_.emplace_back(p.size(), 0.0);
    }
}

void adam_step(const ParamList& params, const ParamList& grads, AdamState& state) {
    if (params.size() != grads.size() || params.size() != state.first_.size()) {
        throw DimensionError("adam_step: parameter block count mismatch");
    }
    for (std::size_t b = 0; b < params.size(); ++b) {
        if (params[b].size() != grads[b].size() || params[b].size() != state.first_[b].size()) {
            throw DimensionError("adam_step: parameter block " + std::to_string(b) +
                                 " shape mismatch");
        }
    }
    const AdamOptions& o = state.options_;
    ++state.step_;
    const double t = static_cast<double>(state.step_);
    const double c1 = 1.0 - std::pow(o.beta1, t);
    const double c2 = 1.0 - std::pow(o.beta2, t);
    for (std::size_t b = 0; b < params.size(); ++b) {
        auto& m = state.first_[b];
        auto& v = state.second_[b];
        const auto p = params[b];
        const auto g = grads[b];
        for (std::size_t k = 0; k < p.size(); ++k) {
            m[k] = o.beta1 * m[k] + (1.0 - o.beta1) * g[k];
            v[k] = o.beta2 * v[k] + (1.0 - o.beta2) * g[k] * g[k];
            const double m_hat = m[k] / c1;
            const double v_hat = v[k] / c2;
            p[k] -= o.lr * m_hat / (std::sqrt(v_hat) + o.epsilon);
        }
    }
}

}  // namespace neurocap::nn
