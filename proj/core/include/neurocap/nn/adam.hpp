#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace neurocap::nn {

using ParamList = std::vector<std::span<double>>;

struct AdamOptions {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// Moment accumulators for a fixed list of parameter blocks.
class AdamState {
public:
    AdamState() = default;
    AdamState(const ParamList& params, AdamOptions options = {});

    const AdamOptions& options() const { return options_; }
    std::uint64_t step() const { return step_; }

private:
    friend void adam_step(const ParamList& params, const ParamList& grads, AdamState& state);

    AdamOptions options_;
    std::uint64_t step_ = 0;
    std::vector<std::vector<double>> first_;
    std::vector<std::vector<double>> second_;
};

/// Bias-corrected Adam update in place. Throws DimensionError on shape mismatch.
void adam_step(const ParamList& params, const ParamList& grads, AdamState& state);

}  // namespace neurocap::nn
