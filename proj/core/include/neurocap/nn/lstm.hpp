#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "neurocap/random.hpp"
#include "neurocap/tensor.hpp"

namespace neurocap::nn {

/// Single LSTM cell. Each gate weight is hidden x (input + hidden) and acts on
/// the concatenation [x, h].
struct LstmCell {
    std::size_t input_dim = 0;
    std::size_t hidden_dim = 0;
    Tensor2 w_input, w_forget, w_output, w_cell;
    Vector b_input, b_forget, b_output, b_cell;

    static LstmCell zeros(std::size_t input_dim, std::size_t hidden_dim);
    // Weights uniform in +-1/sqrt(input + hidden); forget bias 1, other biases 0.
    static LstmCell random(std::size_t input_dim, std::size_t hidden_dim, Rng& rng);
};

struct LstmStepCache {
    Tensor2 z;  // [x, h_prev]
    Tensor2 i, f, o, g;
    Tensor2 c_prev;
    Tensor2 tanh_c;
};

struct LstmGrad {
    Tensor2 w_input, w_forget, w_output, w_cell;
    Vector b_input, b_forget, b_output, b_cell;

    LstmGrad() = default;
    explicit LstmGrad(const LstmCell& cell);
    void zero();
};

/// One step on a single example: returns (h', c').
std::pair<Vector, Vector> lstm_step(const LstmCell& cell, const Vector& x, const Vector& h,
                                    const Vector& c);

/// Batched step; rows are batch items.
void lstm_step(const LstmCell& cell, const Tensor2& x, const Tensor2& h, const Tensor2& c,
               Tensor2& h_out, Tensor2& c_out, LstmStepCache* cache = nullptr);

/// Backward through one step. `dh` and `dc` are gradients w.r.t. the step's
/// outputs; writes gradients w.r.t. its inputs and accumulates into `grad`.
void lstm_step_backward(const LstmCell& cell, const LstmStepCache& cache, const Tensor2& dh,
                        const Tensor2& dc, LstmGrad& grad, Tensor2& dx, Tensor2& dh_prev,
                        Tensor2& dc_prev);

std::vector<std::span<double>> parameters(LstmCell& cell);
std::vector<std::span<double>> parameters(LstmGrad& grad);

}  // namespace neurocap::nn
