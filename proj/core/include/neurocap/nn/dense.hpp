#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "neurocap/random.hpp"
#include "neurocap/tensor.hpp"

namespace neurocap::nn {

enum class Activation { identity, relu, tanh };

std::string_view to_string(Activation a);
Activation activation_from_string(std::string_view name);

/// Fully connected layer y = act(W x + b) with W stored out x in.
struct DenseLayer {
    Tensor2 weight;
    Vector bias;
    Activation activation = Activation::identity;

    std::size_t in_dim() const { return static_cast<std::size_t>(weight.cols()); }
    std::size_t out_dim() const { return static_cast<std::size_t>(weight.rows()); }

    static DenseLayer zeros(std::size_t in, std::size_t out, Activation act);
    // Weights uniform in +-1/sqrt(in), bias zero.
    static DenseLayer random(std::size_t in, std::size_t out, Activation act, Rng& rng);
};

/// Values saved by the forward pass for the backward pass. Rows are batch items.
struct DenseCache {
    Tensor2 input;
    Tensor2 pre;
};

struct DenseGrad {
    Tensor2 weight;
    Vector bias;

    DenseGrad() = default;
    explicit DenseGrad(const DenseLayer& layer);
    void zero();
};

Vector dense_forward(const DenseLayer& layer, const Vector& x, DenseCache* cache = nullptr);

// Batched forward: `batch` is N x in, result is N x out.
Tensor2 dense_forward(const DenseLayer& layer, const Tensor2& batch, DenseCache* cache = nullptr);

// Accumulates parameter gradients into `grad` and returns dL/dinput (N x in).
Tensor2 dense_backward(const DenseLayer& layer, const DenseCache& cache, const Tensor2& grad_out,
                       DenseGrad& grad);

void apply_activation(Activation act, Tensor2& values);

std::vector<std::span<double>> parameters(DenseLayer& layer);
std::vector<std::span<double>> parameters(DenseGrad& grad);

}  // namespace neurocap::nn
