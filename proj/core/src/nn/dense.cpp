#include "neurocap/nn/dense.hpp"

#include <cmath>
#include <string>

#include "neurocap/error.hpp"

namespace neurocap::nn {

std::string_view to_string(Activation a) {
    switch (a) {
        case Activation::identity: return "identity";
        case Activation::relu: return "relu";
        case Activation::tanh: return "tanh";
    }
    return "identity";
}

Activation activation_from_string(std::string_view name) {
    if (name == "identity") return Activation::identity;
    if (name == "relu") return Activation::relu;
    if (name == "tanh") return Activation::tanh;
    throw DataError("unknown activation: " + std::string(name));
}

DenseLayer DenseLayer::zeros(std::size_t in, std::size_t out, Activation act) {
    DenseLayer layer;
    layer.weight = Tensor2::Zero(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
    layer.bias = Vector::Zero(static_cast<Eigen::Index>(out));
    layer.activation = act;
    return layer;
}

DenseLayer DenseLayer::random(std::size_t in, std::size_t out, Activation act, Rng& rng) {
    DenseLayer layer = zeros(in, out, act);
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    for (double& w : as_span(layer.weight)) w = rng.uniform(-bound, bound);
    return layer;
}

DenseGrad::DenseGrad(const DenseLayer& layer)
    : weight(Tensor2::Zero(layer.weight.rows(), layer.weight.cols())),
      bias(Vector::Zero(layer.bias.size())) {}

void DenseGrad::zero() {
    weight.setZero();
    bias.setZero();
}

void apply_activation(Activation act, Tensor2& values) {
    switch (act) {
        case Activation::identity: break;
        case Activation::relu: values = values.cwiseMax(0.0); break;
        case Activation::tanh: values = values.array().tanh().matrix(); break;
    }
}

Vector dense_forward(const DenseLayer& layer, const Vector& x, DenseCache* cache) {
    require_dim(static_cast<std::size_t>(x.size()), layer.in_dim(), "dense_forward input");
    Tensor2 batch = x.transpose();
    Tensor2 out = dense_forward(layer, batch, cache);
    return out.row(0).transpose();
}

Tensor2 dense_forward(const DenseLayer& layer, const Tensor2& batch, DenseCache* cache) {
    require_dim(static_cast<std::size_t>(batch.cols()), layer.in_dim(), "dense_forward input");
    if (!batch.allFinite()) throw NumericError("dense_forward: non-finite input");
    Tensor2 pre = batch * layer.weight.transpose();
    pre.rowwise() += layer.bias.transpose();
    Tensor2 out = pre;
    apply_activation(layer.activation, out);
    if (cache != nullptr) {
        cache->input = batch;
        cache->pre = std::move(pre);
    }
    return out;
}

Tensor2 dense_backward(const DenseLayer& layer, const DenseCache& cache, const Tensor2& grad_out,
                       DenseGrad& grad) {
    require_dim(static_cast<std::size_t>(grad_out.cols()), layer.out_dim(), "dense_backward grad");
    Tensor2 grad_pre = grad_out;
    switch (layer.activation) {
        case Activation::identity: break;
        case Activation::relu:
            grad_pre = (cache.pre.array() > 0.0).select(grad_out, 0.0);
            break;
        case Activation::tanh: {
            const auto t = cache.pre.array().tanh();
            grad_pre = (grad_out.array() * (1.0 - t * t)).matrix();
            break;
        }
    }
    grad.weight.noalias() += grad_pre.transpose() * cache.input;
    grad.bias += grad_pre.colwise().sum().transpose();
    return grad_pre * layer.weight;
}

std::vector<std::span<double>> parameters(DenseLayer& layer) {
    return {as_span(layer.weight), as_span(layer.bias)};
}

std::vector<std::span<double>> parameters(DenseGrad& grad) {
    return {as_span(grad.weight), as_span(grad.bias)};
}

}  // namespace neurocap::nn
