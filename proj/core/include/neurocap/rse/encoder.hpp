#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "neurocap/nn/adam.hpp"
#include "neurocap/nn/dense.hpp"
#include "neurocap/tensor.hpp"

namespace neurocap::rse {

/// One preprocessed activity vector for one stimulus trial.
struct ResponseVector {
    std::string stimulus_id;
    std::string subject_id;
    Vector values;
};

/// Per-dimension z-scoring fitted on training inputs only.
struct Normalizer {
    Vector mean;
    Vector scale;

    static Normalizer identity(std::size_t dim);
    /// Population mean and standard deviation of the rows of `samples`;
    /// dimensions with zero spread get scale 1.
    static Normalizer fit(const Tensor2& samples);

    std::size_t dim() const { return static_cast<std::size_t>(mean.size()); }
    Vector apply(const Vector& x) const;
    Tensor2 apply(const Tensor2& rows) const;
};

struct RseConfig {
    std::vector<std::size_t> hidden = {256};
    std::size_t epochs = 500;
    std::size_t batch_size = 32;
    double lr = 1e-3;
    std::uint64_t seed = 0;
    // Stop once the best epoch loss has not improved by min_improvement for
    // `patience` consecutive epochs. patience 0 disables early stopping.
    std::size_t patience = 20;
    double min_improvement = 1e-9;
    bool normalize_inputs = true;
};

/// Feed-forward map from response space (dim F) into the embedding space
/// (dim D): relu hidden layers and an identity output layer.
struct RseModel {
    std::vector<nn::DenseLayer> layers;
    Normalizer normalizer;
    RseConfig config;

    std::size_t input_dim() const { return layers.front().in_dim(); }
    std::size_t output_dim() const { return layers.back().out_dim(); }

    static RseModel create(std::size_t input_dim, std::size_t output_dim, const RseConfig& config);
    static RseModel zeros(std::size_t input_dim, std::size_t output_dim,
                          std::span<const std::size_t> hidden = {});

    /// Throws DimensionError unless the layers chain F -> ... -> D.
    void validate() const;
};

struct RsePair {
    Vector response;
    Vector embedding;
};

struct RseTrainResult {
    RseModel model;
    std::vector<double> loss_curve;  // mean training MSE per epoch
};

/// Mini-batch Adam on MSE. Deterministic for a given config.seed. Throws
/// DataError on empty or inconsistent data, NumericError on a non-finite loss.
RseTrainResult train_rse(std::span<const RsePair> pairs, const RseConfig& config);

Vector predict_embedding(const RseModel& model, const Vector& response);
/// Rows of `responses` are raw (un-normalized) inputs.
Tensor2 predict_embeddings(const RseModel& model, const Tensor2& responses);

struct RseCache {
    std::vector<nn::DenseCache> layers;
};

/// Forward from already-normalized inputs, recording caches for backward.
Tensor2 rse_forward(const RseModel& model, const Tensor2& normalized, RseCache* cache);
/// Accumulates layer gradients; returns dL/d(normalized input).
Tensor2 rse_backward(const RseModel& model, const RseCache& cache, const Tensor2& grad_out,
                     std::vector<nn::DenseGrad>& grads);

nn::ParamList parameters(RseModel& model);
nn::ParamList parameters(std::vector<nn::DenseGrad>& grads);

}  // namespace neurocap::rse
