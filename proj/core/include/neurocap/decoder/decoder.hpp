#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "neurocap/nn/adam.hpp"
#include "neurocap/nn/dense.hpp"
#include "neurocap/nn/lstm.hpp"
#include "neurocap/tensor.hpp"
#include "neurocap/text/vocabulary.hpp"

namespace neurocap::decoder {

struct DecoderConfig {
    std::size_t embed_dim = 64;
    std::size_t hidden_dim = 128;
    std::size_t max_len = 30;
    std::size_t epochs = 200;
    std::size_t batch_size = 32;
    double lr = 1e-3;
    std::uint64_t seed = 0;
    // Keep the conditioning projection at its random initialization.
    bool freeze_init = false;
    // Early stop like train_rse; patience 0 trains for all epochs.
    std::size_t patience = 0;
    double min_improvement = 0.0;
};

/// One-to-many LSTM captioner. The conditioning vector enters only through
/// h0 = tanh(W_init e + b_init) with c0 = 0; each later step consumes the
/// previous token's row of the embedding table.
struct DecoderModel {
    nn::DenseLayer init;
    Tensor2 token_table;  // V x E
    nn::LstmCell cell;
    nn::DenseLayer output;  // H -> V
    text::Vocabulary vocab;
    std::size_t max_len = 30;
    DecoderConfig config;

    std::size_t condition_dim() const { return init.in_dim(); }
    std::size_t vocab_size() const { return static_cast<std::size_t>(token_table.rows()); }

    static DecoderModel create(std::size_t condition_dim, const text::Vocabulary& vocab,
                               const DecoderConfig& config);
    /// Throws DimensionError unless every block chains and matches the vocabulary.
    void validate() const;
};

struct DecoderGrad {
    nn::DenseGrad init;
    Tensor2 token_table;
    nn::LstmGrad cell;
    nn::DenseGrad output;

    DecoderGrad() = default;
    explicit DecoderGrad(const DecoderModel& model);
    void zero();
};

nn::ParamList parameters(DecoderModel& model, bool include_init = true);
nn::ParamList parameters(DecoderGrad& grad, bool include_init = true);

struct BatchLoss {
    double sum = 0.0;         // summed cross-entropy over counted tokens
    std::size_t tokens = 0;   // number of non-pad targets
};

/// Teacher-forced pass over a batch. Row r of `conditions` conditions
/// sequence r. Padding after <end> is masked. When `grad` is given, adds
/// d(sum)/dparams; when `condition_grad` is given, writes d(sum)/dconditions.
BatchLoss batch_loss(const DecoderModel& model, const Tensor2& conditions,
                     std::span<const std::vector<int>* const> sequences, DecoderGrad* grad,
                     Tensor2* condition_grad);

struct DecoderPair {
    Vector condition;
    std::vector<int> tokens;
};

struct DecoderTrainResult {
    DecoderModel model;
    std::vector<double> loss_curve;  // mean cross-entropy per non-pad token, per epoch
};

DecoderTrainResult train_decoder(std::span<const DecoderPair> pairs, const text::Vocabulary& vocab,
                                 const DecoderConfig& config);

struct Generation {
    std::string text;
    std::vector<int> tokens;  // generated indices, excluding <start> and <end>
    bool truncated = false;   // hit max_len without emitting <end>
};

/// Greedy argmax decoding from <start>; at most max_len - 1 tokens.
Generation generate_caption(const DecoderModel& model, const Vector& condition);

/// log p(token_t | condition, prefix) for every position after <start>.
std::vector<double> token_log_likelihoods(const DecoderModel& model, const Vector& condition,
                                          std::span<const int> target);

/// Summed teacher-forced cross-entropy of one sequence via the training path.
double sequence_loss(const DecoderModel& model, const Vector& condition,
                     const std::vector<int>& target);

}  // namespace neurocap::decoder
