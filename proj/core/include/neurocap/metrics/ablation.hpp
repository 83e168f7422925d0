#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "neurocap/data/dataset.hpp"
#include "neurocap/decoder/decoder.hpp"
#include "neurocap/embedding/embedder.hpp"
#include "neurocap/rse/encoder.hpp"

namespace neurocap::metrics {

/// none: decoder conditioned on z-scored responses through a frozen random
/// projection to h0. encoder_only: encoder and decoder trained jointly on the
/// caption loss alone. full: encoder fitted to embeddings with MSE, decoder
/// trained on true embeddings and evaluated on predicted ones.
enum class Variant { none, encoder_only, full };

std::string_view to_string(Variant v);
Variant variant_from_string(std::string_view name);

struct AblationExample {
    std::string stimulus_id;
    Vector response;
    Vector embedding;
    std::string caption;
};

/// Train/test pairs plus the embedder used for the sentence metric.
struct AblationData {
    std::vector<AblationExample> train;
    std::vector<AblationExample> test;
    std::shared_ptr<const embedding::Embedder> sentence_embedder;
};

/// One example per caption row; throws DataError when either split is empty.
AblationData ablation_data(const data::Dataset& dataset);

/// Desk-scale training schedule: a short, high-rate encoder run (longer runs
/// overfit the response noise) and a smaller decoder so nine trainings fit in
/// well under a minute on one core.
inline rse::RseConfig ablation_rse_config() {
    rse::RseConfig c;
    c.epochs = 10;
    c.lr = 1e-2;
    c.patience = 0;
    return c;
}

inline decoder::DecoderConfig ablation_decoder_config() {
    decoder::DecoderConfig c;
    c.embed_dim = 32;
    c.hidden_dim = 64;
    c.epochs = 20;
    c.lr = 1e-2;
    return c;
}

struct AblationConfig {
    std::vector<Variant> variants = {Variant::none, Variant::encoder_only, Variant::full};
    std::vector<std::uint64_t> seeds = {1, 2, 3};
    rse::RseConfig rse = ablation_rse_config();
    decoder::DecoderConfig decoder = ablation_decoder_config();
    std::size_t min_token_freq = 2;
};

struct VariantScores {
    double sentence = 0.0;
    double meteor = 0.0;
    double perplexity = 0.0;
};

struct AblationRow {
    Variant variant = Variant::none;
    std::vector<VariantScores> per_seed;  // aligned with AblationConfig::seeds
    VariantScores median;
};

struct AblationTable {
    std::vector<std::uint64_t> seeds;
    std::vector<AblationRow> rows;  // in AblationConfig::variants order
};

/// Requires at least three seeds. Deterministic given the data and config.
AblationTable run_ablation(const AblationData& data, const AblationConfig& config);

/// Scores for a single variant and seed.
VariantScores run_variant(const AblationData& data, const AblationConfig& config, Variant variant,
                          std::uint64_t seed);

/// Columns: variant, encoder_decoder, embedding_space, sentence, meteor,
/// perplexity; one row per variant with median scores.
std::string format_ablation_table(const AblationTable& table);
void write_ablation_table(const AblationTable& table, const std::filesystem::path& path);

}  // namespace neurocap::metrics
