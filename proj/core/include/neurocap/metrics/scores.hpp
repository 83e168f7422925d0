#pragma once

#include <span>
#include <string_view>

#include "neurocap/decoder/decoder.hpp"
#include "neurocap/embedding/embedder.hpp"

namespace neurocap::metrics {

/// Cosine similarity of the two captions' embeddings.
double sentence_similarity(const embedding::Embedder& embedder, std::string_view reference,
                           std::string_view hypothesis);

/// exp(-mean(log_probs)). Throws DataError when empty.
double perplexity_from_log_probs(std::span<const double> log_probs);

/// Per-token perplexity of `model` over every non-<start> target token.
double perplexity(const decoder::DecoderModel& model, std::span<const decoder::DecoderPair> pairs);

}  // namespace neurocap::metrics
