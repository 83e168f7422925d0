#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "neurocap/decoder/decoder.hpp"
#include "neurocap/embedding/embedder.hpp"
#include "neurocap/tensor.hpp"

namespace neurocap::metrics {

struct EvalItem {
    std::string stimulus_id;
    std::string reference;       // raw reference caption
    std::vector<int> tokens;     // encoded reference
    Vector condition;            // decoder input for this stimulus
};

struct EvalRecord {
    std::string stimulus_id;
    std::string reference;
    std::string prediction;
    double meteor = 0.0;
    double sentence = 0.0;
    bool truncated = false;
};

struct EvalReport {
    std::vector<EvalRecord> records;
    double mean_meteor = 0.0;
    double mean_sentence = 0.0;
    double perplexity = 0.0;
    std::size_t perplexity_tokens = 0;
    std::string fingerprint;
};

/// Generates one caption per item and scores it. A prediction with no tokens
/// gets sentence similarity 0 (the embedder is undefined on empty text).
EvalReport evaluate(const decoder::DecoderModel& model, std::span<const EvalItem> items,
                    const embedding::Embedder& sentence_embedder, std::string fingerprint);

/// Per-pair rows followed by a `#`-prefixed summary block.
void write_eval_report(const EvalReport& report, const std::filesystem::path& path);
std::string format_eval_report(const EvalReport& report);

}  // namespace neurocap::metrics
