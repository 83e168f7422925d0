#include "neurocap/metrics/scores.hpp"

#include <cmath>

#include "neurocap/embedding/similarity.hpp"
#include "neurocap/error.hpp"

namespace neurocap::metrics {

double sentence_similarity(const embedding::Embedder& embedder, std::string_view reference,
                           std::string_view hypothesis) {
    return embedding::cosine_similarity(embedder.embed(reference), embedder.embed(hypothesis));
}

double perplexity_from_log_probs(std::span<const double> log_probs) {
    if (log_probs.empty()) throw DataError("perplexity: no tokens");
    double sum = 0.0;
    for (double lp : log_probs) sum += lp;
    return std::exp(-sum / static_cast<double>(log_probs.size()));
}

double perplexity(const decoder::DecoderModel& model, std::span<const decoder::DecoderPair> pairs) {
    if (pairs.empty()) throw DataError("perplexity: empty evaluation set");
    std::vector<double> all;
    for (const auto& p : pairs) {
        const auto lps = decoder::token_log_likelihoods(model, p.condition, p.tokens);
        all.insert(all.end(), lps.begin(), lps.end());
    }
    return perplexity_from_log_probs(all);
}

}  // namespace neurocap::metrics
