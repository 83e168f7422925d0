#include "neurocap/metrics/report.hpp"

#include <cstdio>
#include <fstream>

#include "neurocap/data/atomic_file.hpp"
#include "neurocap/error.hpp"
#include "neurocap/metrics/meteor.hpp"
#include "neurocap/metrics/scores.hpp"
#include "neurocap/text/tokenize.hpp"

namespace neurocap::metrics {

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

EvalReport evaluate(const decoder::DecoderModel& model, std::span<const EvalItem> items,
                    const embedding::Embedder& sentence_embedder, std::string fingerprint) {
    if (items.empty()) throw DataError("evaluate: no evaluation items");
    EvalReport report;
    report.fingerprint = std::move(fingerprint);
    std::vector<double> log_probs;
    for (const auto& item : items) {
        const auto gen = decoder::generate_caption(model, item.condition);
        EvalRecord rec{item.stimulus_id, item.reference, gen.text, 0.0, 0.0, gen.truncated};
        rec.meteor = meteor(item.reference, gen.text);
        if (!text::tokenize(gen.text).empty()) {
            rec.sentence = sentence_similarity(sentence_embedder, item.reference, gen.text);
        }
        report.mean_meteor += rec.meteor;
        report.mean_sentence += rec.sentence;
        report.records.push_back(std::move(rec));
        const auto lps = decoder::token_log_likelihoods(model, item.condition, item.tokens);
        log_probs.insert(log_probs.end(), lps.begin(), lps.end());
    }
    const double n = static_cast<double>(items.size());
    report.mean_meteor /= n;
    report.mean_sentence /= n;
    report.perplexity = perplexity_from_log_probs(log_probs);
    report.perplexity_tokens = log_probs.size();
    return report;
}

std::string format_eval_report(const EvalReport& report) {
    std::string out = "stimulus_id\treference\tprediction\tmeteor\tsentence\ttruncated\n";
    for (const auto& r : report.records) {
        out += r.stimulus_id + '\t' + r.reference + '\t' + r.prediction + '\t' + fmt(r.meteor) +
               '\t' + fmt(r.sentence) + '\t' + (r.truncated ? "1" : "0") + '\n';
    }
    out += "# summary\n";
    out += "# pairs=" + std::to_string(report.records.size()) + '\n';
    out += "# mean_meteor=" + fmt(report.mean_meteor) + '\n';
    out += "# mean_sentence=" + fmt(report.mean_sentence) + '\n';
    out += "# perplexity=" + fmt(report.perplexity) + '\n';
    out += "# perplexity_tokens=" + std::to_string(report.perplexity_tokens) + '\n';
    out += "# config_fingerprint=" + report.fingerprint + '\n';
    return out;
}

void write_eval_report(const EvalReport& report, const std::filesystem::path& path) {
    data::write_text_atomic(path, format_eval_report(report));
}

}  // namespace neurocap::metrics
