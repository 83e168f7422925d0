#include "neurocap/metrics/ablation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "neurocap/data/atomic_file.hpp"
#include "neurocap/error.hpp"
#include "neurocap/metrics/report.hpp"
#include "neurocap/nn/adam.hpp"
#include "neurocap/random.hpp"
#include "neurocap/text/vocabulary.hpp"

namespace neurocap::metrics {

namespace {

constexpr std::uint64_t kEncoderSeedTag = 0x41424C2D525345ULL;
constexpr std::uint64_t kDecoderSeedTag = 0x41424C2D444543ULL;
constexpr std::uint64_t kJointShuffleTag = 0x41424C2D4A4F494EULL;

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Tensor2 stack(const std::vector<AblationExample>& xs, bool responses) {
    const auto& first = responses ? xs.front().response : xs.front().embedding;
    Tensor2 out(static_cast<Eigen::Index>(xs.size()), first.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = (responses ? xs[i].response : xs[i].embedding).transpose();
    }
    return out;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Encoder and decoder optimized together on the caption loss; the encoder
// output is never compared with an embedding.
std::pair<rse::RseModel, decoder::DecoderModel> train_joint(const Tensor2& normalized,
                                                            const std::vector<std::vector<int>>& tokens,
                                                            std::size_t embedding_dim,
                                                            const text::Vocabulary& vocab,
                                                            const rse::RseConfig& rse_config,
                                                            const decoder::DecoderConfig& dec_config) {
    rse::RseModel enc = rse::RseModel::create(static_cast<std::size_t>(normalized.cols()), embedding_dim, rse_config);
    decoder::DecoderModel dec = decoder::DecoderModel::create(embedding_dim, vocab, dec_config);
    std::vector<nn::DenseGrad> enc_grads;
    for (const auto& l : enc.layers) enc_grads.emplace_back(l);
    decoder::DecoderGrad dec_grad(dec);

    nn::ParamList params = rse::parameters(enc);
    nn::ParamList grads = rse::parameters(enc_grads);
    const auto dp = decoder::parameters(dec);
    const auto dg = decoder::parameters(dec_grad);
    params.insert(params.end(), dp.begin(), dp.end());
    grads.insert(grads.end(), dg.begin(), dg.end());
    nn::AdamState adam(params, {.lr = dec_config.lr});

    Rng rng(mix_seed(dec_config.seed ^ kJointShuffleTag));
    std::vector<std::size_t> order(tokens.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    rse::RseCache cache;
    for (std::size_t epoch = 0; epoch < dec_config.epochs; ++epoch) {
        rng.shuffle(order.begin(), order.end());
        for (std::size_t start = 0; start < order.size(); start += dec_config.batch_size) {
            const std::size_t stop = std::min(order.size(), start + dec_config.batch_size);
            const auto b = static_cast<Eigen::Index>(stop - start);
            Tensor2 xb(b, normalized.cols());
            std::vector<const std::vector<int>*> seqs;
            for (Eigen::Index r = 0; r < b; ++r) {
                const std::size_t k = order[start + static_cast<std::size_t>(r)];
                xb.row(r) = normalized.row(static_cast<Eigen::Index>(k));
                seqs.push_back(&tokens[k]);
            }
            const Tensor2 cond = rse::rse_forward(enc, xb, &cache);
            for (auto& g : enc_grads) g.zero();
            dec_grad.zero();
            Tensor2 cond_grad;
            const auto bl = decoder::batch_loss(dec, cond, seqs, &dec_grad, &cond_grad);
            if (!std::isfinite(bl.sum)) {
                throw NumericError("ablation: non-finite joint loss at epoch " + std::to_string(epoch));
            }
            const double scale = 1.0 / static_cast<double>(std::max<std::size_t>(bl.tokens, 1));
            cond_grad *= scale;
            rse::rse_backward(enc, cache, cond_grad, enc_grads);
            for (auto s : dg) {
                for (double& v : s) v *= scale;
            }
            nn::adam_step(params, grads, adam);
        }
    }
    return {std::move(enc), std::move(dec)};
}

}  // namespace

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::none: return "none";
        case Variant::encoder_only: return "encoder_only";
        case Variant::full: return "full";
    }
    return "?";
}

Variant variant_from_string(std::string_view name) {
    if (name == "none") return Variant::none;
    if (name == "encoder_only") return Variant::encoder_only;
    if (name == "full") return Variant::full;
    throw ArgumentError("unknown ablation variant '" + std::string(name) + "'");
}

AblationData ablation_data(const data::Dataset& dataset) {
    AblationData out;
    auto fill = [&](data::Split split, std::vector<AblationExample>& dst) {
        for (const auto* row : dataset.captions_in(split)) {
            dst.push_back({row->stimulus_id, dataset.response(row->stimulus_id).values,
                           dataset.caption_embedding(row->caption), row->caption});
        }
    };
    fill(data::Split::train, out.train);
    fill(data::Split::test, out.test);
    if (out.train.empty() || out.test.empty()) throw DataError("ablation: dataset needs non-empty train and test splits");
    out.sentence_embedder = std::shared_ptr<const embedding::Embedder>(dataset.sentence_embedder());
    return out;
}

VariantScores run_variant(const AblationData& data, const AblationConfig& config, Variant variant,
                          std::uint64_t seed) {
    if (data.train.empty() || data.test.empty()) throw DataError("ablation: empty train or test split");
    if (!data.sentence_embedder) throw ArgumentError("ablation: no sentence embedder");

    std::vector<std::string> corpus;
    for (const auto& ex : data.train) corpus.push_back(ex.caption);
    const text::Vocabulary vocab = text::build_vocabulary(corpus, config.min_token_freq);
    std::vector<std::vector<int>> train_tokens;
    for (const auto& ex : data.train) train_tokens.push_back(text::encode(vocab, ex.caption));

    rse::RseConfig rse_config = config.rse;
    rse_config.seed = mix_seed(seed ^ kEncoderSeedTag);
    decoder::DecoderConfig dec_config = config.decoder;
    dec_config.seed = mix_seed(seed ^ kDecoderSeedTag);

    const Tensor2 train_x = stack(data.train, true);
    const Tensor2 test_x = stack(data.test, true);
    const std::size_t dim = static_cast<std::size_t>(data.train.front().embedding.size());
    Tensor2 test_conditions;
    decoder::DecoderModel model;

    switch (variant) {
        case Variant::none: {
            const auto norm = rse::Normalizer::fit(train_x);
            const Tensor2 train_c = norm.apply(train_x);
            std::vector<decoder::DecoderPair> pairs;
            for (std::size_t i = 0; i < data.train.size(); ++i) {
                pairs.push_back({train_c.row(static_cast<Eigen::Index>(i)).transpose(), train_tokens[i]});
            }
            dec_config.freeze_init = true;
            model = decoder::train_decoder(pairs, vocab, dec_config).model;
            test_conditions = norm.apply(test_x);
            break;
        }
        case Variant::encoder_only: {
            const auto norm = rse::Normalizer::fit(train_x);
            auto [enc, dec] = train_joint(norm.apply(train_x), train_tokens, dim, vocab, rse_config, dec_config);
            enc.normalizer = norm;
            test_conditions = rse::predict_embeddings(enc, test_x);
            model = std::move(dec);
            break;
        }
        case Variant::full: {
            std::vector<rse::RsePair> rse_pairs;
            std::vector<decoder::DecoderPair> pairs;
            for (std::size_t i = 0; i < data.train.size(); ++i) {
                rse_pairs.push_back({data.train[i].response, data.train[i].embedding});
                pairs.push_back({data.train[i].embedding, train_tokens[i]});
            }
            const auto enc = rse::train_rse(rse_pairs, rse_config).model;
            model = decoder::train_decoder(pairs, vocab, dec_config).model;
            test_conditions = rse::predict_embeddings(enc, test_x);
            break;
        }
    }

    std::vector<EvalItem> items;
    for (std::size_t i = 0; i < data.test.size(); ++i) {
        items.push_back({data.test[i].stimulus_id, data.test[i].caption, text::encode(vocab, data.test[i].caption),
                         test_conditions.row(static_cast<Eigen::Index>(i)).transpose()});
    }
    const EvalReport report = evaluate(model, items, *data.sentence_embedder, std::string(to_string(variant)));
    return {report.mean_sentence, report.mean_meteor, report.perplexity};
}

AblationTable run_ablation(const AblationData& data, const AblationConfig& config) {
    if (config.seeds.size() < 3) throw ArgumentError("ablation: at least three seeds are required");
    if (config.variants.empty()) throw ArgumentError("ablation: no variants requested");
    AblationTable table;
    table.seeds = config.seeds;
    for (Variant v : config.variants) {
        AblationRow row;
        row.variant = v;
        std::vector<double> s, m, p;
        for (std::uint64_t seed : config.seeds) {
            const auto scores = run_variant(data, config, v, seed);
            row.per_seed.push_back(scores);
            s.push_back(scores.sentence);
            m.push_back(scores.meteor);
            p.push_back(scores.perplexity);
        }
        row.median = {median(s), median(m), median(p)};
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string format_ablation_table(const AblationTable& table) {
    std::string out = "variant\tencoder_decoder\tembedding_space\tsentence\tmeteor\tperplexity\n";
    for (const auto& row : table.rows) {
        const bool enc = row.variant != Variant::none;
        const bool emb = row.variant == Variant::full;
        out += std::string(to_string(row.variant)) + '\t' + (enc ? "1" : "0") + '\t' + (emb ? "1" : "0") + '\t' +
               g17(row.median.sentence) + '\t' + g17(row.median.meteor) + '\t' + g17(row.median.perplexity) + '\n';
    }
    return out;
}

void write_ablation_table(const AblationTable& table, const std::filesystem::path& path) {
    data::write_text_atomic(path, format_ablation_table(table));
}

}  // namespace neurocap::metrics
