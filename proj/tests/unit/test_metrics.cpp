#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "neurocap/data/dataset.hpp"
#include "neurocap/data/synthetic.hpp"
#include "neurocap/embedding/embedder.hpp"
#include "neurocap/error.hpp"
#include "neurocap/metrics/ablation.hpp"
#include "neurocap/metrics/meteor.hpp"
#include "neurocap/metrics/report.hpp"
#include "neurocap/metrics/scores.hpp"
#include "neurocap/random.hpp"
#include "neurocap/text/tokenize.hpp"
#include "oracles.hpp"

using namespace neurocap;
using Tokens = std::vector<std::string>;

namespace {

// Brute force over every one-to-one alignment of equal tokens: most matches,
// then fewest chunks. Returns {matches, chunks}.
std::pair<std::size_t, std::size_t> brute_alignment(const Tokens& ref, const Tokens& hyp) {
    std::size_t best_m = 0, best_c = 0;
    std::vector<int> target(hyp.size(), -1);
    std::vector<bool> used(ref.size(), false);
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == hyp.size()) {
            std::size_t m = 0, c = 0;
            int prev_i = -2, prev_j = -2;
            for (std::size_t k = 0; k < hyp.size(); ++k) {
                if (target[k] < 0) continue;
                ++m;
                if (!(static_cast<int>(k) == prev_i + 1 && target[k] == prev_j + 1)) ++c;
                prev_i = static_cast<int>(k);
                prev_j = target[k];
            }
            if (m > best_m || (m == best_m && c < best_c)) {
                best_m = m;
                best_c = c;
            }
            return;
        }
        walk(i + 1);
        for (std::size_t j = 0; j < ref.size(); ++j) {
            if (used[j] || ref[j] != hyp[i]) continue;
            used[j] = true;
            target[i] = static_cast<int>(j);
            walk(i + 1);
            target[i] = -1;
            used[j] = false;
        }
    };
    walk(0);
    return {best_m, best_c};
}

double formula_score(std::size_t m, std::size_t chunks, std::size_t ref_len, std::size_t hyp_len) {
    if (m == 0) return 0.0;
    const double p = static_cast<double>(m) / static_cast<double>(hyp_len);
    const double r = static_cast<double>(m) / static_cast<double>(ref_len);
    const double fmean = 10 * p * r / (r + 9 * p);
    const double frag = static_cast<double>(chunks) / static_cast<double>(m);
    return fmean * (1.0 - 0.5 * frag * frag * frag);
}

std::string join(const Tokens& t) {
    std::string out;
    for (const auto& s : t) out += (out.empty() ? "" : " ") + s;
    return out;
}

// Every sequence of length <= max_len over `alphabet`.
std::vector<Tokens> all_sequences(const Tokens& alphabet, std::size_t max_len) {
    std::vector<Tokens> out{{}};
    std::vector<Tokens> frontier{{}};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<Tokens> next;
        for (const auto& s : frontier)
            for (const auto& a : alphabet) {
                auto t = s;
                t.push_back(a);
                next.push_back(t);
            }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

}  // namespace

TEST(Meteor, HandValues) {
    EXPECT_NEAR(metrics::meteor("cat", "cat"), 0.5, 1e-12);
    EXPECT_NEAR(metrics::meteor("the cat sat", "the cat sat"), 1.0 - 0.5 / 27.0, 1e-12);
    EXPECT_EQ(metrics::meteor("a dog runs", "blue bird flies"), 0.0);
    EXPECT_EQ(metrics::meteor("", "cat"), 0.0);
    EXPECT_EQ(metrics::meteor("cat", ""), 0.0);
}

TEST(Meteor, StatsMatchFormula) {
    const Tokens ref{"the", "cat", "sat", "on", "the", "mat"};
    const Tokens hyp{"on", "the", "mat", "the", "cat"};
    const auto s = metrics::meteor_stats(ref, hyp);
    EXPECT_EQ(s.matches, 5u);
    EXPECT_EQ(s.chunks, 2u);
    EXPECT_TRUE(s.exhaustive);
    EXPECT_NEAR(s.score, formula_score(5, 2, 6, 5), 1e-15);
}

TEST(Meteor, AgreesWithBruteForceAlignment) {
    Rng rng(31);
    const Tokens alphabet{"a", "b", "c", "d"};
    for (int trial = 0; trial < 3000; ++trial) {
        Tokens ref, hyp;
        const auto lr = 1 + rng.below(7), lh = 1 + rng.below(7);
        for (std::size_t k = 0; k < lr; ++k) ref.push_back(alphabet[rng.below(4)]);
        for (std::size_t k = 0; k < lh; ++k) hyp.push_back(alphabet[rng.below(4)]);
        const auto [m, c] = brute_alignment(ref, hyp);
        const auto s = metrics::meteor_stats(ref, hyp);
        ASSERT_EQ(s.matches, m) << join(ref) << " | " << join(hyp);
        ASSERT_EQ(s.chunks, c) << join(ref) << " | " << join(hyp);
        ASSERT_NEAR(s.score, formula_score(m, c, lr, lh), 1e-15);
    }
}

TEST(Meteor, SelfScoreIsMaximalExhaustively) {
    const auto seqs = all_sequences({"a", "b", "c", "d", "e"}, 4);
    ASSERT_EQ(seqs.size(), 781u);
    for (const auto& ref : seqs) {
        if (ref.empty()) continue;
        const double self = metrics::meteor_stats(ref, ref).score;
        for (const auto& hyp : seqs) {
            const double s = metrics::meteor_stats(ref, hyp).score;
            ASSERT_GE(self, s) << join(ref) << " | " << join(hyp);
            ASSERT_GE(s, 0.0);
            ASSERT_LE(s, 1.0);
        }
    }
}

TEST(Meteor, InvariantToCaseAndPunctuation) {
    EXPECT_EQ(metrics::meteor("The cat, sat.", "the CAT sat!"), metrics::meteor("the cat sat", "the cat sat"));
    EXPECT_EQ(metrics::meteor("\"Dogs\" run", "dogs run..."), metrics::meteor("dogs run", "dogs run"));
}

TEST(Meteor, LongSentencesUseGreedyFallback) {
    Tokens ref, hyp;
    for (int k = 0; k < 25; ++k) {
        ref.push_back("w" + std::to_string(k));
        hyp.push_back("w" + std::to_string(24 - k));
    }
    const auto s = metrics::meteor_stats(ref, hyp);
    EXPECT_FALSE(s.exhaustive);
    EXPECT_EQ(s.matches, 25u);
    EXPECT_EQ(metrics::meteor_stats(ref, ref).chunks, 1u);
}

TEST(Perplexity, HandValues) {
    const std::vector<double> quarter{std::log(0.5), std::log(0.25)};
    EXPECT_NEAR(metrics::perplexity_from_log_probs(quarter), 2.0 * std::sqrt(2.0), 1e-12);
    const std::vector<double> certain{0.0, 0.0, 0.0};
    EXPECT_DOUBLE_EQ(metrics::perplexity_from_log_probs(certain), 1.0);
    EXPECT_THROW(metrics::perplexity_from_log_probs(std::vector<double>{}), DataError);
}

TEST(Perplexity, UniformModelEqualsVocabularySize) {
    decoder::DecoderConfig c;
    c.embed_dim = 3;
    c.hidden_dim = 5;
    auto model = decoder::DecoderModel::create(2, text::Vocabulary(), c);
    model.output.weight.setZero();
    model.output.bias.setZero();
    Rng rng(1);
    std::vector<decoder::DecoderPair> pairs;
    for (int i = 0; i < 5; ++i) {
        std::vector<int> toks{1};
        for (std::size_t k = 0; k < rng.below(5); ++k) toks.push_back(3);
        toks.push_back(2);
        pairs.push_back({Vector::Constant(2, rng.normal()), toks});
    }
    EXPECT_NEAR(metrics::perplexity(model, pairs), 4.0, 1e-12);
    EXPECT_THROW(metrics::perplexity(model, std::vector<decoder::DecoderPair>{}), DataError);
}

TEST(Perplexity, AtLeastOneForTrainedModels) {
    decoder::DecoderConfig c;
    c.embed_dim = 4;
    c.hidden_dim = 8;
    c.epochs = 50;
    c.lr = 1e-2;
    const auto vocab = text::Vocabulary::from_tokens({"<pad>", "<start>", "<end>", "<unk>", "x", "y"});
    const std::vector<decoder::DecoderPair> pairs{{Vector::Ones(2), {1, 4, 5, 2}}, {-Vector::Ones(2), {1, 5, 2}}};
    const auto model = decoder::train_decoder(pairs, vocab, c).model;
    EXPECT_GE(metrics::perplexity(model, pairs), 1.0);
}

TEST(Sentence, IdentitySymmetryAndDisjointNearZero) {
    const embedding::HashBagEmbedder e(32, 3);
    EXPECT_NEAR(metrics::sentence_similarity(e, "a red cat", "a red cat"), 1.0, 1e-12);
    EXPECT_EQ(metrics::sentence_similarity(e, "a red cat", "the dog runs"),
              metrics::sentence_similarity(e, "the dog runs", "a red cat"));
    Rng rng(5);
    double total = 0.0;
    const int trials = 500;
    for (int t = 0; t < trials; ++t) {
        std::string a, b;
        for (int k = 0; k < 5; ++k) {
            a += "a" + std::to_string(rng.below(1u << 30)) + " ";
            b += "b" + std::to_string(rng.below(1u << 30)) + " ";
        }
        total += std::abs(metrics::sentence_similarity(e, a, b));
    }
    EXPECT_LT(total / trials, 0.2);
}

TEST(Report, EvaluateAndFormat) {
    decoder::DecoderConfig c;
    c.embed_dim = 3;
    c.hidden_dim = 4;
    c.max_len = 4;
    const auto vocab = text::Vocabulary::from_tokens({"<pad>", "<start>", "<end>", "<unk>", "cat"});
    auto model = decoder::DecoderModel::create(2, vocab, c);
    model.output.weight.setZero();
    model.output.bias.setZero();
    model.output.bias[4] = 5.0;  // always "cat", never <end>
    const std::vector<metrics::EvalItem> items{{"s1", "cat", text::encode(vocab, "cat"), Vector::Ones(2)},
                                               {"s2", "Cat.", text::encode(vocab, "Cat."), Vector::Zero(2)}};
    const embedding::HashBagEmbedder e(16, 1);
    const auto report = metrics::evaluate(model, items, e, "fp");
    ASSERT_EQ(report.records.size(), 2u);
    EXPECT_EQ(report.records[0].prediction, "cat cat cat");
    EXPECT_TRUE(report.records[0].truncated);
    EXPECT_EQ(report.perplexity_tokens, 4u);
    EXPECT_GE(report.perplexity, 1.0);
    for (const auto& r : report.records) {
        EXPECT_GE(r.meteor, 0.0);
        EXPECT_LE(r.meteor, 1.0);
        EXPECT_LE(std::abs(r.sentence), 1.0 + 1e-12);
    }
    const auto tsv = metrics::format_eval_report(report);
    EXPECT_EQ(tsv.rfind("stimulus_id\treference\tprediction\tmeteor\tsentence\ttruncated\n", 0), 0u);
    EXPECT_NE(tsv.find("s1\tcat\tcat cat cat\t"), std::string::npos);
    EXPECT_NE(tsv.find("# pairs=2\n"), std::string::npos);
    EXPECT_NE(tsv.find("# config_fingerprint=fp\n"), std::string::npos);
    EXPECT_THROW(metrics::evaluate(model, std::vector<metrics::EvalItem>{}, e, "fp"), DataError);
}

class AblationHarness : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        dir_ = new support::TempDir("ablation");
        data::SyntheticSpec spec;
        spec.concepts = 2;
        spec.per_concept = 10;
        spec.embedding_dim = 8;
        spec.response_dim = 8;
        auto ds = data::generate_synthetic(spec, 3);
        data_ = new metrics::AblationData(metrics::ablation_data(data::load_dataset(data::write_synthetic(ds, dir_->path()))));
    }
    static void TearDownTestSuite() {
        delete data_;
        delete dir_;
    }
    static metrics::AblationConfig tiny() {
        metrics::AblationConfig c;
        c.rse.hidden = {4};
        c.rse.epochs = 2;
        c.decoder.embed_dim = 3;
        c.decoder.hidden_dim = 4;
        c.decoder.epochs = 2;
        c.min_token_freq = 1;
        return c;
    }
    static support::TempDir* dir_;
    static metrics::AblationData* data_;
};
support::TempDir* AblationHarness::dir_ = nullptr;
metrics::AblationData* AblationHarness::data_ = nullptr;

TEST_F(AblationHarness, SingleVariantGivesOneRow) {
    auto c = tiny();
    c.variants = {metrics::Variant::full};
    const auto table = metrics::run_ablation(*data_, c);
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_EQ(table.rows[0].per_seed.size(), 3u);
    const auto tsv = metrics::format_ablation_table(table);
    EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 2);
    EXPECT_EQ(tsv.rfind("variant\tencoder_decoder\tembedding_space\tsentence\tmeteor\tperplexity\nfull\t1\t1\t", 0), 0u);
}

TEST_F(AblationHarness, ThreeVariantsInOrderAndDeterministic) {
    const auto a = metrics::run_ablation(*data_, tiny());
    const auto b = metrics::run_ablation(*data_, tiny());
    ASSERT_EQ(a.rows.size(), 3u);
    EXPECT_EQ(a.rows[0].variant, metrics::Variant::none);
    EXPECT_EQ(a.rows[1].variant, metrics::Variant::encoder_only);
    EXPECT_EQ(a.rows[2].variant, metrics::Variant::full);
    EXPECT_EQ(metrics::format_ablation_table(a), metrics::format_ablation_table(b));
    for (const auto& row : a.rows) {
        EXPECT_GE(row.median.perplexity, 1.0);
        const auto sorted = [&] {
            std::vector<double> p;
            for (const auto& s : row.per_seed) p.push_back(s.perplexity);
            std::sort(p.begin(), p.end());
            return p;
        }();
        EXPECT_EQ(row.median.perplexity, sorted[1]);
    }
}

TEST_F(AblationHarness, RejectsFewerThanThreeSeeds) {
    auto c = tiny();
    c.seeds = {1, 2};
    EXPECT_THROW(metrics::run_ablation(*data_, c), ArgumentError);
    c.seeds = {1, 2, 3};
    c.variants = {};
    EXPECT_THROW(metrics::run_ablation(*data_, c), ArgumentError);
}

TEST(AblationVariant, NamesRoundTrip) {
    for (auto v : {metrics::Variant::none, metrics::Variant::encoder_only, metrics::Variant::full})
        EXPECT_EQ(metrics::variant_from_string(metrics::to_string(v)), v);
    EXPECT_THROW(metrics::variant_from_string("half"), ArgumentError);
}
