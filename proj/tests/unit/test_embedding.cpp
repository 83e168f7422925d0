#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <algorithm>
#include <cstring>
#include <set>
#include <string>

#include "neurocap/data/synthetic.hpp"
#include "neurocap/embedding/embedder.hpp"
#include "neurocap/embedding/similarity.hpp"
#include "neurocap/embedding/store.hpp"
#include "neurocap/error.hpp"
#include "neurocap/random.hpp"
#include "neurocap/text/tokenize.hpp"
#include "oracles.hpp"

using namespace neurocap;
using embedding::cosine_similarity;
using embedding::EmbeddingStore;

namespace {

Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

Vector random_vector(Rng& rng, std::size_t d) {
    Vector v(static_cast<Eigen::Index>(d));
    for (auto& x : v) x = rng.normal();
    return v;
}

}  // namespace

TEST(Cosine, HandValues) {
    EXPECT_DOUBLE_EQ(cosine_similarity(vec({3, 4}), vec({3, 4})), 1.0);
    EXPECT_DOUBLE_EQ(cosine_similarity(vec({1, 0}), vec({0, 1})), 0.0);
    EXPECT_NEAR(cosine_similarity(vec({1, 1}), vec({1, 0})), 0.7071067811865475, 1e-15);
}

TEST(Cosine, Errors) {
    EXPECT_THROW(cosine_similarity(vec({0, 0}), vec({1, 0})), ArgumentError);
    EXPECT_THROW(cosine_similarity(vec({1, 0, 0}), vec({1, 0})), DimensionError);
}

TEST(Cosine, SymmetricAndScaleInvariant) {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const Vector a = random_vector(rng, 16), b = random_vector(rng, 16);
        const double alpha = std::exp(rng.uniform(-5, 5));
        const double s = cosine_similarity(a, b);
        EXPECT_NEAR(s, cosine_similarity(b, a), 1e-14);
        EXPECT_NEAR(s, cosine_similarity(Vector(alpha * a), b), 1e-12);
        EXPECT_LE(std::abs(s), 1.0);
    }
}

TEST(HashBag, DeterministicUnitNorm) {
    const embedding::HashBagEmbedder e(32, 5);
    const Vector first = e.embed("a red cat sleeps");
    EXPECT_NEAR(first.norm(), 1.0, 1e-12);
    for (int k = 0; k < 1000; ++k) {
        const Vector again = e.embed("a red cat sleeps");
        ASSERT_EQ(std::memcmp(first.data(), again.data(), sizeof(double) * 32), 0);
    }
    EXPECT_DOUBLE_EQ(cosine_similarity(first, first), 1.0);
}

TEST(HashBag, SharedTokensRaiseSimilarity) {
    const embedding::HashBagEmbedder e(32, 5);
    const double shared = cosine_similarity(e.embed("a red cat"), e.embed("a red dog"));
    const double disjoint = cosine_similarity(e.embed("a red cat"), e.embed("blue bird flies"));
    EXPECT_GT(shared, disjoint);
}

TEST(HashBag, OverlapOrdersSimilarityOnAverage) {
    // Mean cosine over random token bags grows with the number of shared tokens.
    const embedding::HashBagEmbedder e(64, 9);
    Rng rng(21);
    double previous = -1.0;
    for (int shared = 0; shared <= 4; ++shared) {
        double total = 0.0;
        const int trials = 200;
        for (int t = 0; t < trials; ++t) {
            std::string a, b;
            for (int k = 0; k < 4; ++k) {
                const auto common = "c" + std::to_string(rng.below(1000000));
                const auto left = "l" + std::to_string(rng.below(1000000));
                const auto right = "r" + std::to_string(rng.below(1000000));
                a += (k < shared ? common : left) + " ";
                b += (k < shared ? common : right) + " ";
            }
            total += cosine_similarity(e.embed(a), e.embed(b));
        }
        const double mean = total / trials;
        EXPECT_GT(mean, previous) << "shared=" << shared;
        previous = mean;
    }
}

TEST(HashBag, RejectsEmptyText) {
    const embedding::HashBagEmbedder e(8, 1);
    EXPECT_THROW(e.embed(""), ArgumentError);
    EXPECT_THROW(e.embed(" ,. "), ArgumentError);
}

TEST(FileLookup, MissIsAnError) {
    embedding::FileLookupEmbedder e(2);
    e.insert("a cat", vec({1, 0}));
    EXPECT_DOUBLE_EQ(e.embed("a cat")[0], 1.0);
    EXPECT_THROW(e.embed("a dog"), DataError);
}

TEST(Store, RejectsBadRecords) {
    EmbeddingStore store(2);
    store.add("x", vec({1, 0}));
    EXPECT_THROW(store.add("x", vec({0, 1})), DataError);
    EXPECT_THROW(store.add("z", vec({0, 0})), DataError);
    EXPECT_THROW(store.add("n", vec({std::nan(""), 1})), DataError);
    EXPECT_THROW(store.add("w", vec({1, 0, 0})), DimensionError);
}

TEST(NearestNeighbor, ExactMatchRanksFirst) {
    EmbeddingStore store(2);
    store.add("a", vec({1, 0}));
    store.add("b", vec({0, 1}));
    store.add("c", vec({1, 1}));
    const auto hits = embedding::nearest_neighbor(store, vec({0, 2}), 2);
    ASSERT_EQ(hits.size(), 2u);
    EXPECT_EQ(hits[0].id, "b");
    EXPECT_DOUBLE_EQ(hits[0].similarity, 1.0);
    EXPECT_EQ(hits[1].id, "c");
}

TEST(NearestNeighbor, KLargerThanStoreTruncates) {
    EmbeddingStore store(2);
    store.add("a", vec({1, 0}));
    store.add("b", vec({0, 1}));
    EXPECT_EQ(embedding::nearest_neighbor(store, vec({1, 1}), 10).size(), 2u);
}

TEST(NearestNeighbor, TiesBreakByAscendingId) {
    EmbeddingStore store(2);
    store.add("zeta", vec({1, 0}));
    store.add("alpha", vec({0, 1}));
    const auto hits = embedding::nearest_neighbor(store, vec({1, 1}), 2);
    EXPECT_EQ(hits[0].id, "alpha");
    EXPECT_EQ(hits[1].id, "zeta");
    EXPECT_EQ(embedding::reverse_embed_nn(store, vec({0.5, 0.5})), "alpha");
}

TEST(NearestNeighbor, Errors) {
    EmbeddingStore empty(2);
    EXPECT_THROW(embedding::nearest_neighbor(empty, vec({1, 0}), 1), DataError);
    EXPECT_THROW(embedding::reverse_embed_nn(empty, vec({1, 0})), DataError);
    EmbeddingStore store(2);
    store.add("a", vec({1, 0}));
    EXPECT_THROW(embedding::nearest_neighbor(store, vec({1, 0}), 0), ArgumentError);
    EXPECT_THROW(embedding::nearest_neighbor(store, vec({1, 0, 0}), 1), DimensionError);
}

TEST(NearestNeighbor, MatchesExhaustiveRescan) {
    Rng rng(77);
    EmbeddingStore store(32);
    for (int i = 0; i < 50; ++i) store.add("id" + std::to_string(i), random_vector(rng, 32));
    for (int q = 0; q < 1000; ++q) {
        const Vector query = random_vector(rng, 32);
        const auto hits = embedding::nearest_neighbor(store, query, 50);
        ASSERT_EQ(hits.size(), 50u);
        EXPECT_EQ(hits.front().id, support::rescan_nearest(store, query));
        for (std::size_t k = 1; k < hits.size(); ++k) {
            EXPECT_TRUE(hits[k - 1].similarity > hits[k].similarity ||
                        (hits[k - 1].similarity == hits[k].similarity && hits[k - 1].id < hits[k].id));
        }
        // Positive rescaling of the query leaves the ranking unchanged.
        const auto scaled = embedding::nearest_neighbor(store, Vector(query * 37.5), 5);
        for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(scaled[k].id, hits[k].id);
    }
}

TEST(ReverseEmbed, RecoversCaptionFromOwnOrPerturbedEmbedding) {
    data::SyntheticSpec spec;
    const auto ds = data::generate_synthetic(spec, 4);
    // Bag-of-token embeddings cannot separate word-order variants, so keep one
    // caption per token multiset.
    EmbeddingStore store(ds.embeddings.dim());
    std::set<std::vector<std::string>> bags;
    for (const auto& rec : ds.embeddings.records()) {
        auto bag = text::tokenize(rec.id);
        std::sort(bag.begin(), bag.end());
        if (bags.insert(bag).second) store.add(rec.id, rec.vector);
    }
    ASSERT_GT(store.size(), 20u);
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto& rec = store.records()[rng.below(store.size())];
        EXPECT_EQ(embedding::reverse_embed_nn(store, rec.vector), rec.id);
        Vector noisy = rec.vector;
        for (auto& x : noisy) x += 1e-3 * rng.normal();
        EXPECT_EQ(embedding::reverse_embed_nn(store, noisy), rec.id);
    }
}

TEST(ReverseEmbed, MidpointReturnsOneOfTheTwo) {
    EmbeddingStore store(3);
    store.add("b caption", vec({1, 0, 0}));
    store.add("a caption", vec({0, 1, 0}));
    store.add("far", vec({0, 0, -1}));
    EXPECT_EQ(embedding::reverse_embed_nn(store, vec({1, 1, 0})), "a caption");
}

TEST(EmbeddingTsv, RoundTrip) {
    support::TempDir dir("emb-tsv");
    Rng rng(1);
    EmbeddingStore store(4);
    store.add("a red cat", random_vector(rng, 4), "cat");
    store.add("the dog", random_vector(rng, 4), "");
    embedding::write_embedding_tsv(store, dir / "e.tsv");
    const auto back = embedding::read_embedding_tsv(dir / "e.tsv");
    ASSERT_EQ(back.size(), 2u);
    ASSERT_EQ(back.dim(), 4u);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(back.records()[i].id, store.records()[i].id);
        EXPECT_EQ(back.records()[i].label, store.records()[i].label);
        EXPECT_EQ(back.records()[i].vector, store.records()[i].vector);
    }
}

TEST(EmbeddingTsv, RejectsMalformedFiles) {
    support::TempDir dir("emb-bad");
    auto write = [&](const std::string& name, const std::string& body) {
        std::ofstream(dir / name) << body;
        return dir / name;
    };
    EXPECT_THROW(embedding::read_embedding_tsv(write("nohdr.tsv", "x\tl\t1,2\n")), DataError);
    EXPECT_THROW(embedding::read_embedding_tsv(write("short.tsv", "#dim=3\nx\tl\t1,2\n")), DataError);
    EXPECT_THROW(embedding::read_embedding_tsv(write("long.tsv", "#dim=1\nx\tl\t1,2\n")), DataError);
    EXPECT_THROW(embedding::read_embedding_tsv(write("nan.tsv", "#dim=2\nx\tl\t1,abc\n")), DataError);
    EXPECT_THROW(embedding::read_embedding_tsv(write("fields.tsv", "#dim=2\nx\t1,2\n")), DataError);
    EXPECT_THROW(embedding::read_embedding_tsv(write("dup.tsv", "#dim=1\nx\t\t1\nx\t\t2\n")), DataError);
    EXPECT_THROW(embedding::read_embedding_tsv(dir / "absent.tsv"), DataError);
}
