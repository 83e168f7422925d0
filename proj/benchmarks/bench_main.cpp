#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "neurocap/decoder/decoder.hpp"
#include "neurocap/embedding/embedder.hpp"
#include "neurocap/embedding/store.hpp"
#include "neurocap/metrics/meteor.hpp"
#include "neurocap/nn/dense.hpp"
#include "neurocap/random.hpp"
#include "neurocap/text/vocabulary.hpp"
#include "neurocap/viz/pca.hpp"
#include "neurocap/viz/tsne.hpp"

using namespace neurocap;

namespace {

Tensor2 gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    Rng rng(seed);
    Tensor2 x(rows, cols);
    for (double& v : as_span(x)) v = rng.normal();
    return x;
}

void BM_DenseForwardBackward(benchmark::State& state) {
    const auto n = state.range(0);
    Rng rng(1);
    const auto layer = nn::DenseLayer::random(512, 256, nn::Activation::relu, rng);
    const Tensor2 x = gaussian(n, 512, 2);
    nn::DenseGrad grad(layer);
    for (auto _ : state) {
        nn::DenseCache cache;
        const Tensor2 y = nn::dense_forward(layer, x, &cache);
        benchmark::DoNotOptimize(nn::dense_backward(layer, cache, y, grad));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_DenseForwardBackward)->Arg(32)->Arg(128);

struct DecoderFixture {
    text::Vocabulary vocab;
    decoder::DecoderModel model;
    std::vector<std::vector<int>> sequences;
    Tensor2 conditions;

    explicit DecoderFixture(std::size_t batch) {
        const std::vector<std::string> corpus{"a red fox runs near the river", "the old owl sleeps in a tall tree",
                                              "a small boat drifts by the shore"};
        vocab = text::build_vocabulary(corpus, 1);
        model = decoder::DecoderModel::create(64, vocab, decoder::DecoderConfig{});
        for (std::size_t i = 0; i < batch; ++i) sequences.push_back(text::encode(vocab, corpus[i % corpus.size()]));
        conditions = gaussian(static_cast<Eigen::Index>(batch), 64, 3);
    }
};

void BM_DecoderBatchLoss(benchmark::State& state) {
    DecoderFixture f(static_cast<std::size_t>(state.range(0)));
    std::vector<const std::vector<int>*> seqs;
    for (const auto& s : f.sequences) seqs.push_back(&s);
    decoder::DecoderGrad grad(f.model);
    for (auto _ : state) {
        benchmark::DoNotOptimize(decoder::batch_loss(f.model, f.conditions, seqs, &grad, nullptr));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DecoderBatchLoss)->Arg(32);

void BM_GenerateCaption(benchmark::State& state) {
    DecoderFixture f(1);
    const Vector condition = f.conditions.row(0).transpose();
    for (auto _ : state) benchmark::DoNotOptimize(decoder::generate_caption(f.model, condition));
}
BENCHMARK(BM_GenerateCaption);

void BM_HashBagEmbed(benchmark::State& state) {
    const embedding::HashBagEmbedder embedder(300, 9);
    for (auto _ : state) benchmark::DoNotOptimize(embedder.embed("a brown dog chases the red ball across the park"));
}
BENCHMARK(BM_HashBagEmbed);

void BM_NearestNeighbor(benchmark::State& state) {
    const auto n = state.range(0);
    embedding::EmbeddingStore store(300);
    const Tensor2 entries = gaussian(n, 300, 4);
    for (Eigen::Index i = 0; i < n; ++i) store.add("caption " + std::to_string(i), entries.row(i).transpose());
    const Vector query = gaussian(1, 300, 5).row(0).transpose();
    for (auto _ : state) benchmark::DoNotOptimize(embedding::reverse_embed_nn(store, query));
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_NearestNeighbor)->Arg(1000)->Arg(10000);

void BM_Meteor(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(metrics::meteor("the quick brown fox jumps over the lazy dog near the barn",
                                                 "a quick brown dog jumps over the lazy fox by the barn"));
    }
}
BENCHMARK(BM_Meteor);

void BM_Pca(benchmark::State& state) {
    const Tensor2 x = gaussian(state.range(0), 64, 6);
    for (auto _ : state) benchmark::DoNotOptimize(viz::pca_project(x, 2));
}
BENCHMARK(BM_Pca)->Arg(400);

void BM_Tsne(benchmark::State& state) {
    const Tensor2 x = gaussian(state.range(0), 32, 7);
    viz::TsneOptions opts;
    opts.iterations = 300;
    for (auto _ : state) benchmark::DoNotOptimize(viz::tsne_project(x, opts));
}
BENCHMARK(BM_Tsne)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
