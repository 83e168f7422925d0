#include "neurocap/data/synthetic.hpp"

#include <cmath>
#include <cstdio>

#include "neurocap/data/atomic_file.hpp"
#include "neurocap/embedding/embedder.hpp"
#include "neurocap/error.hpp"
#include "neurocap/random.hpp"

namespace neurocap::data {

namespace {

struct ConceptLexicon {
    std::vector<std::string> adjectives;
    std::vector<std::string> nouns;
    std::vector<std::string> verbs;
    std::vector<std::string> places;
};

const std::vector<ConceptLexicon>& builtin_lexicons() {
    static const std::vector<ConceptLexicon> lex = {
        {{"fluffy", "sleepy"}, {"cat", "kitten", "tabby"}, {"sleeps", "naps"}, {"sofa", "windowsill"}},
        {{"playful", "muddy"}, {"dog", "puppy", "terrier"}, {"runs", "plays"}, {"park", "yard"}},
        {{"yellow", "crowded"}, {"bus", "truck", "van"}, {"drives", "waits"}, {"street", "road"}},
        {{"fresh", "cheesy"}, {"pizza", "sandwich", "burger"}, {"is served", "is displayed"}, {"plate", "table"}},
        {{"tall", "focused"}, {"player", "athlete", "batter"}, {"swings", "throws"}, {"stadium", "court"}},
        {{"shiny", "clean"}, {"oven", "stove", "refrigerator"}, {"stands", "gleams"}, {"kitchen", "apartment"}},
        {{"tiny", "feathered"}, {"bird", "pigeon", "seagull"}, {"flies", "perches"}, {"branch", "beach"}},
        {{"long", "fast"}, {"train", "locomotive", "tram"}, {"arrives", "departs"}, {"station", "platform"}},
        {{"wooden", "anchored"}, {"boat", "sailboat", "canoe"}, {"floats", "sails"}, {"harbor", "lake"}},
        {{"wild", "grey"}, {"elephant", "giraffe", "zebra"}, {"grazes", "wanders"}, {"savanna", "enclosure"}},
        {{"young", "smiling"}, {"man", "woman", "child"}, {"talks", "reads"}, {"office", "library"}},
        {{"daring", "skilled"}, {"skateboarder", "surfer", "snowboarder"}, {"rides", "glides"}, {"ramp", "wave"}},
    };
    return lex;
}

ConceptLexicon lexicon_for(std::size_t k) {
    const auto& lex = builtin_lexicons();
    if (k < lex.size()) return lex[k];
    const std::string tag = "c" + std::to_string(k);
    ConceptLexicon out;
    for (const char* s : {"a", "b"}) out.adjectives.push_back("attr" + tag + s);
    for (const char* s : {"a", "b", "c"}) out.nouns.push_back("obj" + tag + s);
    for (const char* s : {"a", "b"}) out.verbs.push_back("act" + tag + s);
    for (const char* s : {"a", "b"}) out.places.push_back("loc" + tag + s);
    return out;
}

// Function words are the only tokens shared across concepts.
const std::vector<std::string> kPrepositions = {"on", "near", "in", "by"};

const std::string& pick(const std::vector<std::string>& pool, Rng& rng) {
    return pool[rng.below(pool.size())];
}

std::string make_caption(const ConceptLexicon& lex, Rng& rng) {
    const std::string& adj = pick(lex.adjectives, rng);
    const std::string& noun = pick(lex.nouns, rng);
    const std::string& verb = pick(lex.verbs, rng);
    const std::string& prep = pick(kPrepositions, rng);
    const std::string& place = pick(lex.places, rng);
    if (rng.below(2) == 0) return "a " + adj + " " + noun + " " + verb + " " + prep + " the " + place;
    return "the " + noun + " " + verb + " " + prep + " a " + adj + " " + place;
}

std::string stimulus_id(std::size_t n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "stim%05zu", n);
    return buf;
}

}  // namespace

void SyntheticSpec::validate() const {
    if (concepts < 2) throw ArgumentError("synthetic: need at least 2 concepts");
    if (per_concept < 1) throw ArgumentError("synthetic: need at least 1 caption per concept");
    if (embedding_dim == 0 || response_dim == 0) throw ArgumentError("synthetic: dimensions must be positive");
    if (!(noise >= 0.0) || !std::isfinite(noise)) throw ArgumentError("synthetic: noise must be >= 0");
    if (!(test_fraction >= 0.0 && test_fraction < 1.0)) {
        throw ArgumentError("synthetic: test_fraction must be in [0, 1)");
    }
}

SyntheticDataset generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
    spec.validate();
    SyntheticDataset ds;
    ds.spec = spec;
    ds.seed = seed;
    ds.embedder_seed = mix_seed(seed ^ 0x456D62656464ULL);
    const embedding::HashBagEmbedder embedder(spec.embedding_dim, ds.embedder_seed);
    ds.embeddings = embedding::EmbeddingStore(spec.embedding_dim);

    Rng mix_rng(mix_seed(seed ^ 0x4D6978696E67ULL));
    const auto f = static_cast<Eigen::Index>(spec.response_dim);
    const auto d = static_cast<Eigen::Index>(spec.embedding_dim);
    ds.mixing = Tensor2(f, d);
    const double sd = 1.0 / std::sqrt(static_cast<double>(spec.embedding_dim));
    for (double& a : as_span(ds.mixing)) a = mix_rng.normal(0.0, sd);

    Rng caption_rng(mix_seed(seed ^ 0x43617074ULL));
    Rng noise_rng(mix_seed(seed ^ 0x4E6F697365ULL));
    Rng split_rng(mix_seed(seed ^ 0x53706C6974ULL));
    const auto n_test = static_cast<std::size_t>(
        std::llround(static_cast<double>(spec.per_concept) * spec.test_fraction));

    DatasetManifest& m = ds.manifest;
    m.subject = spec.subject;
    std::size_t next_id = 1;
    for (std::size_t k = 0; k < spec.concepts; ++k) {
        const ConceptLexicon lex = lexicon_for(k);
        const std::string label = "concept" + std::to_string(k);
        std::vector<std::string> ids;
        for (std::size_t j = 0; j < spec.per_concept; ++j) {
            const std::string id = stimulus_id(next_id++);
            const std::string caption = make_caption(lex, caption_rng);
            Vector e;
            if (const auto* rec = ds.embeddings.find(caption)) {
                e = rec->vector;
            } else {
                e = embedder.embed(caption);
                ds.embeddings.add(caption, e, label);
            }
            Vector r = ds.mixing * e;
            if (spec.noise > 0.0) {
                for (Eigen::Index i = 0; i < r.size(); ++i) r(i) += noise_rng.normal(0.0, spec.noise);
            }
            ds.responses.push_back({id, std::move(r)});
            ds.captions.push_back({id, spec.subject, caption});
            m.labels[id] = label;
            ids.push_back(id);
        }
        std::vector<std::size_t> order(ids.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        split_rng.shuffle(order.begin(), order.end());
        std::vector<bool> is_test(ids.size(), false);
        for (std::size_t i = 0; i < n_test; ++i) is_test[order[i]] = true;
        for (std::size_t i = 0; i < ids.size(); ++i) (is_test[i] ? m.test : m.train).push_back(ids[i]);
    }
    m.sentence_embedder = SentenceEmbedderSpec{"hashbag", spec.embedding_dim, ds.embedder_seed};
    m.synthetic = SyntheticMetadata{seed, spec.noise, spec.concepts, spec.per_concept,
                                    spec.embedding_dim, spec.response_dim};
    return ds;
}

std::filesystem::path write_synthetic(SyntheticDataset& data, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    DatasetManifest& m = data.manifest;
    write_vector_file(dir / m.responses, VectorFileKind::responses, data.spec.response_dim, data.responses);
    std::vector<VectorRecord> emb;
    for (const auto& r : data.embeddings.records()) emb.push_back({r.id, r.vector});
    write_vector_file(dir / m.embeddings, VectorFileKind::embeddings, data.spec.embedding_dim, emb);
    write_captions(dir / m.captions, data.captions);
    m.checksums["responses"] = file_checksum(dir / m.responses);
    m.checksums["embeddings"] = file_checksum(dir / m.embeddings);
    m.checksums["captions"] = file_checksum(dir / m.captions);
    const auto manifest_path = dir / "manifest.json";
    write_manifest(manifest_path, m);
    return manifest_path;
}

}  // namespace neurocap::data
