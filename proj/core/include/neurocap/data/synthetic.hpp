#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "neurocap/data/captions.hpp"
#include "neurocap/data/manifest.hpp"
#include "neurocap/data/vector_file.hpp"
#include "neurocap/embedding/store.hpp"

namespace neurocap::data {

struct SyntheticSpec {
    std::size_t concepts = 8;
    std::size_t per_concept = 50;
    std::size_t embedding_dim = 32;
    std::size_t response_dim = 64;
    double noise = 0.1;
    double test_fraction = 0.1;
    std::string subject = "subj01";

    /// Throws ArgumentError for K < 2, negative noise or empty dimensions.
    void validate() const;
};

/// Labeled stand-in corpus. Captions come from a per-concept template
/// grammar; embeddings from a HashBagEmbedder; responses are A e + noise with
/// a seeded F x D mixing matrix A (entries N(0, 1/D)).
struct SyntheticDataset {
    SyntheticSpec spec;
    std::uint64_t seed = 0;
    std::uint64_t embedder_seed = 0;
    Tensor2 mixing;                       // F x D
    std::vector<VectorRecord> responses;  // double precision, before float32 storage
    std::vector<CaptionRow> captions;
    embedding::EmbeddingStore embeddings{1};
    DatasetManifest manifest;             // checksums filled in by write_synthetic
};

SyntheticDataset generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

/// Writes responses.bin, embeddings.bin, captions.tsv and manifest.json into
/// `dir`; returns the manifest path.
std::filesystem::path write_synthetic(SyntheticDataset& data, const std::filesystem::path& dir);

}  // namespace neurocap::data
