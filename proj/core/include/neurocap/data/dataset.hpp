#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "neurocap/data/captions.hpp"
#include "neurocap/data/manifest.hpp"
#include "neurocap/embedding/embedder.hpp"
#include "neurocap/embedding/store.hpp"
#include "neurocap/rse/encoder.hpp"

namespace neurocap::data {

enum class Split { train, test };

/// Validated, cross-referenced dataset. Immutable after load_dataset.
struct Dataset {
    std::filesystem::path root;
    DatasetManifest manifest;
    std::size_t response_dim = 0;
    std::vector<rse::ResponseVector> responses;
    std::unordered_map<std::string, std::size_t> response_index;
    std::vector<CaptionRow> captions;
    embedding::EmbeddingStore embeddings{1};  // keyed by caption text
    rse::Normalizer train_stats;              // z-scoring fitted on the train split

    std::size_t embedding_dim() const { return embeddings.dim(); }
    const rse::ResponseVector& response(std::string_view stimulus_id) const;
    const Vector& caption_embedding(std::string_view caption) const;
    const std::vector<std::string>& ids(Split split) const;
    /// Caption rows whose stimulus is in `split`, in file order.
    std::vector<const CaptionRow*> captions_in(Split split) const;
    std::string label(std::string_view stimulus_id) const;

    /// Embedder named by the manifest for the sentence metric; falls back to
    /// exact lookup in the embedding store.
    std::unique_ptr<embedding::Embedder> sentence_embedder() const;
};

/// Loads and validates every file named by the manifest: checksums, ids
/// present in responses, split covering each response exactly once,
/// dimensions, and an embedding for every caption.
Dataset load_dataset(const std::filesystem::path& manifest_path);

}  // namespace neurocap::data
