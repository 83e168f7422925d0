#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace neurocap::data {

inline constexpr std::uint32_t kManifestVersion = 1;

struct SentenceEmbedderSpec {
    std::string kind = "hashbag";
    std::size_t dim = 0;
    std::uint64_t seed = 0;
};

struct SyntheticMetadata {
    std::uint64_t seed = 0;
    double noise = 0.0;
    std::size_t concepts = 0;
    std::size_t per_concept = 0;
    std::size_t embedding_dim = 0;
    std::size_t response_dim = 0;
};

/// JSON document tying one dataset together. Paths are relative to the
/// manifest's directory.
struct DatasetManifest {
    std::string subject = "subj01";
    std::string responses = "responses.bin";
    std::string embeddings = "embeddings.bin";
    std::string captions = "captions.tsv";
    std::map<std::string, std::string> checksums;  // file role -> FNV-1a hex
    std::vector<std::string> train;
    std::vector<std::string> test;
    std::map<std::string, std::string> labels;  // stimulus id -> category
    std::optional<SentenceEmbedderSpec> sentence_embedder;
    std::optional<SyntheticMetadata> synthetic;
};

std::string manifest_to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(std::string_view json);

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);
DatasetManifest read_manifest(const std::filesystem::path& path);

}  // namespace neurocap::data
