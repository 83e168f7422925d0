#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "neurocap/tensor.hpp"

namespace neurocap::data {

inline constexpr std::uint32_t kVectorFileVersion = 1;

/// Magic "NRSP" (responses) or "EMBD" (embeddings).
enum class VectorFileKind { responses, embeddings };

struct VectorRecord {
    std::string id;
    Vector values;
};

/// Header (magic, u32 version, u32 dim, u64 count) followed by records of
/// (u32 id length, UTF-8 id, dim little-endian float32). Values are computed
/// in double and stored as float.
struct VectorFile {
    VectorFileKind kind = VectorFileKind::responses;
    std::size_t dim = 0;
    std::vector<VectorRecord> records;
};

std::vector<std::byte> encode_vector_file(VectorFileKind kind, std::size_t dim,
                                          std::span<const VectorRecord> records);
VectorFile decode_vector_file(std::span<const std::byte> bytes,
                              std::optional<VectorFileKind> expected = std::nullopt);

void write_vector_file(const std::filesystem::path& path, VectorFileKind kind, std::size_t dim,
                       std::span<const VectorRecord> records);
VectorFile read_vector_file(const std::filesystem::path& path,
                            std::optional<VectorFileKind> expected = std::nullopt);

}  // namespace neurocap::data
