#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "neurocap/decoder/decoder.hpp"
#include "neurocap/rse/encoder.hpp"
#include "neurocap/text/vocabulary.hpp"

namespace neurocap::data {

inline constexpr std::uint32_t kCheckpointVersion = 1;

enum class ModelKind : std::uint32_t { rse = 1, decoder = 2 };

/// Layout: "NCKP", u32 version, u32 kind, u64 vocabulary hash (0 for rse),
/// u32-prefixed JSON configuration, u32 tensor count, tensors as
/// (name, u32 rows, u32 cols, float64 little-endian values), and a trailing
/// u64 FNV-1a checksum of every preceding byte.
std::vector<std::byte> encode_checkpoint(const rse::RseModel& model);
std::vector<std::byte> encode_checkpoint(const decoder::DecoderModel& model);

rse::RseModel decode_rse_checkpoint(std::span<const std::byte> bytes);
/// When `expected` is given, refuses a checkpoint whose vocabulary hash differs.
decoder::DecoderModel decode_decoder_checkpoint(std::span<const std::byte> bytes,
                                                const text::Vocabulary* expected = nullptr);

void save_checkpoint(const rse::RseModel& model, const std::filesystem::path& path);
void save_checkpoint(const decoder::DecoderModel& model, const std::filesystem::path& path);
rse::RseModel load_rse_checkpoint(const std::filesystem::path& path);
decoder::DecoderModel load_decoder_checkpoint(const std::filesystem::path& path,
                                              const text::Vocabulary* expected = nullptr);

ModelKind checkpoint_kind(std::span<const std::byte> bytes);

}  // namespace neurocap::data
