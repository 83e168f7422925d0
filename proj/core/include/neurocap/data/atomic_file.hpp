#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace neurocap::data {

/// Writes to `<path>.tmp` and renames over `path`.
void write_bytes_atomic(const std::filesystem::path& path, std::span<const std::byte> bytes);
void write_text_atomic(const std::filesystem::path& path, std::string_view text);

std::vector<std::byte> read_bytes(const std::filesystem::path& path);

/// FNV-1a of the file contents as 16 lowercase hex digits.
std::string file_checksum(const std::filesystem::path& path);

}  // namespace neurocap::data
