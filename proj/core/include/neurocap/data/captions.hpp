#pragma once

#include <filesystem>
#include <span>
#include <string_view>
#include <string>
#include <vector>

namespace neurocap::data {

/// One row of the captions TSV: `stimulus_id<TAB>subject_id<TAB>caption`.
struct CaptionRow {
    std::string stimulus_id;
    std::string subject_id;
    std::string caption;

    friend bool operator==(const CaptionRow&, const CaptionRow&) = default;
};

std::string format_captions(std::span<const CaptionRow> rows);
std::vector<CaptionRow> parse_captions(std::string_view text);

void write_captions(const std::filesystem::path& path, std::span<const CaptionRow> rows);
std::vector<CaptionRow> read_captions(const std::filesystem::path& path);

}  // namespace neurocap::data
