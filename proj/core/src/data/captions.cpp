#include "neurocap/data/captions.hpp"

#include "neurocap/data/atomic_file.hpp"
#include "neurocap/error.hpp"

namespace neurocap::data {

namespace {

void check_field(const std::string& s, std::string_view what) {
    if (s.find_first_of("\t\n\r") != std::string::npos) {
        throw DataError(std::string(what) + " contains a tab or newline: '" + s + "'");
    }
}

}  // namespace

std::string format_captions(std::span<const CaptionRow> rows) {
    std::string out;
    for (const auto& r : rows) {
        check_field(r.stimulus_id, "stimulus id");
        check_field(r.subject_id, "subject id");
        check_field(r.caption, "caption");
        if (r.stimulus_id.empty()) throw DataError("caption row with empty stimulus id");
        out += r.stimulus_id + '\t' + r.subject_id + '\t' + r.caption + '\n';
    }
    return out;
}

std::vector<CaptionRow> parse_captions(std::string_view text) {
    std::vector<CaptionRow> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        const auto t1 = line.find('\t');
        const auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string_view::npos || line.find('\t', t2 + 1) != std::string_view::npos) {
            throw DataError("captions line " + std::to_string(line_no) +
                            ": expected stimulus_id<TAB>subject_id<TAB>caption");
        }
        CaptionRow row{std::string(line.substr(0, t1)), std::string(line.substr(t1 + 1, t2 - t1 - 1)),
                       std::string(line.substr(t2 + 1))};
        if (row.stimulus_id.empty()) {
            throw DataError("captions line " + std::to_string(line_no) + ": empty stimulus id");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_captions(const std::filesystem::path& path, std::span<const CaptionRow> rows) {
    write_text_atomic(path, format_captions(rows));
}

std::vector<CaptionRow> read_captions(const std::filesystem::path& path) {
    const auto bytes = read_bytes(path);
    try {
        return parse_captions({reinterpret_cast<const char*>(bytes.data()), bytes.size()});
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

}  // namespace neurocap::data
