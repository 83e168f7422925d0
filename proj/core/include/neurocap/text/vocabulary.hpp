#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace neurocap::text {

inline constexpr int kPad = 0;
inline constexpr int kStart = 1;
inline constexpr int kEnd = 2;
inline constexpr int kUnk = 3;
inline constexpr std::size_t kSpecialCount = 4;

inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kStartToken = "<start>";
inline constexpr std::string_view kEndToken = "<end>";
inline constexpr std::string_view kUnkToken = "<unk>";

/// Bidirectional token/index map; indices 0-3 are the special tokens.
class Vocabulary {
public:
    Vocabulary();

    /// Validates that the specials occupy 0-3 and that no token repeats.
    static Vocabulary from_tokens(std::vector<std::string> tokens);

    std::size_t size() const { return tokens_.size(); }
    const std::vector<std::string>& tokens() const { return tokens_; }

    std::optional<int> find(std::string_view token) const;
    int index_or_unk(std::string_view token) const;
    const std::string& token(int index) const;

    /// FNV-1a over the newline-joined token list; pairs checkpoints with vocabularies.
    std::uint64_t hash() const;

    friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.tokens_ == b.tokens_; }

private:
    struct Private {};
    explicit Vocabulary(Private) {}

    std::vector<std::string> tokens_;
    std::unordered_map<std::string, int> index_;
};

/// Tokens with corpus frequency >= min_freq, by descending frequency then
/// alphabetically, after the four specials.
Vocabulary build_vocabulary(std::span<const std::string> corpus, std::size_t min_freq = 2);

/// <start>, one index per token (<unk> when absent), <end>.
std::vector<int> encode(const Vocabulary& vocab, std::string_view text);

/// Space-joined tokens up to the first <end>; <pad> and <start> are skipped,
/// <unk> is rendered literally.
std::string decode(const Vocabulary& vocab, std::span<const int> indices);

void save_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path);
Vocabulary load_vocabulary(const std::filesystem::path& path);

/// One caption of one stimulus with its encoded index sequence.
struct CaptionRecord {
    std::string stimulus_id;
    std::string subject_id;
    std::string raw;
    std::vector<int> tokens;
};

CaptionRecord make_caption_record(const Vocabulary& vocab, std::string stimulus_id,
                                  std::string subject_id, std::string raw);

/// Throws unless tokens are framed by <start>/<end>, in range and pad-free.
void validate_sequence(const Vocabulary& vocab, std::span<const int> tokens);

}  // namespace neurocap::text
