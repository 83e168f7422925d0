#include "neurocap/text/vocabulary.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "neurocap/error.hpp"
#include "neurocap/hash.hpp"
#include "neurocap/text/tokenize.hpp"

namespace neurocap::text {

Vocabulary::Vocabulary()
    : Vocabulary(from_tokens({std::string(kPadToken), std::string(kStartToken),
                              std::string(kEndToken), std::string(kUnkToken)})) {}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
    const std::string_view specials[] = {kPadToken, kStartToken, kEndToken, kUnkToken};
    if (tokens.size() < kSpecialCount) {
        throw DataError("vocabulary: fewer than the four special tokens");
    }
    for (std::size_t k = 0; k < kSpecialCount; ++k) {
        if (tokens[k] != specials[k]) {
            throw DataError("vocabulary: index " + std::to_string(k) + " must hold " +
                            std::string(specials[k]) + ", found '" + tokens[k] + "'");
        }
    }
    Vocabulary v{Private{}};
    v.tokens_ = std::move(tokens);
    v.index_.reserve(v.tokens_.size());
    for (std::size_t k = 0; k < v.tokens_.size(); ++k) {
        if (v.tokens_[k].empty()) throw DataError("vocabulary: empty token at index " + std::to_string(k));
        if (!v.index_.emplace(v.tokens_[k], static_cast<int>(k)).second) {
            throw DataError("vocabulary: duplicate token '" + v.tokens_[k] + "'");
        }
    }
    return v;
}

std::optional<int> Vocabulary::find(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int Vocabulary::index_or_unk(std::string_view token) const { return find(token).value_or(kUnk); }

const std::string& Vocabulary::token(int index) const {
    if (index < 0 || static_cast<std::size_t>(index) >= tokens_.size()) {
        throw ArgumentError("vocabulary: index " + std::to_string(index) + " out of range");
    }
    return tokens_[static_cast<std::size_t>(index)];
}

std::uint64_t Vocabulary::hash() const {
    std::uint64_t h = kFnvOffset;
    for (const auto& t : tokens_) {
        h = fnv1a64(t, h);
        h = fnv1a64("\n", h);
    }
    return h;
}

Vocabulary build_vocabulary(std::span<const std::string> corpus, std::size_t min_freq) {
    if (corpus.empty()) throw DataError("build_vocabulary: empty corpus");
    if (min_freq < 1) throw ArgumentError("build_vocabulary: min_freq must be >= 1");
    std::map<std::string, std::size_t> counts;
    for (const auto& caption : corpus) {
        for (auto& tok : tokenize(caption)) ++counts[std::move(tok)];
    }
    std::vector<std::pair<std::string, std::size_t>> kept;
    for (const auto& [tok, n] : counts) {
        // A corpus token spelled like a special would collide with index 0-3.
        if (n >= min_freq && tok != kPadToken && tok != kStartToken && tok != kEndToken &&
            tok != kUnkToken) {
            kept.emplace_back(tok, n);
        }
    }
    std::stable_sort(kept.begin(), kept.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<std::string> tokens = {std::string(kPadToken), std::string(kStartToken),
                                       std::string(kEndToken), std::string(kUnkToken)};
    for (auto& [tok, n] : kept) tokens.push_back(std::move(tok));
    return Vocabulary::from_tokens(std::move(tokens));
}

std::vector<int> encode(const Vocabulary& vocab, std::string_view text) {
    std::vector<int> out{kStart};
    for (const auto& tok : tokenize(text)) out.push_back(vocab.index_or_unk(tok));
    out.push_back(kEnd);
    return out;
}

std::string decode(const Vocabulary& vocab, std::span<const int> indices) {
    std::string out;
    for (int idx : indices) {
        const std::string& tok = vocab.token(idx);
        if (idx == kEnd) break;
        if (idx == kPad || idx == kStart) continue;
        if (!out.empty()) out.push_back(' ');
        out += tok;
    }
    return out;
}

void save_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write vocabulary: " + path.string());
    for (const auto& t : vocab.tokens()) out << t << '\n';
    if (!out) throw DataError("write failed: " + path.string());
}

Vocabulary load_vocabulary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read vocabulary: " + path.string());
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        tokens.push_back(line);
    }
    return Vocabulary::from_tokens(std::move(tokens));
}

CaptionRecord make_caption_record(const Vocabulary& vocab, std::string stimulus_id,
                                  std::string subject_id, std::string raw) {
    CaptionRecord r{std::move(stimulus_id), std::move(subject_id), std::move(raw), {}};
    r.tokens = encode(vocab, r.raw);
    return r;
}

void validate_sequence(const Vocabulary& vocab, std::span<const int> tokens) {
    if (tokens.size() < 2 || tokens.front() != kStart || tokens.back() != kEnd) {
        throw ArgumentError("token sequence must begin with <start> and end with <end>");
    }
    for (std::size_t k = 0; k < tokens.size(); ++k) {
        const int t = tokens[k];
        if (t < 0 || static_cast<std::size_t>(t) >= vocab.size()) {
            throw ArgumentError("token index " + std::to_string(t) + " out of range");
        }
        if (t == kPad) throw ArgumentError("<pad> inside token sequence");
        if (k > 0 && t == kStart) throw ArgumentError("<start> inside token sequence");
        if (k + 1 < tokens.size() && t == kEnd) throw ArgumentError("<end> before end of sequence");
    }
}

}  // namespace neurocap::text
