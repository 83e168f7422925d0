#include "neurocap/metrics/meteor.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <unordered_map>

#include "neurocap/text/tokenize.hpp"

namespace neurocap::metrics {

namespace {

constexpr int kUnmatched = -1;

struct AlignmentProblem {
    std::vector<int> hyp_word;                  // word id per hypothesis position
    std::vector<std::vector<int>> ref_positions;  // reference positions per word id
    std::vector<int> ref_word;                  // word id per reference position
    std::vector<int> quota;                     // matches required per word id
    std::vector<std::vector<int>> hyp_remaining;  // occurrences of word at positions >= i
};

AlignmentProblem build_problem(std::span<const std::string> ref, std::span<const std::string> hyp,
                               std::size_t& matches) {
    std::unordered_map<std::string_view, int> ids;
    AlignmentProblem p;
    auto id_of = [&](std::string_view w) {
        auto [it, inserted] = ids.emplace(w, static_cast<int>(ids.size()));
        if (inserted) p.ref_positions.emplace_back();
        return it->second;
    };
    for (std::size_t j = 0; j < ref.size(); ++j) {
        const int w = id_of(ref[j]);
        p.ref_word.push_back(w);
        p.ref_positions[static_cast<std::size_t>(w)].push_back(static_cast<int>(j));
    }
    for (const auto& w : hyp) p.hyp_word.push_back(id_of(w));
    const std::size_t words = p.ref_positions.size();
    std::vector<int> hyp_count(words, 0);
    for (int w : p.hyp_word) ++hyp_count[static_cast<std::size_t>(w)];
    p.quota.resize(words);
    matches = 0;
    for (std::size_t w = 0; w < words; ++w) {
        p.quota[w] = std::min(hyp_count[w], static_cast<int>(p.ref_positions[w].size()));
        matches += static_cast<std::size_t>(p.quota[w]);
    }
    p.hyp_remaining.assign(hyp.size() + 1, std::vector<int>(words, 0));
    for (std::size_t i = hyp.size(); i-- > 0;) {
        p.hyp_remaining[i] = p.hyp_remaining[i + 1];
        ++p.hyp_remaining[i][static_cast<std::size_t>(p.hyp_word[i])];
    }
    return p;
}

// Depth-first search over hypothesis positions; state is (position, ref
// position matched by the previous hypothesis word, used-reference mask).
// The used mask determines how many matches each word already has.
class ExhaustiveAligner {
public:
    explicit ExhaustiveAligner(const AlignmentProblem& p) : p_(p) {}

    std::size_t min_chunks() { return solve(0, kUnmatched, 0); }

private:
    std::size_t used_for(int word, std::uint32_t mask) const {
        std::size_t n = 0;
        for (int j : p_.ref_positions[static_cast<std::size_t>(word)]) n += (mask >> j) & 1U;
        return n;
    }

    std::size_t solve(std::size_t i, int prev, std::uint32_t mask) {
        if (i == p_.hyp_word.size()) return 0;
        const std::uint64_t key = (static_cast<std::uint64_t>(mask) << 32) |
                                  (static_cast<std::uint64_t>(i) << 8) |
                                  static_cast<std::uint64_t>(prev + 1);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        const int w = p_.hyp_word[i];
        const auto wi = static_cast<std::size_t>(w);
        const auto needed = static_cast<std::size_t>(p_.quota[wi]) - used_for(w, mask);
        std::size_t best = std::numeric_limits<std::size_t>::max();
        // Leaving this position unmatched is allowed only if later occurrences
        // of the word can still fill the quota.
        if (static_cast<std::size_t>(p_.hyp_remaining[i + 1][wi]) >= needed) {
            best = solve(i + 1, kUnmatched, mask);
        }
        if (needed > 0) {
            for (int j : p_.ref_positions[wi]) {
                if ((mask >> j) & 1U) continue;
                const std::size_t opens = (prev != kUnmatched && j == prev + 1) ? 0 : 1;
                const std::size_t total = opens + solve(i + 1, j, mask | (1U << j));
                best = std::min(best, total);
            }
        }
        memo_.emplace(key, best);
        return best;
    }

    const AlignmentProblem& p_;
    std::unordered_map<std::uint64_t, std::size_t> memo_;
};

// Left-to-right: each hypothesis word takes the reference slot continuing
// the current chunk if free, otherwise its earliest free occurrence.
std::size_t greedy_chunks(const AlignmentProblem& p, std::size_t ref_len) {
    std::vector<bool> used(ref_len, false);
    std::vector<int> matched(p.quota.size(), 0);
    int prev = kUnmatched;
    std::size_t chunks = 0;
    for (std::size_t i = 0; i < p.hyp_word.size(); ++i) {
        const auto w = static_cast<std::size_t>(p.hyp_word[i]);
        int pick = kUnmatched;
        if (matched[w] < p.quota[w]) {
            if (prev != kUnmatched && static_cast<std::size_t>(prev + 1) < ref_len &&
                !used[static_cast<std::size_t>(prev + 1)] &&
                p.ref_word[static_cast<std::size_t>(prev + 1)] == p.hyp_word[i]) {
                pick = prev + 1;
            } else {
                for (int j : p.ref_positions[w]) {
                    if (!used[static_cast<std::size_t>(j)]) {
                        pick = j;
                        break;
                    }
                }
            }
        }
        if (pick != kUnmatched) {
            if (prev == kUnmatched || pick != prev + 1) ++chunks;
            used[static_cast<std::size_t>(pick)] = true;
            ++matched[w];
        }
        prev = pick;
    }
    return chunks;
}

}  // namespace

MeteorStats meteor_stats(std::span<const std::string> reference,
                         std::span<const std::string> hypothesis, const MeteorParams& params) {
    MeteorStats s;
    s.reference_len = reference.size();
    s.hypothesis_len = hypothesis.size();
    if (reference.empty() || hypothesis.empty()) return s;

    const AlignmentProblem p = build_problem(reference, hypothesis, s.matches);
    if (s.matches == 0) return s;

    s.exhaustive = reference.size() <= kExhaustiveAlignmentLimit &&
                   hypothesis.size() <= kExhaustiveAlignmentLimit;
    s.chunks = s.exhaustive ? ExhaustiveAligner(p).min_chunks() : greedy_chunks(p, reference.size());

    const double m = static_cast<double>(s.matches);
    s.precision = m / static_cast<double>(s.hypothesis_len);
    s.recall = m / static_cast<double>(s.reference_len);
    s.fmean = s.precision * s.recall /
              (params.alpha * s.precision + (1.0 - params.alpha) * s.recall);
    s.penalty = params.gamma * std::pow(static_cast<double>(s.chunks) / m, params.beta);
    s.score = s.fmean * (1.0 - s.penalty);
    return s;
}

double meteor(std::string_view reference, std::string_view hypothesis, const MeteorParams& params) {
    const auto ref = text::tokenize(reference);
    const auto hyp = text::tokenize(hypothesis);
    return meteor_stats(ref, hyp, params).score;
}

}  // namespace neurocap::metrics
