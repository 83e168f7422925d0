#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace neurocap::metrics {

struct MeteorParams {
    double alpha = 0.9;   // Fmean = PR / (alpha P + (1 - alpha) R) = 10PR / (R + 9P)
    double gamma = 0.5;   // maximum fragmentation penalty
    double beta = 3.0;    // penalty exponent
};

struct MeteorStats {
    std::size_t matches = 0;
    std::size_t chunks = 0;
    std::size_t hypothesis_len = 0;
    std::size_t reference_len = 0;
    bool exhaustive = true;  // false when the greedy fallback aligned the pair
    double precision = 0.0;
    double recall = 0.0;
    double fmean = 0.0;
    double penalty = 0.0;
    double score = 0.0;
};

/// Pairs longer than this use a greedy alignment instead of exhaustive search.
inline constexpr std::size_t kExhaustiveAlignmentLimit = 20;

/// Exact-unigram METEOR on tokenized text: maximum one-to-one matching, and
/// among maximum matchings the one with fewest chunks.
MeteorStats meteor_stats(std::span<const std::string> reference,
                         std::span<const std::string> hypothesis, const MeteorParams& params = {});

double meteor(std::string_view reference, std::string_view hypothesis,
              const MeteorParams& params = {});

}  // namespace neurocap::metrics
