#include "neurocap/tensor.hpp"

#include <cmath>
#include <string>

#include "neurocap/error.hpp"

namespace neurocap {

bool all_finite(std::span<const double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void require_finite(std::span<const double> values, std::string_view what) {
    if (!all_finite(values)) {
        throw NumericError(std::string(what) + ": non-finite value");
    }
}

void require_dim(std::size_t got, std::size_t expected, std::string_view what) {
    if (got != expected) {
        throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(expected) +
                             ", got " + std::to_string(got));
    }
}

}  // namespace neurocap
