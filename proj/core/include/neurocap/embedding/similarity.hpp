#pragma once

#include "neurocap/tensor.hpp"

namespace neurocap::embedding {

/// (a . b) / (|a| |b|). Throws DimensionError on length mismatch and
/// ArgumentError when either vector has zero norm.
double cosine_similarity(const Vector& a, const Vector& b);

}  // namespace neurocap::embedding
