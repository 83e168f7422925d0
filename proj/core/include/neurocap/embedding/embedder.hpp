#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>

#include "neurocap/tensor.hpp"

namespace neurocap::embedding {

class EmbeddingStore;

/// Maps caption text to a point in a fixed-dimensional embedding space.
/// Implementations are deterministic and safe to call concurrently.
class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::size_t dim() const = 0;
    virtual Vector embed(std::string_view text) const = 0;
};

/// Sum of seeded pseudo-random unit vectors, one per token (with
/// multiplicity), normalized to unit length. Texts sharing tokens land close
/// together; disjoint texts are nearly orthogonal for large dim.
class HashBagEmbedder final : public Embedder {
public:
    HashBagEmbedder(std::size_t dim, std::uint64_t seed);

    std::size_t dim() const override { return dim_; }
    std::uint64_t seed() const { return seed_; }

    /// Throws ArgumentError when `text` has no tokens.
    Vector embed(std::string_view text) const override;

    /// Unit direction assigned to one token.
    Vector token_vector(std::string_view token) const;

private:
    std::size_t dim_;
    std::uint64_t seed_;
};

/// Exact-match lookup into a table of precomputed embeddings.
class FileLookupEmbedder final : public Embedder {
public:
    explicit FileLookupEmbedder(std::size_t dim);
    /// Uses each record's id as the lookup text.
    explicit FileLookupEmbedder(const EmbeddingStore& store);

    void insert(std::string text, Vector vector);

    std::size_t dim() const override { return dim_; }
    /// Throws DataError for text missing from the table.
    Vector embed(std::string_view text) const override;

private:
    std::size_t dim_;
    std::unordered_map<std::string, Vector> table_;
};

}  // namespace neurocap::embedding
