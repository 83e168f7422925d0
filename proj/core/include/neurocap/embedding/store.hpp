#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "neurocap/tensor.hpp"

namespace neurocap::embedding {

struct EmbeddingRecord {
    std::string id;
    Vector vector;
    std::string label;
};

/// Set of uniquely identified embeddings of one dimension. Read-only once
/// built; queries may run concurrently.
class EmbeddingStore {
public:
    explicit EmbeddingStore(std::size_t dim);

    /// Throws DataError for duplicate ids, zero-norm or non-finite vectors and
    /// DimensionError for a wrong length.
    void add(std::string id, Vector vector, std::string label = {});

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    const std::vector<EmbeddingRecord>& records() const { return records_; }
    const EmbeddingRecord* find(std::string_view id) const;
    double norm(std::size_t i) const { return norms_[i]; }

private:
    std::size_t dim_;
    std::vector<EmbeddingRecord> records_;
    std::vector<double> norms_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct Neighbor {
    std::string id;
    double similarity = 0.0;
};

/// Top-k records by cosine similarity, descending; equal similarities are
/// ordered by ascending id. Returns min(k, size) results.
std::vector<Neighbor> nearest_neighbor(const EmbeddingStore& store, const Vector& query,
                                       std::size_t k);

/// Id (caption text) of the single nearest record.
std::string reverse_embed_nn(const EmbeddingStore& store, const Vector& query);

/// TSV with a `#dim=D` header line and records `id<TAB>label<TAB>v1,...,vD`.
EmbeddingStore read_embedding_tsv(const std::filesystem::path& path);
void write_embedding_tsv(const EmbeddingStore& store, const std::filesystem::path& path);

}  // namespace neurocap::embedding
