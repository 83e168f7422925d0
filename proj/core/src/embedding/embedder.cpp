#include "neurocap/embedding/embedder.hpp"

#include "neurocap/embedding/store.hpp"
#include "neurocap/error.hpp"
#include "neurocap/hash.hpp"
#include "neurocap/random.hpp"
#include "neurocap/text/tokenize.hpp"

namespace neurocap::embedding {

HashBagEmbedder::HashBagEmbedder(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
    if (dim == 0) throw ArgumentError("HashBagEmbedder: dim must be positive");
}

Vector HashBagEmbedder::token_vector(std::string_view token) const {
    Rng rng(mix_seed(fnv1a64(token) ^ mix_seed(seed_)));
    Vector v(static_cast<Eigen::Index>(dim_));
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = rng.normal();
    return v / v.norm();
}

Vector HashBagEmbedder::embed(std::string_view text) const {
    const auto tokens = text::tokenize(text);
    if (tokens.empty()) throw ArgumentError("HashBagEmbedder: text has no tokens");
    Vector sum = Vector::Zero(static_cast<Eigen::Index>(dim_));
    for (const auto& tok : tokens) sum += token_vector(tok);
    const double n = sum.norm();
    if (n == 0.0) throw NumericError("HashBagEmbedder: token vectors cancel exactly");
    return sum / n;
}

FileLookupEmbedder::FileLookupEmbedder(std::size_t dim) : dim_(dim) {}

FileLookupEmbedder::FileLookupEmbedder(const EmbeddingStore& store) : dim_(store.dim()) {
    for (const auto& r : store.records()) table_.emplace(r.id, r.vector);
}

void FileLookupEmbedder::insert(std::string text, Vector vector) {
    require_dim(static_cast<std::size_t>(vector.size()), dim_, "FileLookupEmbedder::insert");
    table_.insert_or_assign(std::move(text), std::move(vector));
}

Vector FileLookupEmbedder::embed(std::string_view text) const {
    auto it = table_.find(std::string(text));
    if (it == table_.end()) throw DataError("no embedding for text: '" + std::string(text) + "'");
    return it->second;
}

}  // namespace neurocap::embedding
