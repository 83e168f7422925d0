#include "neurocap/embedding/store.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "neurocap/error.hpp"

namespace neurocap::embedding {

EmbeddingStore::EmbeddingStore(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw ArgumentError("EmbeddingStore: dim must be positive");
}

void EmbeddingStore::add(std::string id, Vector vector, std::string label) {
    require_dim(static_cast<std::size_t>(vector.size()), dim_, "EmbeddingStore::add");
    if (!all_finite(as_span(vector))) throw DataError("embedding '" + id + "' is not finite");
    const double n = vector.norm();
    if (n == 0.0) throw DataError("embedding '" + id + "' has zero norm");
    if (index_.contains(id)) throw DataError("duplicate embedding id '" + id + "'");
    index_.emplace(id, records_.size());
    records_.push_back({std::move(id), std::move(vector), std::move(label)});
    norms_.push_back(n);
}

const EmbeddingRecord* EmbeddingStore::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &records_[it->second];
}

std::vector<Neighbor> nearest_neighbor(const EmbeddingStore& store, const Vector& query,
                                       std::size_t k) {
    if (store.empty()) throw DataError("nearest_neighbor: empty store");
    if (k == 0) throw ArgumentError("nearest_neighbor: k must be >= 1");
    require_dim(static_cast<std::size_t>(query.size()), store.dim(), "nearest_neighbor query");
    const double qn = query.norm();
    if (qn == 0.0) throw ArgumentError("nearest_neighbor: zero-norm query");

    const auto& recs = store.records();
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        scored.emplace_back(recs[i].vector.dot(query) / (store.norm(i) * qn), i);
    }
    const std::size_t take = std::min(k, recs.size());
    auto better = [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return recs[a.second].id < recs[b.second].id;
    };
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take),
                      scored.end(), better);
    std::vector<Neighbor> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        out.push_back({recs[scored[i].second].id, std::clamp(scored[i].first, -1.0, 1.0)});
    }
    return out;
}

std::string reverse_embed_nn(const EmbeddingStore& store, const Vector& query) {
    return nearest_neighbor(store, query, 1).front().id;
}

namespace {

Vector parse_values(const std::string& field, std::size_t dim, std::size_t line_no) {
    Vector v(static_cast<Eigen::Index>(dim));
    std::size_t count = 0;
    const char* p = field.c_str();
    const char* end = p + field.size();
    while (p < end) {
        char* next = nullptr;
        errno = 0;
        const double x = std::strtod(p, &next);
        if (next == p || errno == ERANGE) {
            throw DataError("line " + std::to_string(line_no) + ": bad number");
        }
        if (count == dim) {
            throw DataError("line " + std::to_string(line_no) + ": more than " +
                            std::to_string(dim) + " values");
        }
        v(static_cast<Eigen::Index>(count++)) = x;
        p = next;
        if (p < end) {
            if (*p != ',') throw DataError("line " + std::to_string(line_no) + ": expected ','");
            ++p;
        }
    }
    if (count != dim) {
        throw DataError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                        " values, got " + std::to_string(count));
    }
    return v;
}

}  // namespace

EmbeddingStore read_embedding_tsv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read embeddings: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError("embedding TSV is empty: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    constexpr std::string_view prefix = "#dim=";
    if (!line.starts_with(prefix)) throw DataError("embedding TSV: missing '#dim=D' header");
    std::size_t dim = 0;
    try {
        dim = std::stoul(line.substr(prefix.size()));
    } catch (const std::exception&) {
        throw DataError("embedding TSV: bad dimension header '" + line + "'");
    }
    if (dim == 0) throw DataError("embedding TSV: dimension must be positive");
    EmbeddingStore store(dim);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto t1 = line.find('\t');
        const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
            throw DataError("line " + std::to_string(line_no) + ": expected 3 tab-separated fields");
        }
        store.add(line.substr(0, t1), parse_values(line.substr(t2 + 1), dim, line_no),
                  line.substr(t1 + 1, t2 - t1 - 1));
    }
    return store;
}

void write_embedding_tsv(const EmbeddingStore& store, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write embeddings: " + path.string());
    out << "#dim=" << store.dim() << '\n' << std::setprecision(17);
    for (const auto& r : store.records()) {
        out << r.id << '\t' << r.label << '\t';
        for (Eigen::Index k = 0; k < r.vector.size(); ++k) {
            if (k > 0) out << ',';
            out << r.vector(k);
        }
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path.string());
}

}  // namespace neurocap::embedding
