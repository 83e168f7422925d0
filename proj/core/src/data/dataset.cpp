#include "neurocap/data/dataset.hpp"

#include <unordered_set>

#include "neurocap/data/atomic_file.hpp"
#include "neurocap/data/vector_file.hpp"
#include "neurocap/error.hpp"

namespace neurocap::data {

const rse::ResponseVector& Dataset::response(std::string_view stimulus_id) const {
    auto it = response_index.find(std::string(stimulus_id));
    if (it == response_index.end()) {
        throw DataError("no response for stimulus '" + std::string(stimulus_id) + "'");
    }
    return responses[it->second];
}

const Vector& Dataset::caption_embedding(std::string_view caption) const {
    const auto* rec = embeddings.find(caption);
    if (rec == nullptr) throw DataError("no embedding for caption '" + std::string(caption) + "'");
    return rec->vector;
}

const std::vector<std::string>& Dataset::ids(Split split) const {
    return split == Split::train ? manifest.train : manifest.test;
}

std::vector<const CaptionRow*> Dataset::captions_in(Split split) const {
    const auto& wanted = ids(split);
    const std::unordered_set<std::string_view> set(wanted.begin(), wanted.end());
    std::vector<const CaptionRow*> out;
    for (const auto& row : captions) {
        if (set.contains(row.stimulus_id)) out.push_back(&row);
    }
    return out;
}

std::string Dataset::label(std::string_view stimulus_id) const {
    auto it = manifest.labels.find(std::string(stimulus_id));
    return it == manifest.labels.end() ? std::string() : it->second;
}

std::unique_ptr<embedding::Embedder> Dataset::sentence_embedder() const {
    if (manifest.sentence_embedder) {
        const auto& spec = *manifest.sentence_embedder;
        if (spec.kind != "hashbag") throw DataError("unknown sentence embedder '" + spec.kind + "'");
        return std::make_unique<embedding::HashBagEmbedder>(spec.dim, spec.seed);
    }
    return std::make_unique<embedding::FileLookupEmbedder>(embeddings);
}

namespace {

void verify_checksum(const DatasetManifest& m, const std::string& role,
                     const std::filesystem::path& path) {
    auto it = m.checksums.find(role);
    if (it == m.checksums.end()) return;
    const std::string actual = file_checksum(path);
    if (actual != it->second) {
        throw DataError("checksum mismatch for " + role + " file " + path.string() + ": manifest " +
                        it->second + ", file " + actual);
    }
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& manifest_path) {
    Dataset ds;
    ds.manifest = read_manifest(manifest_path);
    ds.root = manifest_path.parent_path();
    const auto& m = ds.manifest;
    const auto resp_path = ds.root / m.responses;
    const auto emb_path = ds.root / m.embeddings;
    const auto cap_path = ds.root / m.captions;
    verify_checksum(m, "responses", resp_path);
    verify_checksum(m, "embeddings", emb_path);
    verify_checksum(m, "captions", cap_path);

    auto resp = read_vector_file(resp_path, VectorFileKind::responses);
    ds.response_dim = resp.dim;
    for (auto& r : resp.records) {
        ds.response_index.emplace(r.id, ds.responses.size());
        ds.responses.push_back({std::move(r.id), m.subject, std::move(r.values)});
    }

    auto emb = read_vector_file(emb_path, VectorFileKind::embeddings);
    ds.embeddings = embedding::EmbeddingStore(emb.dim);
    for (auto& r : emb.records) ds.embeddings.add(std::move(r.id), std::move(r.values));

    ds.captions = read_captions(cap_path);

    if (m.synthetic) {
        if (m.synthetic->response_dim != ds.response_dim || m.synthetic->embedding_dim != emb.dim) {
            throw DimensionError("dimension mismatch: manifest declares F=" +
                                 std::to_string(m.synthetic->response_dim) + ", D=" +
                                 std::to_string(m.synthetic->embedding_dim) + " but files hold F=" +
                                 std::to_string(ds.response_dim) + ", D=" + std::to_string(emb.dim));
        }
    }

    std::unordered_set<std::string> in_split;
    for (const auto* part : {&m.train, &m.test}) {
        for (const auto& id : *part) {
            if (!ds.response_index.contains(id)) {
                throw DataError("manifest split lists stimulus '" + id + "' absent from responses");
            }
            if (!in_split.insert(id).second) {
                throw DataError("stimulus '" + id + "' appears more than once in the split");
            }
        }
    }
    for (const auto& r : ds.responses) {
        if (!in_split.contains(r.stimulus_id)) {
            throw DataError("stimulus '" + r.stimulus_id + "' is not assigned to train or test");
        }
    }
    for (const auto& row : ds.captions) {
        if (!ds.response_index.contains(row.stimulus_id)) {
            throw DataError("caption for stimulus '" + row.stimulus_id + "' has no response");
        }
        if (ds.embeddings.find(row.caption) == nullptr) {
            throw DataError("caption '" + row.caption + "' has no embedding");
        }
    }
    if (m.train.empty()) throw DataError("manifest: empty train split");

    Tensor2 train(static_cast<Eigen::Index>(m.train.size()), static_cast<Eigen::Index>(ds.response_dim));
    for (std::size_t i = 0; i < m.train.size(); ++i) {
        train.row(static_cast<Eigen::Index>(i)) = ds.response(m.train[i]).values.transpose();
    }
    ds.train_stats = rse::Normalizer::fit(train);
    return ds;
}

}  // namespace neurocap::data
