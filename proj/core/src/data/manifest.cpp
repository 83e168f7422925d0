#include "neurocap/data/manifest.hpp"

#include <nlohmann/json.hpp>

#include "neurocap/data/atomic_file.hpp"
#include "neurocap/error.hpp"

namespace neurocap::data {

using nlohmann::json;

std::string manifest_to_json(const DatasetManifest& m) {
    // ordered_json keeps key order stable so rewritten manifests are byte-identical.
    nlohmann::ordered_json j;
    j["format"] = "neurocap-manifest";
    j["version"] = kManifestVersion;
    j["subject"] = m.subject;
    j["files"] = {{"responses", m.responses}, {"embeddings", m.embeddings}, {"captions", m.captions}};
    j["checksums"] = m.checksums;
    j["split"] = {{"train", m.train}, {"test", m.test}};
    j["labels"] = m.labels;
    if (m.sentence_embedder) {
        j["sentence_embedder"] = {{"kind", m.sentence_embedder->kind},
                                  {"dim", m.sentence_embedder->dim},
                                  {"seed", m.sentence_embedder->seed}};
    }
    if (m.synthetic) {
        const auto& s = *m.synthetic;
        j["synthetic"] = {{"seed", s.seed},
                          {"noise", s.noise},
                          {"concepts", s.concepts},
                          {"per_concept", s.per_concept},
                          {"embedding_dim", s.embedding_dim},
                          {"response_dim", s.response_dim}};
    }
    return j.dump(2) + "\n";
}

DatasetManifest manifest_from_json(std::string_view text) {
    try {
        const json j = json::parse(text);
        if (j.at("format").get<std::string>() != "neurocap-manifest") {
            throw DataError("manifest: unknown format");
        }
        if (j.at("version").get<std::uint32_t>() != kManifestVersion) {
            throw DataError("manifest: unsupported version");
        }
        DatasetManifest m;
        m.subject = j.value("subject", std::string("subj01"));
        const auto& files = j.at("files");
        m.responses = files.at("responses").get<std::string>();
        m.embeddings = files.at("embeddings").get<std::string>();
        m.captions = files.at("captions").get<std::string>();
        if (j.contains("checksums")) m.checksums = j.at("checksums").get<std::map<std::string, std::string>>();
        m.train = j.at("split").at("train").get<std::vector<std::string>>();
        m.test = j.at("split").at("test").get<std::vector<std::string>>();
        if (j.contains("labels")) m.labels = j.at("labels").get<std::map<std::string, std::string>>();
        if (j.contains("sentence_embedder")) {
            const auto& e = j.at("sentence_embedder");
            m.sentence_embedder = SentenceEmbedderSpec{e.at("kind").get<std::string>(),
                                                       e.at("dim").get<std::size_t>(),
                                                       e.at("seed").get<std::uint64_t>()};
        }
        if (j.contains("synthetic")) {
            const auto& s = j.at("synthetic");
            m.synthetic = SyntheticMetadata{s.at("seed").get<std::uint64_t>(),
                                            s.at("noise").get<double>(),
                                            s.at("concepts").get<std::size_t>(),
                                            s.at("per_concept").get<std::size_t>(),
                                            s.at("embedding_dim").get<std::size_t>(),
                                            s.at("response_dim").get<std::size_t>()};
        }
        return m;
    } catch (const json::exception& e) {
        throw DataError(std::string("manifest: ") + e.what());
    }
}

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
    write_text_atomic(path, manifest_to_json(manifest));
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
    const auto bytes = read_bytes(path);
    try {
        return manifest_from_json({reinterpret_cast<const char*>(bytes.data()), bytes.size()});
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

}  // namespace neurocap::data
