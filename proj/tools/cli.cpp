#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "neurocap/data/atomic_file.hpp"
#include "neurocap/data/captions.hpp"
#include "neurocap/data/checkpoint.hpp"
#include "neurocap/data/dataset.hpp"
#include "neurocap/data/manifest.hpp"
#include "neurocap/data/synthetic.hpp"
#include "neurocap/data/vector_file.hpp"
#include "neurocap/embedding/store.hpp"
#include "neurocap/error.hpp"
#include "neurocap/hash.hpp"
#include "neurocap/metrics/ablation.hpp"
#include "neurocap/metrics/report.hpp"
#include "neurocap/text/vocabulary.hpp"
#include "neurocap/viz/pca.hpp"
#include "neurocap/viz/scatter.hpp"
#include "neurocap/viz/silhouette.hpp"
#include "neurocap/viz/tsne.hpp"

namespace neurocap::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string g6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Every run starts with the same header so its outputs can be traced back to
// the exact configuration that produced them.
void log_header(std::ostream& err, const std::string& command, const ordered_json& config) {
    const auto seed = config.contains("seed") ? config["seed"].dump() : std::string("none");
    err << "# neurocap " << kVersion << " " << command << "\n"
        << "# seed=" << seed << " config_hash=" << hex64(fnv1a64(config.dump())) << "\n"
        << "# formats: manifest=" << data::kManifestVersion << " vectors=" << data::kVectorFileVersion
        << " checkpoint=" << data::kCheckpointVersion << "\n"
        << "# config=" << config.dump() << "\n";
}

std::vector<std::size_t> parse_widths(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            const auto v = std::stoull(item, &used);
            if (used != item.size() || v == 0) throw std::invalid_argument(item);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw ArgumentError("bad width '" + item + "' in --hidden");
        }
    }
    return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ArgumentError("bad seed '" + item + "' in --seeds");
        }
    }
    return out;
}

data::Split parse_split(const std::string& s) {
    if (s == "train") return data::Split::train;
    if (s == "test") return data::Split::test;
    throw ArgumentError("--split must be train or test");
}

std::string dataset_fingerprint(const data::Dataset& ds) {
    std::string joined;
    for (const auto& [role, sum] : ds.manifest.checksums) joined += role + "=" + sum + ";";
    return hex64(fnv1a64(joined));
}

std::string file_fingerprint(const fs::path& path) { return data::file_checksum(path); }

struct SynthArgs {
    data::SyntheticSpec spec;
    std::uint64_t seed = 0;
    std::string out;
};

int run_synth(const SynthArgs& a, std::ostream& out, std::ostream& err) {
    ordered_json cfg = {{"concepts", a.spec.concepts}, {"per_concept", a.spec.per_concept},
                        {"dim", a.spec.embedding_dim}, {"fdim", a.spec.response_dim},
                        {"noise", a.spec.noise},       {"subject", a.spec.subject},
                        {"seed", a.seed}};
    log_header(err, "synth-gen", cfg);
    auto data = data::generate_synthetic(a.spec, a.seed);
    const auto manifest = data::write_synthetic(data, a.out);
    out << "wrote " << manifest.string() << " (" << data.manifest.train.size() << " train, "
        << data.manifest.test.size() << " test)\n";
    return kSuccess;
}

struct ImportArgs {
    std::string tsv;
    std::string out;
};

int run_import(const ImportArgs& a, std::ostream& out, std::ostream& err) {
    log_header(err, "embed-import", {{"tsv", a.tsv}});
    const auto store = embedding::read_embedding_tsv(a.tsv);
    std::vector<data::VectorRecord> records;
    for (const auto& r : store.records()) records.push_back({r.id, r.vector});
    data::write_vector_file(a.out, data::VectorFileKind::embeddings, store.dim(), records);
    out << "wrote " << records.size() << " embeddings of dim " << store.dim() << " to " << a.out << "\n";
    return kSuccess;
}

struct VocabArgs {
    std::string manifest;
    std::string captions;
    std::size_t min_freq = 2;
    std::string out;
};

int run_vocab(const VocabArgs& a, std::ostream& out, std::ostream& err) {
    if (a.manifest.empty() == a.captions.empty()) throw ArgumentError("give exactly one of --manifest or --captions");
    log_header(err, "vocab-build", {{"min_freq", a.min_freq}});
    std::vector<std::string> corpus;
    if (!a.manifest.empty()) {
        // Only training captions, so test words never shape the vocabulary.
        const auto ds = data::load_dataset(a.manifest);
        for (const auto* row : ds.captions_in(data::Split::train)) corpus.push_back(row->caption);
    } else {
        for (const auto& row : data::read_captions(a.captions)) corpus.push_back(row.caption);
    }
    const auto vocab = text::build_vocabulary(corpus, a.min_freq);
    text::save_vocabulary(vocab, a.out);
    out << "vocabulary of " << vocab.size() << " tokens (hash " << hex64(vocab.hash()) << ") written to " << a.out
        << "\n";
    return kSuccess;
}

struct RseArgs {
    std::string manifest;
    std::string out;
    std::string hidden = "256";
    rse::RseConfig config;
};

int run_train_rse(RseArgs a, std::ostream& out, std::ostream& err) {
    a.config.hidden = parse_widths(a.hidden);
    const auto ds = data::load_dataset(a.manifest);
    ordered_json cfg = {{"dataset", dataset_fingerprint(ds)}, {"hidden", a.config.hidden},
                        {"epochs", a.config.epochs},          {"batch", a.config.batch_size},
                        {"lr", a.config.lr},                  {"patience", a.config.patience},
                        {"seed", a.config.seed}};
    log_header(err, "train-rse", cfg);
    std::vector<rse::RsePair> pairs;
    for (const auto* row : ds.captions_in(data::Split::train)) {
        pairs.push_back({ds.response(row->stimulus_id).values, ds.caption_embedding(row->caption)});
    }
    const auto result = rse::train_rse(pairs, a.config);
    data::save_checkpoint(result.model, a.out);
    out << "trained RSE for " << result.loss_curve.size() << " epochs, final loss "
        << g6(result.loss_curve.back()) << "; checkpoint " << a.out << "\n";
    return kSuccess;
}

struct DecoderArgs {
    std::string manifest;
    std::string vocab;
    std::string out;
    decoder::DecoderConfig config;
};

int run_train_decoder(const DecoderArgs& a, std::ostream& out, std::ostream& err) {
    const auto ds = data::load_dataset(a.manifest);
    const auto vocab = text::load_vocabulary(a.vocab);
    const auto& c = a.config;
    ordered_json cfg = {{"dataset", dataset_fingerprint(ds)}, {"vocab", hex64(vocab.hash())},
                        {"embed_dim", c.embed_dim},            {"hidden_dim", c.hidden_dim},
                        {"max_len", c.max_len},                {"epochs", c.epochs},
                        {"batch", c.batch_size},               {"lr", c.lr},
                        {"patience", c.patience},              {"seed", c.seed}};
    log_header(err, "train-decoder", cfg);
    std::vector<decoder::DecoderPair> pairs;
    for (const auto* row : ds.captions_in(data::Split::train)) {
        pairs.push_back({ds.caption_embedding(row->caption), text::encode(vocab, row->caption)});
    }
    const auto result = decoder::train_decoder(pairs, vocab, c);
    data::save_checkpoint(result.model, a.out);
    out << "trained decoder for " << result.loss_curve.size() << " epochs, final per-token loss "
        << g6(result.loss_curve.back()) << "; checkpoint " << a.out << "\n";
    return kSuccess;
}

struct CaptionArgs {
    std::string rse;
    std::string decoder;
    std::string vocab;
    std::string responses;
    std::string manifest;
    std::string split = "test";
    std::string subject = "subj01";
    std::string out;
};

int run_caption(const CaptionArgs& a, std::ostream& out, std::ostream& err) {
    if (a.responses.empty() == a.manifest.empty()) throw ArgumentError("give exactly one of --responses or --manifest");
    log_header(err, "caption",
               {{"rse", file_fingerprint(a.rse)}, {"decoder", file_fingerprint(a.decoder)}, {"split", a.split}});
    const auto enc = data::load_rse_checkpoint(a.rse);
    std::optional<text::Vocabulary> expected;
    if (!a.vocab.empty()) expected = text::load_vocabulary(a.vocab);
    const auto dec = data::load_decoder_checkpoint(a.decoder, expected ? &*expected : nullptr);

    std::vector<std::pair<std::string, Vector>> inputs;
    std::string subject = a.subject;
    if (!a.responses.empty()) {
        const auto file = data::read_vector_file(a.responses, data::VectorFileKind::responses);
        for (const auto& r : file.records) inputs.emplace_back(r.id, r.values);
    } else {
        const auto ds = data::load_dataset(a.manifest);
        subject = ds.manifest.subject;
        for (const auto& id : ds.ids(parse_split(a.split))) inputs.emplace_back(id, ds.response(id).values);
    }
    std::vector<data::CaptionRow> rows;
    std::size_t truncated = 0;
    for (const auto& [id, response] : inputs) {
        const auto gen = decoder::generate_caption(dec, rse::predict_embedding(enc, response));
        truncated += gen.truncated ? 1 : 0;
        rows.push_back({id, subject, gen.text});
    }
    data::write_captions(a.out, rows);
    out << "wrote " << rows.size() << " captions to " << a.out;
    if (truncated > 0) out << " (" << truncated << " hit max_len)";
    out << "\n";
    return kSuccess;
}

struct EvalArgs {
    std::string manifest;
    std::string rse;
    std::string decoder;
    std::string split = "test";
    std::string out;
};

int run_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
    const auto ds = data::load_dataset(a.manifest);
    // The fingerprint only covers content, never paths, so identical runs in
    // different directories produce identical reports.
    const std::string fingerprint = hex64(fnv1a64(dataset_fingerprint(ds) + file_fingerprint(a.rse) +
                                                  file_fingerprint(a.decoder) + a.split));
    log_header(err, "eval", {{"fingerprint", fingerprint}, {"split", a.split}});
    const auto enc = data::load_rse_checkpoint(a.rse);
    const auto dec = data::load_decoder_checkpoint(a.decoder);
    std::vector<metrics::EvalItem> items;
    for (const auto* row : ds.captions_in(parse_split(a.split))) {
        items.push_back({row->stimulus_id, row->caption, text::encode(dec.vocab, row->caption),
                         rse::predict_embedding(enc, ds.response(row->stimulus_id).values)});
    }
    const auto embedder = ds.sentence_embedder();
    const auto report = metrics::evaluate(dec, items, *embedder, fingerprint);
    metrics::write_eval_report(report, a.out);
    out << "pairs=" << report.records.size() << " meteor=" << g6(report.mean_meteor)
        << " sentence=" << g6(report.mean_sentence) << " perplexity=" << g6(report.perplexity) << "\n";
    return kSuccess;
}

struct AblateArgs {
    std::string manifest;
    std::string seeds = "1,2,3";
    std::string variants = "none,encoder_only,full";
    std::string hidden;
    metrics::AblationConfig config;
    std::string out;
};

int run_ablate(AblateArgs a, std::ostream& out, std::ostream& err) {
    a.config.seeds = parse_seeds(a.seeds);
    a.config.variants.clear();
    std::stringstream vs(a.variants);
    for (std::string v; std::getline(vs, v, ',');) a.config.variants.push_back(metrics::variant_from_string(v));
    if (!a.hidden.empty()) a.config.rse.hidden = parse_widths(a.hidden);
    const auto ds = data::load_dataset(a.manifest);
    const auto& c = a.config;
    ordered_json cfg = {{"dataset", dataset_fingerprint(ds)},
                        {"variants", a.variants},
                        {"seeds", c.seeds},
                        {"rse_hidden", c.rse.hidden},
                        {"rse_epochs", c.rse.epochs},
                        {"rse_lr", c.rse.lr},
                        {"embed_dim", c.decoder.embed_dim},
                        {"hidden_dim", c.decoder.hidden_dim},
                        {"decoder_epochs", c.decoder.epochs},
                        {"decoder_lr", c.decoder.lr},
                        {"min_freq", c.min_token_freq}};
    log_header(err, "ablate", cfg);
    const auto table = metrics::run_ablation(metrics::ablation_data(ds), c);
    metrics::write_ablation_table(table, a.out);
    out << metrics::format_ablation_table(table);
    return kSuccess;
}

struct VizArgs {
    std::string manifest;
    std::string rse;
    std::string method = "tsne";
    std::string space = "predicted";
    std::string split = "test";
    std::string out;
    std::string svg;
    viz::TsneOptions tsne;
};

int run_viz(const VizArgs& a, std::ostream& out, std::ostream& err) {
    const auto method = viz::method_from_string(a.method);
    if (a.space != "predicted" && a.space != "input") throw ArgumentError("--space must be predicted or input");
    if (a.space == "predicted" && a.rse.empty()) throw ArgumentError("--space predicted needs --rse");
    const auto ds = data::load_dataset(a.manifest);
    log_header(err, "viz",
               {{"dataset", dataset_fingerprint(ds)}, {"method", a.method}, {"space", a.space},
                {"split", a.split}, {"perplexity", a.tsne.perplexity}, {"seed", a.tsne.seed}});
    std::vector<std::string> ids;
    if (a.split == "all") {
        for (const auto& r : ds.responses) ids.push_back(r.stimulus_id);
    } else {
        ids = ds.ids(parse_split(a.split));
    }
    Tensor2 x(static_cast<Eigen::Index>(ids.size()), static_cast<Eigen::Index>(ds.response_dim));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        x.row(static_cast<Eigen::Index>(i)) = ds.response(ids[i]).values.transpose();
        labels.push_back(ds.label(ids[i]));
    }
    if (a.space == "predicted") x = rse::predict_embeddings(data::load_rse_checkpoint(a.rse), x);

    viz::ProjectionResult result = method == viz::Method::pca ? viz::pca_project(x, 2, labels).projection
                                                              : viz::tsne_project(x, a.tsne, labels);
    viz::export_scatter(result, a.out);
    if (!a.svg.empty()) viz::export_scatter_svg(result, a.svg);
    out << "projected " << ids.size() << " points with " << a.method;
    if (method == viz::Method::tsne) {
        out << " (KL " << g6(result.initial_kl) << " -> " << g6(result.final_kl) << ")";
        if (!(result.final_kl < result.initial_kl)) err << "warning: t-SNE did not reduce KL divergence\n";
    }
    bool labeled = true;
    for (const auto& l : labels) labeled = labeled && !l.empty();
    if (labeled) {
        try {
            out << "; silhouette " << g6(viz::silhouette_score(result.points, labels));
        } catch (const ArgumentError&) {
            // fewer than two label groups: silhouette undefined
        }
    }
    out << "\n";
    return kSuccess;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Neural-response captioning pipeline", "neurocap"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    std::function<int()> action;

    SynthArgs synth;
    auto* sg = app.add_subcommand("synth-gen", "Generate a labeled synthetic dataset");
    sg->add_option("--concepts", synth.spec.concepts, "Concept count K")->capture_default_str();
    sg->add_option("--per-concept", synth.spec.per_concept, "Captions per concept")->capture_default_str();
    sg->add_option("--dim", synth.spec.embedding_dim, "Embedding dimension D")->capture_default_str();
    sg->add_option("--fdim", synth.spec.response_dim, "Response dimension F")->capture_default_str();
    sg->add_option("--noise", synth.spec.noise, "Response noise sigma")->capture_default_str();
    sg->add_option("--subject", synth.spec.subject, "Subject id")->capture_default_str();
    sg->add_option("--seed", synth.seed, "Generator seed")->capture_default_str();
    sg->add_option("--out", synth.out, "Output directory")->required();
    sg->callback([&] { action = [&] { return run_synth(synth, out, err); }; });

    ImportArgs imp;
    auto* ei = app.add_subcommand("embed-import", "Convert an embedding TSV into a binary store");
    ei->add_option("--tsv", imp.tsv, "TSV with #dim=D header")->required()->check(CLI::ExistingFile);
    ei->add_option("--out", imp.out, "Binary EMBD file")->required();
    ei->callback([&] { action = [&] { return run_import(imp, out, err); }; });

    VocabArgs voc;
    auto* vb = app.add_subcommand("vocab-build", "Build a vocabulary from training captions");
    vb->add_option("--manifest", voc.manifest, "Dataset manifest (train split is used)");
    vb->add_option("--captions", voc.captions, "Caption TSV (all rows are used)");
    vb->add_option("--min-freq", voc.min_freq, "Minimum token frequency")->capture_default_str()->check(CLI::PositiveNumber);
    vb->add_option("--out", voc.out, "Vocabulary file")->required();
    vb->callback([&] { action = [&] { return run_vocab(voc, out, err); }; });

    RseArgs rse_args;
    auto* tr = app.add_subcommand("train-rse", "Train the response-to-embedding encoder");
    tr->add_option("--manifest", rse_args.manifest)->required();
    tr->add_option("--out", rse_args.out, "Checkpoint path")->required();
    tr->add_option("--hidden", rse_args.hidden, "Comma-separated hidden widths; empty for linear")->capture_default_str();
    tr->add_option("--epochs", rse_args.config.epochs)->capture_default_str();
    tr->add_option("--batch", rse_args.config.batch_size)->capture_default_str()->check(CLI::PositiveNumber);
    tr->add_option("--lr", rse_args.config.lr)->capture_default_str()->check(CLI::PositiveNumber);
    tr->add_option("--patience", rse_args.config.patience, "Early-stop window; 0 disables")->capture_default_str();
    tr->add_option("--seed", rse_args.config.seed)->capture_default_str();
    tr->callback([&] { action = [&] { return run_train_rse(rse_args, out, err); }; });

    DecoderArgs dec_args;
    auto* td = app.add_subcommand("train-decoder", "Train the embedding-to-caption decoder");
    td->add_option("--manifest", dec_args.manifest)->required();
    td->add_option("--vocab", dec_args.vocab)->required()->check(CLI::ExistingFile);
    td->add_option("--out", dec_args.out, "Checkpoint path")->required();
    td->add_option("--embed-dim", dec_args.config.embed_dim)->capture_default_str()->check(CLI::PositiveNumber);
    td->add_option("--hidden-dim", dec_args.config.hidden_dim)->capture_default_str()->check(CLI::PositiveNumber);
    td->add_option("--max-len", dec_args.config.max_len)->capture_default_str()->check(CLI::Range(2, 1000));
    td->add_option("--epochs", dec_args.config.epochs)->capture_default_str();
    td->add_option("--batch", dec_args.config.batch_size)->capture_default_str()->check(CLI::PositiveNumber);
    td->add_option("--lr", dec_args.config.lr)->capture_default_str()->check(CLI::PositiveNumber);
    td->add_option("--patience", dec_args.config.patience)->capture_default_str();
    td->add_option("--seed", dec_args.config.seed)->capture_default_str();
    td->callback([&] { action = [&] { return run_train_decoder(dec_args, out, err); }; });

    CaptionArgs cap;
    auto* cp = app.add_subcommand("caption", "Caption response vectors");
    cp->add_option("--rse", cap.rse)->required()->check(CLI::ExistingFile);
    cp->add_option("--decoder", cap.decoder)->required()->check(CLI::ExistingFile);
    cp->add_option("--vocab", cap.vocab, "Refuse a decoder trained with another vocabulary");
    cp->add_option("--responses", cap.responses, "Binary NRSP response file");
    cp->add_option("--manifest", cap.manifest, "Caption one split of a dataset instead");
    cp->add_option("--split", cap.split)->capture_default_str();
    cp->add_option("--subject", cap.subject, "Subject id written with --responses")->capture_default_str();
    cp->add_option("--out", cap.out, "Caption TSV")->required();
    cp->callback([&] { action = [&] { return run_caption(cap, out, err); }; });

    EvalArgs ev;
    auto* ep = app.add_subcommand("eval", "Score generated captions (METEOR, Sentence, Perplexity)");
    ep->add_option("--manifest", ev.manifest)->required();
    ep->add_option("--rse", ev.rse)->required()->check(CLI::ExistingFile);
    ep->add_option("--decoder", ev.decoder)->required()->check(CLI::ExistingFile);
    ep->add_option("--split", ev.split)->capture_default_str();
    ep->add_option("--out", ev.out, "Report TSV")->required();
    ep->callback([&] { action = [&] { return run_eval(ev, out, err); }; });

    AblateArgs ab;
    auto* ac = app.add_subcommand("ablate", "Component analysis over variants and seeds");
    ac->add_option("--manifest", ab.manifest)->required();
    ac->add_option("--seeds", ab.seeds, "Comma-separated seeds (at least 3)")->capture_default_str();
    ac->add_option("--variants", ab.variants)->capture_default_str();
    ac->add_option("--rse-hidden", ab.hidden, "Comma-separated encoder hidden widths");
    ac->add_option("--rse-epochs", ab.config.rse.epochs)->capture_default_str();
    ac->add_option("--rse-lr", ab.config.rse.lr)->capture_default_str();
    ac->add_option("--embed-dim", ab.config.decoder.embed_dim)->capture_default_str();
    ac->add_option("--hidden-dim", ab.config.decoder.hidden_dim)->capture_default_str();
    ac->add_option("--decoder-epochs", ab.config.decoder.epochs)->capture_default_str();
    ac->add_option("--decoder-lr", ab.config.decoder.lr)->capture_default_str();
    ac->add_option("--min-freq", ab.config.min_token_freq)->capture_default_str();
    ac->add_option("--out", ab.out, "Table TSV")->required();
    ac->callback([&] { action = [&] { return run_ablate(ab, out, err); }; });

    VizArgs vz;
    auto* vp = app.add_subcommand("viz", "PCA or t-SNE scatter of the response or predicted space");
    vp->add_option("--manifest", vz.manifest)->required();
    vp->add_option("--rse", vz.rse, "Encoder checkpoint (for --space predicted)");
    vp->add_option("--method", vz.method, "pca or tsne")->capture_default_str();
    vp->add_option("--space", vz.space, "predicted or input")->capture_default_str();
    vp->add_option("--split", vz.split, "train, test or all")->capture_default_str();
    vp->add_option("--perplexity", vz.tsne.perplexity, "t-SNE perplexity; 0 picks a default")->capture_default_str();
    vp->add_option("--iterations", vz.tsne.iterations)->capture_default_str();
    vp->add_option("--seed", vz.tsne.seed)->capture_default_str();
    vp->add_option("--out", vz.out, "Scatter TSV")->required();
    vp->add_option("--svg", vz.svg, "Optional SVG plot");
    vp->callback([&] { action = [&] { return run_viz(vz, out, err); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        return action();
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kNumericError;
    } catch (const Error& e) {
        err << "data error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "data error: " << e.what() << "\n";
        return kDataError;
    }
}

}  // namespace neurocap::cli
