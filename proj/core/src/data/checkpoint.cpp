#include "neurocap/data/checkpoint.hpp"

#include <map>

#include <nlohmann/json.hpp>

#include "neurocap/data/atomic_file.hpp"
#include "neurocap/data/binary_io.hpp"
#include "neurocap/error.hpp"
#include "neurocap/hash.hpp"

namespace neurocap::data {

namespace {

using nlohmann::ordered_json;

constexpr std::string_view kMagic = "NCKP";

struct NamedTensor {
    std::string name;
    const Tensor2* matrix = nullptr;
    const Vector* vector = nullptr;
};

std::vector<std::byte> encode(ModelKind kind, std::uint64_t vocab_hash, const ordered_json& config,
                              const std::vector<NamedTensor>& tensors) {
    ByteWriter w;
    w.raw(kMagic);
    w.u32(kCheckpointVersion);
    w.u32(static_cast<std::uint32_t>(kind));
    w.u64(vocab_hash);
    w.string(config.dump());
    w.u32(static_cast<std::uint32_t>(tensors.size()));
    for (const auto& t : tensors) {
        w.string(t.name);
        const auto rows = t.matrix ? t.matrix->rows() : t.vector->size();
        const auto cols = t.matrix ? t.matrix->cols() : 1;
        w.u32(static_cast<std::uint32_t>(rows));
        w.u32(static_cast<std::uint32_t>(cols));
        const double* p = t.matrix ? t.matrix->data() : t.vector->data();
        for (Eigen::Index k = 0; k < rows * cols; ++k) w.f64(p[k]);
    }
    const std::uint64_t sum = fnv1a64(w.bytes());
    w.u64(sum);
    return w.take();
}

struct Decoded {
    ModelKind kind{};
    std::uint64_t vocab_hash = 0;
    ordered_json config;
    std::map<std::string, Tensor2> tensors;

    Tensor2 take(const std::string& name) {
        auto it = tensors.find(name);
        if (it == tensors.end()) throw DataError("checkpoint: missing tensor '" + name + "'");
        Tensor2 t = std::move(it->second);
        tensors.erase(it);
        return t;
    }
    Vector take_vector(const std::string& name) {
        Tensor2 t = take(name);
        if (t.cols() != 1) throw DataError("checkpoint: tensor '" + name + "' is not a vector");
        return Vector(Eigen::Map<const Vector>(t.data(), t.rows()));
    }
};

Decoded decode(std::span<const std::byte> bytes) {
    if (bytes.size() < 8) throw DataError("checkpoint: truncated");
    const auto body = bytes.first(bytes.size() - 8);
    ByteReader tail(bytes.last(8));
    if (tail.u64() != fnv1a64(body)) throw DataError("checkpoint: checksum mismatch (corrupt or truncated)");
    ByteReader r(body);
    if (r.raw(4) != kMagic) throw DataError("checkpoint: bad magic");
    const std::uint32_t version = r.u32();
    if (version != kCheckpointVersion) {
        throw DataError("checkpoint: unsupported version " + std::to_string(version));
    }
    Decoded d;
    const std::uint32_t kind = r.u32();
    if (kind != static_cast<std::uint32_t>(ModelKind::rse) &&
        kind != static_cast<std::uint32_t>(ModelKind::decoder)) {
        throw DataError("checkpoint: unknown model kind " + std::to_string(kind));
    }
    d.kind = static_cast<ModelKind>(kind);
    d.vocab_hash = r.u64();
    try {
        d.config = ordered_json::parse(r.string(r.remaining()));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("checkpoint: bad configuration block: ") + e.what());
    }
    const std::uint32_t count = r.u32();
    for (std::uint32_t k = 0; k < count; ++k) {
        std::string name = r.string(r.remaining());
        const std::uint32_t rows = r.u32();
        const std::uint32_t cols = r.u32();
        const std::uint64_t n = static_cast<std::uint64_t>(rows) * cols;
        if (n > r.remaining() / 8) throw DataError("checkpoint: truncated tensor '" + name + "'");
        Tensor2 t(rows, cols);
        for (double& v : as_span(t)) v = r.f64();
        if (!d.tensors.emplace(std::move(name), std::move(t)).second) {
            throw DataError("checkpoint: duplicate tensor");
        }
    }
    if (!r.at_end()) throw DataError("checkpoint: trailing bytes");
    return d;
}

void require_shape(const Tensor2& t, Eigen::Index rows, Eigen::Index cols, const std::string& what) {
    if (t.rows() != rows || t.cols() != cols) throw DataError("checkpoint: tensor '" + what + "' has wrong shape");
}

template <typename T>
T config_value(const ordered_json& c, const char* key) {
    try {
        return c.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("checkpoint: configuration field '") + key + "': " + e.what());
    }
}

}  // namespace

ModelKind checkpoint_kind(std::span<const std::byte> bytes) { return decode(bytes).kind; }

std::vector<std::byte> encode_checkpoint(const rse::RseModel& model) {
    model.validate();
    ordered_json c;
    c["hidden"] = model.config.hidden;
    c["epochs"] = model.config.epochs;
    c["batch_size"] = model.config.batch_size;
    c["lr"] = model.config.lr;
    c["seed"] = model.config.seed;
    c["patience"] = model.config.patience;
    c["min_improvement"] = model.config.min_improvement;
    c["normalize_inputs"] = model.config.normalize_inputs;
    std::vector<std::string> acts;
    for (const auto& l : model.layers) acts.emplace_back(nn::to_string(l.activation));
    c["activations"] = acts;
    std::vector<NamedTensor> tensors;
    for (std::size_t k = 0; k < model.layers.size(); ++k) {
        tensors.push_back({"layer" + std::to_string(k) + ".weight", &model.layers[k].weight, nullptr});
        tensors.push_back({"layer" + std::to_string(k) + ".bias", nullptr, &model.layers[k].bias});
    }
    tensors.push_back({"norm.mean", nullptr, &model.normalizer.mean});
    tensors.push_back({"norm.scale", nullptr, &model.normalizer.scale});
    return encode(ModelKind::rse, 0, c, tensors);
}

std::vector<std::byte> encode_checkpoint(const decoder::DecoderModel& model) {
    model.validate();
    ordered_json c;
    const auto& cfg = model.config;
    c["embed_dim"] = cfg.embed_dim;
    c["hidden_dim"] = cfg.hidden_dim;
    c["max_len"] = model.max_len;
    c["epochs"] = cfg.epochs;
    c["batch_size"] = cfg.batch_size;
    c["lr"] = cfg.lr;
    c["seed"] = cfg.seed;
    c["freeze_init"] = cfg.freeze_init;
    c["patience"] = cfg.patience;
    c["min_improvement"] = cfg.min_improvement;
    c["vocabulary"] = model.vocab.tokens();
    const auto& cell = model.cell;
    std::vector<NamedTensor> tensors = {
        {"init.weight", &model.init.weight, nullptr},   {"init.bias", nullptr, &model.init.bias},
        {"token_table", &model.token_table, nullptr},   {"lstm.w_input", &cell.w_input, nullptr},
        {"lstm.w_forget", &cell.w_forget, nullptr},     {"lstm.w_output", &cell.w_output, nullptr},
        {"lstm.w_cell", &cell.w_cell, nullptr},         {"lstm.b_input", nullptr, &cell.b_input},
        {"lstm.b_forget", nullptr, &cell.b_forget},     {"lstm.b_output", nullptr, &cell.b_output},
        {"lstm.b_cell", nullptr, &cell.b_cell},         {"output.weight", &model.output.weight, nullptr},
        {"output.bias", nullptr, &model.output.bias},
    };
    return encode(ModelKind::decoder, model.vocab.hash(), c, tensors);
}

rse::RseModel decode_rse_checkpoint(std::span<const std::byte> bytes) {
    Decoded d = decode(bytes);
    if (d.kind != ModelKind::rse) throw DataError("checkpoint: not an RSE checkpoint");
    rse::RseModel model;
    const auto& c = d.config;
    model.config.hidden = config_value<std::vector<std::size_t>>(c, "hidden");
    model.config.epochs = config_value<std::size_t>(c, "epochs");
    model.config.batch_size = config_value<std::size_t>(c, "batch_size");
    model.config.lr = config_value<double>(c, "lr");
    model.config.seed = config_value<std::uint64_t>(c, "seed");
    model.config.patience = config_value<std::size_t>(c, "patience");
    model.config.min_improvement = config_value<double>(c, "min_improvement");
    model.config.normalize_inputs = config_value<bool>(c, "normalize_inputs");
    const auto acts = config_value<std::vector<std::string>>(c, "activations");
    if (acts.size() != model.config.hidden.size() + 1) {
        throw DataError("checkpoint: layer count does not match hidden widths");
    }
    for (std::size_t k = 0; k < acts.size(); ++k) {
        nn::DenseLayer layer;
        layer.weight = d.take("layer" + std::to_string(k) + ".weight");
        layer.bias = d.take_vector("layer" + std::to_string(k) + ".bias");
        layer.activation = nn::activation_from_string(acts[k]);
        model.layers.push_back(std::move(layer));
    }
    model.normalizer.mean = d.take_vector("norm.mean");
    model.normalizer.scale = d.take_vector("norm.scale");
    if (!d.tensors.empty()) throw DataError("checkpoint: unexpected tensor '" + d.tensors.begin()->first + "'");
    try {
        model.validate();
    } catch (const DimensionError& e) {
        throw DataError(std::string("checkpoint: ") + e.what());
    }
    return model;
}

decoder::DecoderModel decode_decoder_checkpoint(std::span<const std::byte> bytes,
                                                const text::Vocabulary* expected) {
    Decoded d = decode(bytes);
    if (d.kind != ModelKind::decoder) throw DataError("checkpoint: not a decoder checkpoint");
    decoder::DecoderModel model;
    const auto& c = d.config;
    model.vocab = text::Vocabulary::from_tokens(config_value<std::vector<std::string>>(c, "vocabulary"));
    if (model.vocab.hash() != d.vocab_hash) {
        throw DataError("checkpoint: embedded vocabulary does not match its recorded hash");
    }
    if (expected != nullptr && expected->hash() != d.vocab_hash) {
        throw DataError("checkpoint: vocabulary hash mismatch; decoder was trained with a different vocabulary");
    }
    auto& cfg = model.config;
    cfg.embed_dim = config_value<std::size_t>(c, "embed_dim");
    cfg.hidden_dim = config_value<std::size_t>(c, "hidden_dim");
    cfg.max_len = config_value<std::size_t>(c, "max_len");
    cfg.epochs = config_value<std::size_t>(c, "epochs");
    cfg.batch_size = config_value<std::size_t>(c, "batch_size");
    cfg.lr = config_value<double>(c, "lr");
    cfg.seed = config_value<std::uint64_t>(c, "seed");
    cfg.freeze_init = config_value<bool>(c, "freeze_init");
    cfg.patience = config_value<std::size_t>(c, "patience");
    cfg.min_improvement = config_value<double>(c, "min_improvement");
    model.max_len = cfg.max_len;

    model.init.weight = d.take("init.weight");
    model.init.bias = d.take_vector("init.bias");
    model.init.activation = nn::Activation::tanh;
    model.token_table = d.take("token_table");
    auto& cell = model.cell;
    cell.input_dim = cfg.embed_dim;
    cell.hidden_dim = cfg.hidden_dim;
    cell.w_input = d.take("lstm.w_input");
    cell.w_forget = d.take("lstm.w_forget");
    cell.w_output = d.take("lstm.w_output");
    cell.w_cell = d.take("lstm.w_cell");
    cell.b_input = d.take_vector("lstm.b_input");
    cell.b_forget = d.take_vector("lstm.b_forget");
    cell.b_output = d.take_vector("lstm.b_output");
    cell.b_cell = d.take_vector("lstm.b_cell");
    model.output.weight = d.take("output.weight");
    model.output.bias = d.take_vector("output.bias");
    model.output.activation = nn::Activation::identity;
    if (!d.tensors.empty()) throw DataError("checkpoint: unexpected tensor '" + d.tensors.begin()->first + "'");
    const auto h = static_cast<Eigen::Index>(cfg.hidden_dim);
    for (const Vector* b : {&cell.b_input, &cell.b_forget, &cell.b_output, &cell.b_cell}) {
        if (b->size() != h) throw DataError("checkpoint: LSTM bias has wrong length");
    }
    require_shape(cell.w_input, h, static_cast<Eigen::Index>(cfg.embed_dim) + h, "lstm.w_input");
    try {
        model.validate();
    } catch (const DimensionError& e) {
        throw DataError(std::string("checkpoint: ") + e.what());
    }
    return model;
}

void save_checkpoint(const rse::RseModel& model, const std::filesystem::path& path) {
    write_bytes_atomic(path, encode_checkpoint(model));
}

void save_checkpoint(const decoder::DecoderModel& model, const std::filesystem::path& path) {
    write_bytes_atomic(path, encode_checkpoint(model));
}

rse::RseModel load_rse_checkpoint(const std::filesystem::path& path) {
    try {
        return decode_rse_checkpoint(read_bytes(path));
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

decoder::DecoderModel load_decoder_checkpoint(const std::filesystem::path& path,
                                              const text::Vocabulary* expected) {
    try {
        return decode_decoder_checkpoint(read_bytes(path), expected);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

}  // namespace neurocap::data
