#include "neurocap/rse/encoder.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "neurocap/error.hpp"
#include "neurocap/nn/loss.hpp"
#include "neurocap/random.hpp"

namespace neurocap::rse {

Normalizer Normalizer::identity(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return {Vector::Zero(d), Vector::Ones(d)};
}

Normalizer Normalizer::fit(const Tensor2& samples) {
    if (samples.rows() == 0) throw DataError("Normalizer::fit: no samples");
    Normalizer n;
    n.mean = samples.colwise().mean().transpose();
    const Tensor2 centered = samples.rowwise() - n.mean.transpose();
    n.scale = (centered.array().square().colwise().sum() / static_cast<double>(samples.rows()))
                  .sqrt()
                  .transpose();
    for (Eigen::Index k = 0; k < n.scale.size(); ++k) {
        if (!(n.scale(k) > 0.0)) n.scale(k) = 1.0;
    }
    return n;
}

Vector Normalizer::apply(const Vector& x) const {
    require_dim(static_cast<std::size_t>(x.size()), dim(), "Normalizer::apply");
    return ((x - mean).array() / scale.array()).matrix();
}

Tensor2 Normalizer::apply(const Tensor2& rows) const {
    require_dim(static_cast<std::size_t>(rows.cols()), dim(), "Normalizer::apply");
    Tensor2 out = rows.rowwise() - mean.transpose();
    out.array().rowwise() /= scale.transpose().array();
    return out;
}

RseModel RseModel::create(std::size_t input_dim, std::size_t output_dim, const RseConfig& config) {
    if (input_dim == 0 || output_dim == 0) throw ArgumentError("RseModel: dimensions must be positive");
    Rng rng(mix_seed(config.seed ^ 0x5253452D696E6974ULL));
    RseModel model;
    model.config = config;
    model.normalizer = Normalizer::identity(input_dim);
    std::size_t in = input_dim;
    for (std::size_t width : config.hidden) {
        if (width == 0) throw ArgumentError("RseModel: hidden width must be positive");
        model.layers.push_back(nn::DenseLayer::random(in, width, nn::Activation::relu, rng));
        in = width;
    }
    model.layers.push_back(nn::DenseLayer::random(in, output_dim, nn::Activation::identity, rng));
    return model;
}

RseModel RseModel::zeros(std::size_t input_dim, std::size_t output_dim,
                         std::span<const std::size_t> hidden) {
    RseModel model;
    model.config.hidden.assign(hidden.begin(), hidden.end());
    model.normalizer = Normalizer::identity(input_dim);
    std::size_t in = input_dim;
    for (std::size_t width : hidden) {
        model.layers.push_back(nn::DenseLayer::zeros(in, width, nn::Activation::relu));
        in = width;
    }
    model.layers.push_back(nn::DenseLayer::zeros(in, output_dim, nn::Activation::identity));
    return model;
}

void RseModel::validate() const {
    if (layers.empty()) throw DimensionError("RseModel: no layers");
    for (std::size_t k = 0; k < layers.size(); ++k) {
        const auto& l = layers[k];
        if (static_cast<std::size_t>(l.bias.size()) != l.out_dim()) {
            throw DimensionError("RseModel: bias length differs from weight rows in layer " +
                                 std::to_string(k));
        }
        if (k > 0) require_dim(l.in_dim(), layers[k - 1].out_dim(), "RseModel layer chain");
    }
    require_dim(normalizer.dim(), input_dim(), "RseModel normalizer");
}

Tensor2 rse_forward(const RseModel& model, const Tensor2& normalized, RseCache* cache) {
    if (cache != nullptr) cache->layers.resize(model.layers.size());
    Tensor2 x = normalized;
    for (std::size_t k = 0; k < model.layers.size(); ++k) {
        x = nn::dense_forward(model.layers[k], x, cache ? &cache->layers[k] : nullptr);
    }
    return x;
}

Tensor2 rse_backward(const RseModel& model, const RseCache& cache, const Tensor2& grad_out,
                     std::vector<nn::DenseGrad>& grads) {
    Tensor2 g = grad_out;
    for (std::size_t k = model.layers.size(); k-- > 0;) {
        g = nn::dense_backward(model.layers[k], cache.layers[k], g, grads[k]);
    }
    return g;
}

nn::ParamList parameters(RseModel& model) {
    nn::ParamList out;
    for (auto& l : model.layers) {
        for (auto s : nn::parameters(l)) out.push_back(s);
    }
    return out;
}

nn::ParamList parameters(std::vector<nn::DenseGrad>& grads) {
    nn::ParamList out;
    for (auto& g : grads) {
        for (auto s : nn::parameters(g)) out.push_back(s);
    }
    return out;
}

Vector predict_embedding(const RseModel& model, const Vector& response) {
    require_dim(static_cast<std::size_t>(response.size()), model.input_dim(), "predict_embedding");
    const Tensor2 row = response.transpose();
    return predict_embeddings(model, row).row(0).transpose();
}

Tensor2 predict_embeddings(const RseModel& model, const Tensor2& responses) {
    require_dim(static_cast<std::size_t>(responses.cols()), model.input_dim(), "predict_embeddings");
    return rse_forward(model, model.normalizer.apply(responses), nullptr);
}

RseTrainResult train_rse(std::span<const RsePair> pairs, const RseConfig& config) {
    if (pairs.empty()) throw DataError("train_rse: no training pairs");
    if (config.batch_size == 0) throw ArgumentError("train_rse: batch_size must be positive");
    const auto f = static_cast<std::size_t>(pairs.front().response.size());
    const auto d = static_cast<std::size_t>(pairs.front().embedding.size());
    if (f == 0 || d == 0) throw DataError("train_rse: empty vectors");

    const auto n = static_cast<Eigen::Index>(pairs.size());
    Tensor2 inputs(n, static_cast<Eigen::Index>(f));
    Tensor2 targets(n, static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& p = pairs[static_cast<std::size_t>(i)];
        if (static_cast<std::size_t>(p.response.size()) != f ||
            static_cast<std::size_t>(p.embedding.size()) != d) {
            throw DimensionError("train_rse: pair " + std::to_string(i) + " has inconsistent dimensions");
        }
        inputs.row(i) = p.response.transpose();
        targets.row(i) = p.embedding.transpose();
    }
    require_finite(as_span(inputs), "train_rse responses");
    require_finite(as_span(targets), "train_rse embeddings");

    RseTrainResult result{RseModel::create(f, d, config), {}};
    RseModel& model = result.model;
    model.normalizer = config.normalize_inputs ? Normalizer::fit(inputs) : Normalizer::identity(f);
    const Tensor2 normalized = model.normalizer.apply(inputs);

    std::vector<nn::DenseGrad> grads;
    for (const auto& l : model.layers) grads.emplace_back(l);
    const nn::ParamList params = parameters(model);
    const nn::ParamList grad_list = parameters(grads);
    nn::AdamState adam(params, {.lr = config.lr});

    Rng rng(mix_seed(config.seed ^ 0x5253452D73687566ULL));
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});

    double best = std::numeric_limits<double>::infinity();
    std::size_t since_best = 0;
    RseCache cache;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(order.begin(), order.end());
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            const std::size_t stop = std::min(order.size(), start + config.batch_size);
            const auto b = static_cast<Eigen::Index>(stop - start);
            Tensor2 xb(b, normalized.cols());
            Tensor2 yb(b, targets.cols());
            for (Eigen::Index r = 0; r < b; ++r) {
                xb.row(r) = normalized.row(order[start + static_cast<std::size_t>(r)]);
                yb.row(r) = targets.row(order[start + static_cast<std::size_t>(r)]);
            }
            const Tensor2 pred = rse_forward(model, xb, &cache);
            Tensor2 grad_pred;
            const double loss = nn::mse_loss(pred, yb, &grad_pred);
            if (!std::isfinite(loss)) {
                throw NumericError("train_rse: non-finite loss at epoch " + std::to_string(epoch) +
                                   ", batch starting at " + std::to_string(start));
            }
            epoch_loss += loss * static_cast<double>(b);
            for (auto& g : grads) g.zero();
            rse_backward(model, cache, grad_pred, grads);
            nn::adam_step(params, grad_list, adam);
        }
        epoch_loss /= static_cast<double>(n);
        result.loss_curve.push_back(epoch_loss);
        if (best - epoch_loss >= config.min_improvement) {
            best = epoch_loss;
            since_best = 0;
        } else if (config.patience > 0 && ++since_best >= config.patience) {
            break;
        }
    }
    return result;
}

}  // namespace neurocap::rse
