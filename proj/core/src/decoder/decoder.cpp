#include "neurocap/decoder/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "neurocap/error.hpp"
#include "neurocap/nn/loss.hpp"
#include "neurocap/random.hpp"

namespace neurocap::decoder {

DecoderModel DecoderModel::create(std::size_t condition_dim, const text::Vocabulary& vocab,
                                  const DecoderConfig& config) {
    if (condition_dim == 0 || config.embed_dim == 0 || config.hidden_dim == 0) {
        throw ArgumentError("DecoderModel: dimensions must be positive");
    }
    if (config.max_len < 2) throw ArgumentError("DecoderModel: max_len must be >= 2");
    Rng rng(mix_seed(config.seed ^ 0x4445432D696E6974ULL));
    DecoderModel m;
    m.vocab = vocab;
    m.max_len = config.max_len;
    m.config = config;
    const auto v = static_cast<Eigen::Index>(vocab.size());
    m.init = nn::DenseLayer::random(condition_dim, config.hidden_dim, nn::Activation::tanh, rng);
    m.token_table = Tensor2(v, static_cast<Eigen::Index>(config.embed_dim));
    const double bound = 1.0 / std::sqrt(static_cast<double>(vocab.size()));
    for (double& x : as_span(m.token_table)) x = rng.uniform(-bound, bound);
    m.cell = nn::LstmCell::random(config.embed_dim, config.hidden_dim, rng);
    m.output = nn::DenseLayer::random(config.hidden_dim, vocab.size(), nn::Activation::identity, rng);
    return m;
}

void DecoderModel::validate() const {
    const auto h = cell.hidden_dim;
    require_dim(init.out_dim(), h, "decoder init projection");
    require_dim(static_cast<std::size_t>(init.bias.size()), init.out_dim(), "decoder init bias");
    require_dim(static_cast<std::size_t>(token_table.cols()), cell.input_dim, "decoder token table");
    require_dim(output.in_dim(), h, "decoder output projection");
    require_dim(output.out_dim(), vocab.size(), "decoder output projection");
    require_dim(static_cast<std::size_t>(output.bias.size()), vocab.size(), "decoder output bias");
    require_dim(vocab_size(), vocab.size(), "decoder token table rows");
    for (const Tensor2* w : {&cell.w_forget, &cell.w_output, &cell.w_cell}) {
        if (w->rows() != cell.w_input.rows() || w->cols() != cell.w_input.cols()) {
            throw DimensionError("decoder LSTM gate weights differ in shape");
        }
    }
    require_dim(static_cast<std::size_t>(cell.w_input.rows()), h, "decoder LSTM gate rows");
    require_dim(static_cast<std::size_t>(cell.w_input.cols()), cell.input_dim + h,
                "decoder LSTM gate cols");
    if (max_len < 2) throw DimensionError("decoder max_len must be >= 2");
}

DecoderGrad::DecoderGrad(const DecoderModel& model)
    : init(model.init),
      token_table(Tensor2::Zero(model.token_table.rows(), model.token_table.cols())),
      cell(model.cell),
      output(model.output) {}

void DecoderGrad::zero() {
    init.zero();
    token_table.setZero();
    cell.zero();
    output.zero();
}

nn::ParamList parameters(DecoderModel& model, bool include_init) {
    nn::ParamList out;
    if (include_init) {
        for (auto s : nn::parameters(model.init)) out.push_back(s);
    }
    out.push_back(as_span(model.token_table));
    for (auto s : nn::parameters(model.cell)) out.push_back(s);
    for (auto s : nn::parameters(model.output)) out.push_back(s);
    return out;
}

nn::ParamList parameters(DecoderGrad& grad, bool include_init) {
    nn::ParamList out;
    if (include_init) {
        for (auto s : nn::parameters(grad.init)) out.push_back(s);
    }
    out.push_back(as_span(grad.token_table));
    for (auto s : nn::parameters(grad.cell)) out.push_back(s);
    for (auto s : nn::parameters(grad.output)) out.push_back(s);
    return out;
}

BatchLoss batch_loss(const DecoderModel& model, const Tensor2& conditions,
                     std::span<const std::vector<int>* const> sequences, DecoderGrad* grad,
                     Tensor2* condition_grad) {
    const auto b = static_cast<Eigen::Index>(sequences.size());
    if (b == 0) throw DataError("decoder batch_loss: empty batch");
    if (conditions.rows() != b) throw DimensionError("decoder batch_loss: one condition per sequence");
    require_dim(static_cast<std::size_t>(conditions.cols()), model.condition_dim(),
                "decoder condition");
    const int vocab = static_cast<int>(model.vocab_size());
    std::size_t longest = 0;
    for (const auto* s : sequences) {
        if (s->size() < 2) throw ArgumentError("decoder batch_loss: sequence shorter than 2");
        for (int t : *s) {
            if (t < 0 || t >= vocab) {
                throw ArgumentError("decoder batch_loss: token index " + std::to_string(t) +
                                    " out of range");
            }
        }
        longest = std::max(longest, s->size());
    }
    const std::size_t steps = longest - 1;
    const auto hidden = static_cast<Eigen::Index>(model.cell.hidden_dim);
    const bool backward = grad != nullptr || condition_grad != nullptr;

    nn::DenseCache init_cache;
    Tensor2 h = nn::dense_forward(model.init, conditions, &init_cache);
    Tensor2 c = Tensor2::Zero(b, hidden);

    std::vector<std::vector<int>> inputs(steps, std::vector<int>(static_cast<std::size_t>(b)));
    std::vector<std::vector<int>> targets(steps, std::vector<int>(static_cast<std::size_t>(b)));
    for (std::size_t t = 0; t < steps; ++t) {
        for (Eigen::Index r = 0; r < b; ++r) {
            const auto& s = *sequences[static_cast<std::size_t>(r)];
            const bool live = t + 1 < s.size();
            inputs[t][static_cast<std::size_t>(r)] = live ? s[t] : text::kPad;
            const int target = live ? s[t + 1] : -1;
            targets[t][static_cast<std::size_t>(r)] = target == text::kPad ? -1 : target;
        }
    }

    std::vector<nn::LstmStepCache> step_cache(backward ? steps : 0);
    std::vector<nn::DenseCache> out_cache(backward ? steps : 0);
    std::vector<Tensor2> logit_grads(backward ? steps : 0);
    BatchLoss result;
    Tensor2 x(b, model.token_table.cols());
    for (std::size_t t = 0; t < steps; ++t) {
        for (Eigen::Index r = 0; r < b; ++r) {
            x.row(r) = model.token_table.row(inputs[t][static_cast<std::size_t>(r)]);
        }
        Tensor2 h_next, c_next;
        nn::lstm_step(model.cell, x, h, c, h_next, c_next, backward ? &step_cache[t] : nullptr);
        h = std::move(h_next);
        c = std::move(c_next);
        const Tensor2 logits = nn::dense_forward(model.output, h, backward ? &out_cache[t] : nullptr);
        result.sum += nn::softmax_cross_entropy(logits, targets[t], backward ? &logit_grads[t] : nullptr);
        for (int tgt : targets[t]) result.tokens += tgt >= 0 ? 1 : 0;
    }
    if (!backward) return result;

    DecoderGrad scratch;
    DecoderGrad& g = grad != nullptr ? *grad : (scratch = DecoderGrad(model));
    Tensor2 dh = Tensor2::Zero(b, hidden);
    Tensor2 dc = Tensor2::Zero(b, hidden);
    Tensor2 dx, dh_prev, dc_prev;
    for (std::size_t t = steps; t-- > 0;) {
        dh += nn::dense_backward(model.output, out_cache[t], logit_grads[t], g.output);
        nn::lstm_step_backward(model.cell, step_cache[t], dh, dc, g.cell, dx, dh_prev, dc_prev);
        for (Eigen::Index r = 0; r < b; ++r) {
            g.token_table.row(inputs[t][static_cast<std::size_t>(r)]) += dx.row(r);
        }
        dh = std::move(dh_prev);
        dc = std::move(dc_prev);
    }
    nn::DenseGrad init_scratch(model.init);
    Tensor2 dcond = nn::dense_backward(model.init, init_cache, dh, grad != nullptr ? g.init : init_scratch);
    if (condition_grad != nullptr) *condition_grad = std::move(dcond);
    return result;
}

DecoderTrainResult train_decoder(std::span<const DecoderPair> pairs, const text::Vocabulary& vocab,
                                 const DecoderConfig& config) {
    if (pairs.empty()) throw DataError("train_decoder: no training pairs");
    if (config.batch_size == 0) throw ArgumentError("train_decoder: batch_size must be positive");
    const auto cond_dim = static_cast<std::size_t>(pairs.front().condition.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        require_dim(static_cast<std::size_t>(pairs[i].condition.size()), cond_dim,
                    "train_decoder condition");
        require_finite(as_span(pairs[i].condition), "train_decoder condition");
        text::validate_sequence(vocab, pairs[i].tokens);
    }

    DecoderTrainResult result{DecoderModel::create(cond_dim, vocab, config), {}};
    DecoderModel& model = result.model;
    DecoderGrad grad(model);
    const bool train_init = !config.freeze_init;
    const nn::ParamList params = parameters(model, train_init);
    const nn::ParamList grads = parameters(grad, train_init);
    nn::AdamState adam(params, {.lr = config.lr});

    Rng rng(mix_seed(config.seed ^ 0x4445432D73687566ULL));
    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    std::size_t since_best = 0;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(order.begin(), order.end());
        double epoch_sum = 0.0;
        std::size_t epoch_tokens = 0;
        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            const std::size_t stop = std::min(order.size(), start + config.batch_size);
            const auto bsz = static_cast<Eigen::Index>(stop - start);
            Tensor2 cond(bsz, static_cast<Eigen::Index>(cond_dim));
            std::vector<const std::vector<int>*> seqs;
            for (Eigen::Index r = 0; r < bsz; ++r) {
                const auto& p = pairs[order[start + static_cast<std::size_t>(r)]];
                cond.row(r) = p.condition.transpose();
                seqs.push_back(&p.tokens);
            }
            grad.zero();
            const BatchLoss bl = batch_loss(model, cond, seqs, &grad, nullptr);
            if (!std::isfinite(bl.sum)) {
                throw NumericError("train_decoder: non-finite loss at epoch " + std::to_string(epoch));
            }
            const double scale = 1.0 / static_cast<double>(std::max<std::size_t>(bl.tokens, 1));
            for (auto s : grads) {
                for (double& v : s) v *= scale;
            }
            nn::adam_step(params, grads, adam);
            epoch_sum += bl.sum;
            epoch_tokens += bl.tokens;
        }
        const double epoch_loss = epoch_sum / static_cast<double>(std::max<std::size_t>(epoch_tokens, 1));
        result.loss_curve.push_back(epoch_loss);
        if (best - epoch_loss > config.min_improvement) {
            best = epoch_loss;
            since_best = 0;
        } else if (config.patience > 0 && ++since_best >= config.patience) {
            break;
        }
    }
    return result;
}

Generation generate_caption(const DecoderModel& model, const Vector& condition) {
    require_dim(static_cast<std::size_t>(condition.size()), model.condition_dim(), "generate_caption");
    Generation gen;
    Tensor2 h = nn::dense_forward(model.init, Tensor2(condition.transpose()));
    Tensor2 c = Tensor2::Zero(1, h.cols());
    int token = text::kStart;
    gen.truncated = true;
    for (std::size_t step = 0; step + 1 < model.max_len; ++step) {
        Tensor2 h_next, c_next;
        nn::lstm_step(model.cell, Tensor2(model.token_table.row(token)), h, c, h_next, c_next);
        h = std::move(h_next);
        c = std::move(c_next);
        const Tensor2 logits = nn::dense_forward(model.output, h);
        Eigen::Index best = 0;
        logits.row(0).maxCoeff(&best);
        token = static_cast<int>(best);
        if (token == text::kEnd) {
            gen.truncated = false;
            break;
        }
        gen.tokens.push_back(token);
    }
    gen.text = text::decode(model.vocab, gen.tokens);
    return gen;
}

std::vector<double> token_log_likelihoods(const DecoderModel& model, const Vector& condition,
                                          std::span<const int> target) {
    require_dim(static_cast<std::size_t>(condition.size()), model.condition_dim(),
                "token_log_likelihoods");
    text::validate_sequence(model.vocab, target);
    std::vector<double> out;
    out.reserve(target.size() - 1);
    Tensor2 h = nn::dense_forward(model.init, Tensor2(condition.transpose()));
    Tensor2 c = Tensor2::Zero(1, h.cols());
    for (std::size_t t = 0; t + 1 < target.size(); ++t) {
        Tensor2 h_next, c_next;
        nn::lstm_step(model.cell, Tensor2(model.token_table.row(target[t])), h, c, h_next, c_next);
        h = std::move(h_next);
        c = std::move(c_next);
        const Vector logits = nn::dense_forward(model.output, h).row(0).transpose();
        out.push_back(nn::log_softmax(logits)(target[t + 1]));
    }
    return out;
}

double sequence_loss(const DecoderModel& model, const Vector& condition,
                     const std::vector<int>& target) {
    const std::vector<int>* seqs[] = {&target};
    return batch_loss(model, Tensor2(condition.transpose()), seqs, nullptr, nullptr).sum;
}

}  // namespace neurocap::decoder
