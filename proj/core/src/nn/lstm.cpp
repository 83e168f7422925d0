#include "neurocap/nn/lstm.hpp"

#include <cmath>

#include "neurocap/error.hpp"

namespace neurocap::nn {

namespace {

Tensor2 sigmoid(const Tensor2& x) { return (1.0 / (1.0 + (-x.array()).exp())).matrix(); }

Tensor2 gate_pre(const Tensor2& z, const Tensor2& w, const Vector& b) {
    Tensor2 out = z * w.transpose();
    out.rowwise() += b.transpose();
    return out;
}

}  // namespace

LstmCell LstmCell::zeros(std::size_t input_dim, std::size_t hidden_dim) {
    const auto rows = static_cast<Eigen::Index>(hidden_dim);
    const auto cols = static_cast<Eigen::Index>(input_dim + hidden_dim);
    LstmCell cell;
    cell.input_dim = input_dim;
    cell.hidden_dim = hidden_dim;
    for (Tensor2* w : {&cell.w_input, &cell.w_forget, &cell.w_output, &cell.w_cell}) {
        *w = Tensor2::Zero(rows, cols);
    }
    for (Vector* b : {&cell.b_input, &cell.b_forget, &cell.b_output, &cell.b_cell}) {
        *b = Vector::Zero(rows);
    }
    return cell;
}

LstmCell LstmCell::random(std::size_t input_dim, std::size_t hidden_dim, Rng& rng) {
    LstmCell cell = zeros(input_dim, hidden_dim);
    const double bound = 1.0 / std::sqrt(static_cast<double>(input_dim + hidden_dim));
    for (Tensor2* w : {&cell.w_input, &cell.w_forget, &cell.w_output, &cell.w_cell}) {
        for (double& v : as_span(*w)) v = rng.uniform(-bound, bound);
    }
    cell.b_forget.setOnes();
    return cell;
}

LstmGrad::LstmGrad(const LstmCell& cell) {
    for (Tensor2* w : {&w_input, &w_forget, &w_output, &w_cell}) {
        *w = Tensor2::Zero(cell.w_input.rows(), cell.w_input.cols());
    }
    for (Vector* b : {&b_input, &b_forget, &b_output, &b_cell}) {
        *b = Vector::Zero(cell.b_input.size());
    }
}

void LstmGrad::zero() {
    for (Tensor2* w : {&w_input, &w_forget, &w_output, &w_cell}) w->setZero();
    for (Vector* b : {&b_input, &b_forget, &b_output, &b_cell}) b->setZero();
}

std::pair<Vector, Vector> lstm_step(const LstmCell& cell, const Vector& x, const Vector& h,
                                    const Vector& c) {
    require_dim(static_cast<std::size_t>(x.size()), cell.input_dim, "lstm_step x");
    require_dim(static_cast<std::size_t>(h.size()), cell.hidden_dim, "lstm_step h");
    require_dim(static_cast<std::size_t>(c.size()), cell.hidden_dim, "lstm_step c");
    require_finite(as_span(x), "lstm_step x");
    require_finite(as_span(h), "lstm_step h");
    require_finite(as_span(c), "lstm_step c");
    Tensor2 h_out, c_out;
    lstm_step(cell, Tensor2(x.transpose()), Tensor2(h.transpose()), Tensor2(c.transpose()), h_out,
              c_out);
    return {h_out.row(0).transpose(), c_out.row(0).transpose()};
}

void lstm_step(const LstmCell& cell, const Tensor2& x, const Tensor2& h, const Tensor2& c,
               Tensor2& h_out, Tensor2& c_out, LstmStepCache* cache) {
    require_dim(static_cast<std::size_t>(x.cols()), cell.input_dim, "lstm_step x");
    require_dim(static_cast<std::size_t>(h.cols()), cell.hidden_dim, "lstm_step h");
    require_dim(static_cast<std::size_t>(c.cols()), cell.hidden_dim, "lstm_step c");
    if (x.rows() != h.rows() || x.rows() != c.rows()) {
        throw DimensionError("lstm_step: batch sizes differ");
    }
    Tensor2 z(x.rows(), x.cols() + h.cols());
    z << x, h;
    Tensor2 i = sigmoid(gate_pre(z, cell.w_input, cell.b_input));
    Tensor2 f = sigmoid(gate_pre(z, cell.w_forget, cell.b_forget));
    Tensor2 o = sigmoid(gate_pre(z, cell.w_output, cell.b_output));
    Tensor2 g = gate_pre(z, cell.w_cell, cell.b_cell).array().tanh().matrix();
    c_out = (f.array() * c.array() + i.array() * g.array()).matrix();
    Tensor2 tanh_c = c_out.array().tanh().matrix();
    h_out = (o.array() * tanh_c.array()).matrix();
    if (cache != nullptr) {
        cache->z = std::move(z);
        cache->i = std::move(i);
        cache->f = std::move(f);
        cache->o = std::move(o);
        cache->g = std::move(g);
        cache->c_prev = c;
        cache->tanh_c = std::move(tanh_c);
    }
}

void lstm_step_backward(const LstmCell& cell, const LstmStepCache& cache, const Tensor2& dh,
                        const Tensor2& dc, LstmGrad& grad, Tensor2& dx, Tensor2& dh_prev,
                        Tensor2& dc_prev) {
    const auto& i = cache.i.array();
    const auto& f = cache.f.array();
    const auto& o = cache.o.array();
    const auto& g = cache.g.array();
    const auto& tc = cache.tanh_c.array();

    const Eigen::ArrayXXd dc_total = dc.array() + dh.array() * o * (1.0 - tc * tc);
    const Tensor2 da_o = (dh.array() * tc * o * (1.0 - o)).matrix();
    const Tensor2 da_f = (dc_total * cache.c_prev.array() * f * (1.0 - f)).matrix();
    const Tensor2 da_i = (dc_total * g * i * (1.0 - i)).matrix();
    const Tensor2 da_g = (dc_total * i * (1.0 - g * g)).matrix();
    dc_prev = (dc_total * f).matrix();

    grad.w_input.noalias() += da_i.transpose() * cache.z;
    grad.w_forget.noalias() += da_f.transpose() * cache.z;
    grad.w_output.noalias() += da_o.transpose() * cache.z;
    grad.w_cell.noalias() += da_g.transpose() * cache.z;
    grad.b_input += da_i.colwise().sum().transpose();
    grad.b_forget += da_f.colwise().sum().transpose();
    grad.b_output += da_o.colwise().sum().transpose();
    grad.b_cell += da_g.colwise().sum().transpose();

    Tensor2 dz = da_i * cell.w_input;
    dz.noalias() += da_f * cell.w_forget;
    dz.noalias() += da_o * cell.w_output;
    dz.noalias() += da_g * cell.w_cell;
    const auto in = static_cast<Eigen::Index>(cell.input_dim);
    const auto hid = static_cast<Eigen::Index>(cell.hidden_dim);
    dx = dz.leftCols(in);
    dh_prev = dz.rightCols(hid);
}

std::vector<std::span<double>> parameters(LstmCell& cell) {
    return {as_span(cell.w_input),  as_span(cell.w_forget), as_span(cell.w_output),
            as_span(cell.w_cell),   as_span(cell.b_input),  as_span(cell.b_forget),
            as_span(cell.b_output), as_span(cell.b_cell)};
}

std::vector<std::span<double>> parameters(LstmGrad& grad) {
    return {as_span(grad.w_input),  as_span(grad.w_forget), as_span(grad.w_output),
            as_span(grad.w_cell),   as_span(grad.b_input),  as_span(grad.b_forget),
            as_span(grad.b_output), as_span(grad.b_cell)};
}

}  // namespace neurocap::nn
