#include "citegrowth/forecast/train.hpp"

#include <cmath>
#include <stdexcept>

namespace citegrowth::forecast {

std::vector<Sample> make_windows(const std::vector<double>& counts, int window) {
    if (window < 1) {
        throw std::invalid_argument("make_windows: window must be positive");
    }
    std::vector<Sample> samples;
    if (static_cast<int>(counts.size()) < window + 1) {
        return samples;  // too short; callers warn
    }
    for (std::size_t i = 0; i + window < counts.size(); ++i) {
        Sample s;
        s.inputs.assign(counts.begin() + i, counts.begin() + i + window);
        s.target = counts[i + window];
        samples.push_back(std::move(s));
    }
    return samples;
}

Gradients Gradients::zeros_like(const LstmModel& model) {
    Gradients g;
    for (const auto& layer : model.layers) {
        LstmLayerParams zero;
        zero.input_size = layer.input_size;
        zero.hidden_size = layer.hidden_size;
        zero.w_x.assign(layer.w_x.size(), 0.0);
        zero.w_h.assign(layer.w_h.size(), 0.0);
        zero.bias.assign(layer.bias.size(), 0.0);
        g.layers.push_back(std::move(zero));
    }
    g.head_w.assign(model.head_w.size(), 0.0);
    g.head_b = 0.0;
    return g;
}

double Gradients::squared_norm() const {
    double total = head_b * head_b;
    for (double w : head_w) total += w * w;
    for (const auto& layer : layers) {
        for (double w : layer.w_x) total += w * w;
        for (double w : layer.w_h) total += w * w;
        for (double w : layer.bias) total += w * w;
    }
    return total;
}

void Gradients::scale(double factor) {
    head_b *= factor;
    for (double& w : head_w) w *= factor;
    for (auto& layer : layers) {
        for (double& w : layer.w_x) w *= factor;
        for (double& w : layer.w_h) w *= factor;
        for (double& w : layer.bias) w *= factor;
    }
}

double loss_and_gradients(const LstmModel& model, const std::vector<Sample>& batch,
                          Gradients& grads) {
    if (batch.empty()) {
        throw std::invalid_argument("loss_and_gradients: empty batch");
    }
    int n_layers = model.config.n_layers;
    int h = model.config.hidden_size;
    int n_steps = model.config.window;

    grads = Gradients::zeros_like(model);
    double loss = 0.0;
    double inv_n = 1.0 / static_cast<double>(batch.size());

    ForwardCache cache;
    std::vector<std::vector<double>> dh_next(n_layers), dc_next(n_layers);
    std::vector<double> dz(4 * h);
    std::vector<double> dx;

    for (const Sample& sample : batch) {
        double pred = forward(model, sample.inputs, &cache);
        double residual = pred - sample.target;
        loss += residual * residual * inv_n;
        double dpred = 2.0 * residual * inv_n;

        grads.head_b += dpred;
        const StepCache& top_last = cache.steps[n_layers - 1][n_steps - 1];
        for (int k = 0; k < h; ++k) {
            grads.head_w[k] += dpred * top_last.h[k];
        }

        for (int l = 0; l < n_layers; ++l) {
            dh_next[l].assign(h, 0.0);
            dc_next[l].assign(h, 0.0);
        }
        // dx_from_above[t] flows from layer l+1 to layer l at the same step,
        // so iterate layers top-down inside each backward time step
        std::vector<std::vector<double>> dx_from_above(n_steps);

        for (int t = n_steps - 1; t >= 0; --t) {
            for (int l = n_layers - 1; l >= 0; --l) {
                const LstmLayerParams& p = model.layers[l];
                LstmLayerParams& g = grads.layers[l];
                const StepCache& sc = cache.steps[l][t];
                int in_size = p.input_size;

                std::vector<double> dh = dh_next[l];
                if (l == n_layers - 1) {
                    if (t == n_steps - 1) {
                        for (int k = 0; k < h; ++k) dh[k] += dpred * model.head_w[k];
                    }
                } else {
                    for (int k = 0; k < h; ++k) dh[k] += dx_from_above[t][k];
                }

                const double* c_prev = t > 0 ? cache.steps[l][t - 1].c.data() : nullptr;
                for (int k = 0; k < h; ++k) {
                    double go = sc.gate_o[k];
                    double tc = sc.tanh_c[k];
                    double d_o = dh[k] * tc;
                    double dc = dh[k] * go * (1.0 - tc * tc) + dc_next[l][k];
                    double gi = sc.gate_i[k];
                    double gf = sc.gate_f[k];
                    double gg = sc.gate_g[k];
                    double cp = c_prev ? c_prev[k] : 0.0;
                    double d_i = dc * gg;
                    double d_f = dc * cp;
                    double d_g = dc * gi;
                    dc_next[l][k] = dc * gf;
                    dz[k] = d_i * gi * (1.0 - gi);
                    dz[h + k] = d_f * gf * (1.0 - gf);
                    dz[2 * h + k] = d_g * (1.0 - gg * gg);
                    dz[3 * h + k] = d_o * go * (1.0 - go);
                }

                const double* h_prev = t > 0 ? cache.steps[l][t - 1].h.data() : nullptr;
                dx.assign(in_size, 0.0);
                std::fill(dh_next[l].begin(), dh_next[l].end(), 0.0);
                for (int j = 0; j < 4 * h; ++j) {
                    double dzj = dz[j];
                    if (dzj == 0.0) continue;
                    g.bias[j] += dzj;
                    double* gwx = &g.w_x[static_cast<std::size_t>(j) * in_size];
                    const double* wx = &p.w_x[static_cast<std::size_t>(j) * in_size];
                    const double* xv = sc.x.data();
                    for (int k = 0; k < in_size; ++k) {
                        gwx[k] += dzj * xv[k];
                        dx[k] += wx[k] * dzj;
                    }
                    double* gwh = &g.w_h[static_cast<std::size_t>(j) * h];
                    const double* wh = &p.w_h[static_cast<std::size_t>(j) * h];
                    for (int k = 0; k < h; ++k) {
                        if (h_prev) gwh[k] += dzj * h_prev[k];
                        dh_next[l][k] += wh[k] * dzj;
                    }
                }
                if (l > 0) {
                    dx_from_above[t] = dx;
                }
            }
        }
    }
    return loss;
}

std::vector<double> train(LstmModel& model, const std::vector<Sample>& samples,
                          const TrainConfig& config) {
    if (samples.empty()) {
        throw std::invalid_argument("train: need at least one sample");
    }
    std::vector<Sample> normalized = samples;
    for (Sample& s : normalized) {
        for (double& x : s.inputs) x = model.normalizer.normalize(x);
        s.target = model.normalizer.normalize(s.target);
    }

    Gradients m = Gradients::zeros_like(model);
    Gradients v = Gradients::zeros_like(model);
    Gradients grads = Gradients::zeros_like(model);
    const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    double beta1_t = 1.0, beta2_t = 1.0;

    std::vector<double> curve;
    curve.reserve(config.epochs);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double loss = loss_and_gradients(model, normalized, grads);
        if (!std::isfinite(loss)) {
            throw std::runtime_error("train: loss diverged to non-finite at epoch " +
                                     std::to_string(epoch) + "; lower the learning rate");
        }
        curve.push_back(loss);

        double norm = std::sqrt(grads.squared_norm());
        if (config.clip_norm > 0.0 && norm > config.clip_norm) {
            grads.scale(config.clip_norm / norm);
        }
        beta1_t *= beta1;
        beta2_t *= beta2;
        double correction = std::sqrt(1.0 - beta2_t) / (1.0 - beta1_t);
        double step = config.learning_rate * correction;

        auto adam_update = [&](double& param, double& m_v, double& v_v, double grad) {
            m_v = beta1 * m_v + (1.0 - beta1) * grad;
            v_v = beta2 * v_v + (1.0 - beta2) * grad * grad;
            param -= step * m_v / (std::sqrt(v_v) + eps);
        };
        for (int l = 0; l < model.config.n_layers; ++l) {
            auto& pl = model.layers[l];
            auto& gl = grads.layers[l];
            for (std::size_t i = 0; i < pl.w_x.size(); ++i) adam_update(pl.w_x[i], m.layers[l].w_x[i], v.layers[l].w_x[i], gl.w_x[i]);
            for (std::size_t i = 0; i < pl.w_h.size(); ++i) adam_update(pl.w_h[i], m.layers[l].w_h[i], v.layers[l].w_h[i], gl.w_h[i]);
            for (std::size_t i = 0; i < pl.bias.size(); ++i) adam_update(pl.bias[i], m.layers[l].bias[i], v.layers[l].bias[i], gl.bias[i]);
        }
        for (std::size_t i = 0; i < model.head_w.size(); ++i) {
            adam_update(model.head_w[i], m.head_w[i], v.head_w[i], grads.head_w[i]);
        }
        adam_update(model.head_b, m.head_b, v.head_b, grads.head_b);
    }
    return curve;
}

SeriesPredictions predict_series(const LstmModel& model, const std::vector<double>& counts,
                                 int split_index, bool recursive) {
    int window = model.config.window;
    if (split_index < window || split_index > static_cast<int>(counts.size())) {
        throw std::invalid_argument("predict_series: split index must leave at least one full "
                                    "window before it");
    }
    SeriesPredictions out;
    std::vector<double> history(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        history[i] = model.normalizer.normalize(counts[i]);
    }
    std::vector<double> buf(window);
    for (int t = window; t < static_cast<int>(counts.size()); ++t) {
        std::copy(history.begin() + (t - window), history.begin() + t, buf.begin());
        double raw = forward(model, buf);
        double pred = std::max(0.0, model.normalizer.denormalize(raw));
        if (t < split_index) {
            out.train_pred.push_back(pred);
        } else {
            out.test_pred.push_back(pred);
            if (recursive) {
                history[t] = model.normalizer.normalize(pred);
            }
        }
    }
    return out;
}

}  // namespace citegrowth::forecast
