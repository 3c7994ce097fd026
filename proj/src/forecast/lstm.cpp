#include "citegrowth/forecast/lstm.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "citegrowth/rng.hpp"

namespace citegrowth::forecast {

Normalizer Normalizer::fit(const std::vector<double>& train_segment) {
    if (train_segment.empty()) {
        throw std::invalid_argument("normalizer: empty training segment");
    }
    double lo = train_segment[0], hi = train_segment[0];
    for (double x : train_segment) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    Normalizer n;
    n.offset = lo;
    n.scale = hi - lo;
    return n;
}

LstmModel LstmModel::init(const ModelConfig& config, std::uint64_t seed) {
    if (config.n_layers < 1 || config.hidden_size < 1 || config.window < 1) {
        throw std::invalid_argument("lstm: invalid model configuration");
    }
    Rng rng(seed);
    LstmModel model;
    model.config = config;
    int h = config.hidden_size;
    double bound = 1.0 / std::sqrt(static_cast<double>(h));
    for (int l = 0; l < config.n_layers; ++l) {
        LstmLayerParams layer;
        layer.input_size = l == 0 ? 1 : h;
        layer.hidden_size = h;
        layer.w_x.resize(static_cast<std::size_t>(4 * h) * layer.input_size);
        layer.w_h.resize(static_cast<std::size_t>(4 * h) * h);
        layer.bias.assign(4 * h, 0.0);
        for (auto& w : layer.w_x) w = rng.uniform(-bound, bound);
        for (auto& w : layer.w_h) w = rng.uniform(-bound, bound);
        for (int j = h; j < 2 * h; ++j) layer.bias[j] = 1.0;  // forget gates open
        model.layers.push_back(std::move(layer));
    }
    model.head_w.resize(h);
    for (auto& w : model.head_w) w = rng.uniform(-bound, bound);
    model.head_b = 0.0;
    return model;
}

std::size_t LstmModel::n_params() const {
    std::size_t n = head_w.size() + 1;
    for (const auto& layer : layers) n += layer.n_params();
    return n;
}

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

double forward(const LstmModel& model, const std::vector<double>& window, ForwardCache* cache) {
    if (static_cast<int>(window.size()) != model.config.window) {
        throw std::invalid_argument("forward: window length " + std::to_string(window.size()) +
                                    " does not match configured " +
                                    std::to_string(model.config.window));
    }
    int n_layers = model.config.n_layers;
    int h = model.config.hidden_size;
    int n_steps = model.config.window;
    if (cache) {
        cache->steps.assign(n_layers, std::vector<StepCache>(n_steps));
    }

    std::vector<std::vector<double>> hidden(n_layers, std::vector<double>(h, 0.0));
    std::vector<std::vector<double>> cell(n_layers, std::vector<double>(h, 0.0));
    std::vector<double> input;
    std::vector<double> z(4 * h);

    for (int t = 0; t < n_steps; ++t) {
        input.assign(1, window[t]);
        for (int l = 0; l < n_layers; ++l) {
            const LstmLayerParams& p = model.layers[l];
            int in_size = p.input_size;
            for (int j = 0; j < 4 * h; ++j) {
                double acc = p.bias[j];
                const double* wx = &p.w_x[static_cast<std::size_t>(j) * in_size];
                for (int k = 0; k < in_size; ++k) acc += wx[k] * input[k];
                const double* wh = &p.w_h[static_cast<std::size_t>(j) * h];
                const double* hp = hidden[l].data();
                for (int k = 0; k < h; ++k) acc += wh[k] * hp[k];
                z[j] = acc;
            }
            StepCache* sc = cache ? &cache->steps[l][t] : nullptr;
            if (sc) {
                sc->x = input;
                sc->gate_i.resize(h);
                sc->gate_f.resize(h);
                sc->gate_g.resize(h);
                sc->gate_o.resize(h);
                sc->c.resize(h);
                sc->tanh_c.resize(h);
                sc->h.resize(h);
            }
            std::vector<double>& hl = hidden[l];
            std::vector<double>& cl = cell[l];
            for (int k = 0; k < h; ++k) {
                double gi = sigmoid(z[k]);
                double gf = sigmoid(z[h + k]);
                double gg = std::tanh(z[2 * h + k]);
                double go = sigmoid(z[3 * h + k]);
                double c_new = gf * cl[k] + gi * gg;
                double tc = std::tanh(c_new);
                double h_new = go * tc;
                if (!std::isfinite(c_new) || !std::isfinite(h_new)) {
                    throw std::runtime_error("forward: non-finite activation in layer " +
                                             std::to_string(l) + ", step " + std::to_string(t));
                }
                cl[k] = c_new;
                hl[k] = h_new;
                if (sc) {
                    sc->gate_i[k] = gi;
                    sc->gate_f[k] = gf;
                    sc->gate_g[k] = gg;
                    sc->gate_o[k] = go;
                    sc->c[k] = c_new;
                    sc->tanh_c[k] = tc;
                    sc->h[k] = h_new;
                }
            }
            input = hidden[l];
        }
    }

    double prediction = model.head_b;
    for (int k = 0; k < h; ++k) prediction += model.head_w[k] * hidden[n_layers - 1][k];
    if (!std::isfinite(prediction)) {
        throw std::runtime_error("forward: non-finite prediction at the output head");
    }
    if (cache) cache->prediction = prediction;
    return prediction;
}

std::string model_to_json(const LstmModel& model, std::uint64_t seed, const std::string& config_echo) {
    nlohmann::json j;
    j["format"] = "citegrowth-lstm";
    j["version"] = 1;
    j["seed"] = seed;
    if (!config_echo.empty()) j["config_echo"] = config_echo;
    j["config"] = {{"n_layers", model.config.n_layers},
                   {"hidden_size", model.config.hidden_size},
                   {"window", model.config.window}};
    j["normalizer"] = {{"offset", model.normalizer.offset}, {"scale", model.normalizer.scale}};
    j["head_w"] = model.head_w;
    j["head_b"] = model.head_b;
    j["layers"] = nlohmann::json::array();
    for (const auto& layer : model.layers) {
        j["layers"].push_back({{"input_size", layer.input_size},
                               {"hidden_size", layer.hidden_size},
                               {"w_x", layer.w_x},
                               {"w_h", layer.w_h},
                               {"bias", layer.bias}});
    }
    return j.dump();
}

LstmModel model_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.value("format", "") != "citegrowth-lstm" || j.value("version", 0) != 1) {
        throw std::runtime_error("checkpoint: unknown format or version");
    }
    LstmModel model;
    model.config.n_layers = j.at("config").at("n_layers").get<int>();
    model.config.hidden_size = j.at("config").at("hidden_size").get<int>();
    model.config.window = j.at("config").at("window").get<int>();
    model.normalizer.offset = j.at("normalizer").at("offset").get<double>();
    model.normalizer.scale = j.at("normalizer").at("scale").get<double>();
    model.head_w = j.at("head_w").get<std::vector<double>>();
    model.head_b = j.at("head_b").get<double>();
    for (const auto& jl : j.at("layers")) {
        LstmLayerParams layer;
        layer.input_size = jl.at("input_size").get<int>();
        layer.hidden_size = jl.at("hidden_size").get<int>();
        layer.w_x = jl.at("w_x").get<std::vector<double>>();
        layer.w_h = jl.at("w_h").get<std::vector<double>>();
        layer.bias = jl.at("bias").get<std::vector<double>>();
        model.layers.push_back(std::move(layer));
    }
    if (static_cast<int>(model.layers.size()) != model.config.n_layers) {
        throw std::runtime_error("checkpoint: layer count does not match config");
    }
    return model;
}

}  // namespace citegrowth::forecast
