#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace citegrowth::forecast {

struct ModelConfig {
    int n_layers = 4;
    int hidden_size = 32;
    int window = 5;
};

/// One recurrent layer. Gate order along the 4H axis: input, forget,
/// cell candidate, output.
struct LstmLayerParams {
    int input_size = 0;
    int hidden_size = 0;
    std::vector<double> w_x;   // 4H x input_size, row-major
    std::vector<double> w_h;   // 4H x hidden_size, row-major
    std::vector<double> bias;  // 4H

    std::size_t n_params() const { return w_x.size() + w_h.size() + bias.size(); }
};

/// Affine min-max map fitted on the training segment only. A constant
/// segment maps everything to 0.5 and denormalizes back to the constant.
struct Normalizer {
    double offset = 0.0;  // segment minimum
    double scale = 0.0;   // max - min; 0 marks a degenerate segment

    static Normalizer fit(const std::vector<double>& train_segment);

    double normalize(double x) const { return scale > 0.0 ? (x - offset) / scale : 0.5; }
    double denormalize(double y) const { return scale > 0.0 ? y * scale + offset : offset; }
};

/// Stacked LSTM regressor: scalar in, `n_layers` recurrent layers, linear
/// head on the final hidden state.
struct LstmModel {
    ModelConfig config;
    std::vector<LstmLayerParams> layers;
    std::vector<double> head_w;  // hidden_size
    double head_b = 0.0;
    Normalizer normalizer;

    /// uniform +-1/sqrt(H) weights, zero biases except forget gates at +1
    static LstmModel init(const ModelConfig& config, std::uint64_t seed);

    std::size_t n_params() const;
};

/// Per-step activations kept for backpropagation through time.
struct StepCache {
    std::vector<double> x;  // layer input at this step
    std::vector<double> gate_i, gate_f, gate_g, gate_o;
    std::vector<double> c, tanh_c, h;
};

struct ForwardCache {
    std::vector<std::vector<StepCache>> steps;  // [layer][step]
    double prediction = 0.0;
};

/// Runs the window through the stack (zero initial state) and applies the
/// head to the final hidden state. Inputs must already be normalized.
/// Non-finite activations raise, naming the layer and step.
double forward(const LstmModel& model, const std::vector<double>& window,
               ForwardCache* cache = nullptr);

std::string model_to_json(const LstmModel& model, std::uint64_t seed, const std::string& config_echo);
LstmModel model_from_json(const std::string& text);

}  // namespace citegrowth::forecast
