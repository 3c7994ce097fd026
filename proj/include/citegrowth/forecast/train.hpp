#pragma once

#include <cstdint>
#include <vector>

#include "citegrowth/forecast/lstm.hpp"

namespace citegrowth::forecast {

struct Sample {
    std::vector<double> inputs;  // length = window
    double target = 0.0;
};

/// Sliding windows with stride 1 in chronological order:
/// sample i = (counts[i .. i+W), counts[i+W]). Series shorter than W+1
/// yield an empty list.
std::vector<Sample> make_windows(const std::vector<double>& counts, int window);

/// Gradient holder with the same shape structure as the parameters.
struct Gradients {
    std::vector<LstmLayerParams> layers;
    std::vector<double> head_w;
    double head_b = 0.0;

    static Gradients zeros_like(const LstmModel& model);
    double squared_norm() const;
    void scale(double factor);
};

/// Mean squared error over the batch and its exact gradients via
/// backpropagation through time. Samples must already be normalized.
double loss_and_gradients(const LstmModel& model, const std::vector<Sample>& batch,
                          Gradients& grads);

struct TrainConfig {
    int epochs = 500;
    double learning_rate = 1e-3;
    double clip_norm = 5.0;
    double train_fraction = 0.8;  // chronological split, used by callers
    std::uint64_t seed = 1;
};

/// Full-batch Adam with global gradient-norm clipping. Samples are
/// normalized through the model's normalizer internally. Returns the
/// per-epoch loss curve (loss before each update); throws on divergence.
std::vector<double> train(LstmModel& model, const std::vector<Sample>& samples,
                          const TrainConfig& config);

struct SeriesPredictions {
    // one-step-ahead teacher-forced predictions for positions
    // window .. len-1, denormalized and clamped at zero
    std::vector<double> train_pred;  // positions window .. split_index-1
    std::vector<double> test_pred;   // positions split_index .. len-1
};

/// Teacher-forced one-step-ahead prediction over both segments; inputs are
/// true history, outputs are denormalized counts clamped at zero. In
/// recursive mode the test segment runs free: predictions past the split
/// feed back as inputs instead of the true values.
SeriesPredictions predict_series(const LstmModel& model, const std::vector<double>& counts,
                                 int split_index, bool recursive = false);

}  // namespace citegrowth::forecast
