#pragma once

#include <cstdint>

#include "citegrowth/rng.hpp"
#include "citegrowth/sbm/block_state.hpp"

namespace citegrowth::sbm {

struct AgglomConfig {
    double shrink = 2.0;        // block count divisor per merge round
    int merge_candidates = 5;   // candidate merges evaluated per block
    int sweeps_per_round = 10;  // greedy sweeps between merge rounds
    double epsilon = 1.0;
    Objective mode = Objective::degree_corrected;
};

/// Fits exactly `n_target` blocks by starting from the singleton partition
/// and alternating best-merge rounds with greedy sweeps. The result is
/// compacted (labels 0..n_target-1, no empty blocks).
BlockState agglomerative_fit(const NetworkPtr& net, int n_target, const AgglomConfig& config,
                             Rng& rng);

}  // namespace citegrowth::sbm
