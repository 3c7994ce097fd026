#pragma once

#include <limits>

#include "citegrowth/rng.hpp"
#include "citegrowth/sbm/block_state.hpp"

namespace citegrowth::sbm {

struct SweepConfig {
    double beta = std::numeric_limits<double>::infinity();  // infinity = greedy
    double epsilon = 1.0;  // proposal smoothing
    bool allow_vacate = true;  // permit moves that empty a block
};

/// One proposed move per node in random order. Proposals follow the
/// neighbor-block distribution p(s|t) = (e_ts + e_st + eps) / (e_t + eps B);
/// acceptance is Metropolis-Hastings with the reverse-proposal correction,
/// or strict descent when beta is infinite. Returns the number of accepted
/// (label-changing) moves.
int mcmc_sweep(BlockState& state, Rng& rng, const SweepConfig& config = {});

}  // namespace citegrowth::sbm
