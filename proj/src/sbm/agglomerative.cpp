#include "citegrowth/sbm/agglomerative.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "citegrowth/sbm/mcmc.hpp"

namespace citegrowth::sbm {

namespace {

// merge-target proposal for block r: follow a random edge incident to r
// to a block t, then sample from t's incident blocks with eps smoothing
// (the node-move proposal applied at the block level)
int sample_incident(const BlockState& state, int t, Rng& rng) {
    long long total = state.e_out(t) + state.e_in(t);
    long long x = static_cast<long long>(rng.uniform_below(static_cast<std::uint64_t>(total)));
    for (const auto& [s, e] : state.row(t)) {
        if (x < e) return s;
        x -= e;
    }
    for (const auto& [s, e] : state.col(t)) {
        if (x < e) return s;
        x -= e;
    }
    return t;  // unreachable for consistent statistics
}

int propose_merge_target(const BlockState& state, int r, double epsilon, Rng& rng) {
    int n_blocks = state.num_blocks();
    if (state.e_out(r) + state.e_in(r) == 0) {
        return static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n_blocks)));
    }
    int t = sample_incident(state, r, rng);
    double e_t = static_cast<double>(state.e_out(t) + state.e_in(t));
    double p_uniform = epsilon * n_blocks / (e_t + epsilon * n_blocks);
    if (e_t == 0.0 || rng.uniform01() < p_uniform) {
        return static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n_blocks)));
    }
    return sample_incident(state, t, rng);
}

}  // namespace

BlockState agglomerative_fit(const NetworkPtr& net, int n_target, const AgglomConfig& config,
                             Rng& rng) {
    if (n_target < 1 || n_target > std::max(1, net->n_nodes)) {
        throw std::invalid_argument("agglomerative_fit: target block count out of range");
    }
    BlockState state = BlockState::singleton(net, config.mode);
    if (state.num_nonempty() <= n_target) {
        return state;
    }

    SweepConfig sweep_cfg;
    sweep_cfg.epsilon = config.epsilon;
    sweep_cfg.allow_vacate = false;  // keep the block count pinned between rounds

    while (state.num_nonempty() > n_target) {
        int round_target = std::max(
            n_target, static_cast<int>(std::ceil(state.num_nonempty() / config.shrink)));

        while (state.num_nonempty() > round_target) {
            // best candidate merge per surviving block
            using Candidate = std::tuple<double, int, int>;  // (delta, from, to)
            std::vector<Candidate> candidates;
            int n_blocks = state.num_blocks();
            for (int r = 0; r < n_blocks; ++r) {
                if (state.block_size(r) == 0) continue;
                double best_delta = 0.0;
                int best_target = -1;
                for (int k = 0; k < config.merge_candidates; ++k) {
                    int s = propose_merge_target(state, r, config.epsilon, rng);
                    if (s == r || state.block_size(s) == 0) continue;
                    double delta = state.delta_merge(r, s);
                    if (best_target < 0 || delta < best_delta) {
                        best_delta = delta;
                        best_target = s;
                    }
                }
                if (best_target >= 0) {
                    candidates.emplace_back(best_delta, r, best_target);
                }
            }
            std::sort(candidates.begin(), candidates.end());

            // apply cheapest merges first, redirecting through blocks that
            // were already absorbed this pass
            std::vector<int> parent(n_blocks);
            for (int r = 0; r < n_blocks; ++r) parent[r] = r;
            auto find = [&](int r) {
                while (parent[r] != r) {
                    parent[r] = parent[parent[r]];
                    r = parent[r];
                }
                return r;
            };
            int applied = 0;
            for (const auto& [delta, r, s] : candidates) {
                if (state.num_nonempty() <= round_target) break;
                if (find(r) != r) continue;  // already merged away
                int target = find(s);
                if (target == r) continue;
                state.apply_merge(r, target);
                parent[r] = target;
                ++applied;
            }
            if (applied == 0) {
                // degenerate proposals; force progress with the first two
                // surviving blocks
                int first = -1;
                for (int r = 0; r < n_blocks; ++r) {
                    if (state.block_size(r) == 0) continue;
                    if (first < 0) {
                        first = r;
                    } else {
                        state.apply_merge(r, first);
                        break;
                    }
                }
            }
        }

        state = state.compacted();
        for (int i = 0; i < config.sweeps_per_round; ++i) {
            mcmc_sweep(state, rng, sweep_cfg);
        }
    }
    return state.compacted();
}

}  // namespace citegrowth::sbm
