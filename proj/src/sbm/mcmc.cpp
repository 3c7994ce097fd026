#include "citegrowth/sbm/mcmc.hpp"

#include <cmath>

namespace citegrowth::sbm {

namespace {

// probability of proposing target block s for node v under the current
// statistics: sum over neighbor blocks t of w_t (e_ts + e_st + eps)/(e_t + eps B)
double proposal_prob(const BlockState& state, int v, int s, double epsilon) {
    const Network& net = state.net();
    int n_blocks = state.num_blocks();
    if (net.neighbor_mass[v] == 0) {
        return 1.0 / n_blocks;
    }
    double prob = 0.0;
    for (const auto& [u, m] : net.neighbors[v]) {
        int t = state.label_of(u);
        double mass = static_cast<double>(state.e_between(t, s) + state.e_between(s, t)) + epsilon;
        double total = static_cast<double>(state.e_out(t) + state.e_in(t)) + epsilon * n_blocks;
        prob += static_cast<double>(m) * mass / total;
    }
    return prob / static_cast<double>(net.neighbor_mass[v]);
}

// picks a block adjacent to block t, weighted by e_ts + e_st
int sample_incident_block(const BlockState& state, int t, Rng& rng) {
    long long total = state.e_out(t) + state.e_in(t);
    long long x = static_cast<long long>(rng.uniform_below(static_cast<std::uint64_t>(total)));
    for (const auto& [s, e] : state.row(t)) {
        if (x < e) return s;
        x -= e;
    }
    for (const auto& [r, e] : state.col(t)) {
        if (x < e) return r;
        x -= e;
    }
    return t;  // unreachable for consistent statistics
}

int propose_block(const BlockState& state, int v, double epsilon, Rng& rng) {
    const Network& net = state.net();
    int n_blocks = state.num_blocks();
    if (net.neighbor_mass[v] == 0) {
        return static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n_blocks)));
    }
    long long pick = static_cast<long long>(rng.uniform_below(static_cast<std::uint64_t>(net.neighbor_mass[v])));
    int t = -1;
    for (const auto& [u, m] : net.neighbors[v]) {
        if (pick < m) {
            t = state.label_of(u);
            break;
        }
        pick -= m;
    }
    double e_t = static_cast<double>(state.e_out(t) + state.e_in(t));
    double p_uniform = epsilon * n_blocks / (e_t + epsilon * n_blocks);
    if (e_t == 0.0 || rng.uniform01() < p_uniform) {
        return static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n_blocks)));
    }
    return sample_incident_block(state, t, rng);
}

}  // namespace

int mcmc_sweep(BlockState& state, Rng& rng, const SweepConfig& config) {
    const Network& net = state.net();
    std::vector<int> order(net.n_nodes);
    for (int v = 0; v < net.n_nodes; ++v) order[v] = v;
    rng.shuffle(order);

    bool greedy = std::isinf(config.beta);
    int accepted = 0;
    for (int v : order) {
        int r = state.label_of(v);
        int s = propose_block(state, v, config.epsilon, rng);
        if (s == r) continue;
        if (!config.allow_vacate && state.block_size(r) == 1) continue;

        double delta = state.delta_move(v, s);
        if (greedy) {
            if (delta < 0.0) {
                state.apply_move(v, s);
                ++accepted;
            }
            continue;
        }
        double p_fwd = proposal_prob(state, v, s, config.epsilon);
        state.apply_move(v, s);
        double p_rev = proposal_prob(state, v, r, config.epsilon);
        double log_accept = -config.beta * delta + std::log(p_rev) - std::log(p_fwd);
        if (log_accept >= 0.0 || rng.uniform01() < std::exp(log_accept)) {
            ++accepted;
        } else {
            state.apply_move(v, r);  // integer statistics restore exactly
        }
    }
    return accepted;
}

}  // namespace citegrowth::sbm
