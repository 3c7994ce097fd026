#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "citegrowth/sbm/network.hpp"

namespace citegrowth::sbm {

/// Which single-level objective the state minimizes. Level 0 uses the
/// degree-corrected sparse form on the citation graph; levels above use
/// the plain multigraph form on the block multigraph below them.
enum class Objective { degree_corrected, multigraph };

using EdgeDelta = std::map<std::pair<int, int>, long long>;

/// One level of a partition: node labels plus the block-level statistics
/// (e_rs, degree totals, sizes) the objective and its deltas are computed
/// from. Statistics are maintained incrementally by moves and merges and
/// can be cross-checked against a from-scratch rebuild.
class BlockState {
public:
    BlockState(NetworkPtr net, std::vector<int> labels, int n_blocks, Objective mode);

    static BlockState singleton(NetworkPtr net, Objective mode);
    static BlockState random(NetworkPtr net, int n_blocks, Objective mode, std::uint64_t seed);

    const Network& net() const { return *net_; }
    Objective mode() const { return mode_; }
    const std::vector<int>& labels() const { return b_; }
    int label_of(int v) const { return b_[v]; }
    int num_blocks() const { return B_; }            // allocated label space
    int num_nonempty() const { return B_nonempty_; }

    long long block_size(int r) const { return n_[r]; }
    long long e_out(int r) const { return e_out_[r]; }
    long long e_in(int r) const { return e_in_[r]; }
    long long e_between(int r, int s) const;
    const std::map<int, long long>& row(int r) const { return rows_[r]; }
    const std::map<int, long long>& col(int s) const { return cols_[s]; }

    /// entropy S of this level under the configured objective
    double entropy() const;
    /// partition description length L of this level
    double partition_dl() const;
    /// cost of the closing single-block level above this one: the multiset
    /// coefficient of placing E edges into B^2 block-pair slots. Without it
    /// the flat objective is minimized by the identity partition, since
    /// the e_rs matrix would be described for free.
    double closure_dl() const;
    /// objective optimized by moves, merges and block-count selection:
    /// the description length of this level closed with a one-block top
    double dl() const { return entropy() + partition_dl() + closure_dl(); }

    /// dl(after) - dl(before) for moving node v to block s, without
    /// mutating the state. s == num_blocks() targets a fresh block.
    double delta_move(int v, int s) const;
    void apply_move(int v, int s);

    /// dl change for absorbing block r into block s
    double delta_merge(int r, int s) const;
    void apply_merge(int r, int s);

    /// renumbers blocks by first occurrence and drops empty ones
    BlockState compacted() const;

    /// block multigraph of this level; requires a compacted state
    NetworkPtr block_graph() const;

    /// recomputes all statistics from the labels and throws on mismatch
    void check_consistency() const;

private:
    double entropy_delta(const EdgeDelta& edge_delta, int r, int s, long long moved_out,
                         long long moved_in, long long moved_nodes) const;
    double transfer_delta(const EdgeDelta& edge_delta, int r, int s, long long moved_out,
                          long long moved_in, long long moved_nodes) const;
    void apply_transfer(const EdgeDelta& edge_delta, int r, int s, long long moved_out,
                        long long moved_in, long long moved_nodes);
    EdgeDelta move_edge_delta(int v, int s) const;
    EdgeDelta merge_edge_delta(int r, int s) const;

    NetworkPtr net_;
    Objective mode_;
    std::vector<int> b_;
    int B_ = 0;
    int B_nonempty_ = 0;
    std::vector<std::map<int, long long>> rows_;  // r -> {s: e_rs}
    std::vector<std::map<int, long long>> cols_;  // s -> {r: e_rs}
    std::vector<long long> e_out_;
    std::vector<long long> e_in_;
    std::vector<long long> n_;
    double dc_constant_ = 0.0;  // -E - sum_v ln(k_in!) + ln(k_out!), fixed by the graph
};

}  // namespace citegrowth::sbm
