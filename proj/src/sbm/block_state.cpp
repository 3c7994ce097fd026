#include "citegrowth/sbm/block_state.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "citegrowth/rng.hpp"
#include "citegrowth/sbm/dl_math.hpp"

namespace citegrowth::sbm {

BlockState::BlockState(NetworkPtr net_ptr, std::vector<int> labels, int n_blocks, Objective mode)
    : net_(std::move(net_ptr)), mode_(mode), b_(std::move(labels)), B_(n_blocks) {
    const Network& net = *net_;
    if (static_cast<int>(b_.size()) != net.n_nodes) {
        throw std::invalid_argument("block_state: label array size does not match node count");
    }
    if (B_ < 1 || B_ > std::max(1, net.n_nodes)) {
        throw std::invalid_argument("block_state: block count out of range");
    }
    rows_.assign(B_, {});
    cols_.assign(B_, {});
    e_out_.assign(B_, 0);
    e_in_.assign(B_, 0);
    n_.assign(B_, 0);
    for (int v = 0; v < net.n_nodes; ++v) {
        int r = b_[v];
        if (r < 0 || r >= B_) {
            throw std::invalid_argument("block_state: label out of range at node " + std::to_string(v));
        }
        n_[r] += 1;
        e_out_[r] += net.k_out[v];
        e_in_[r] += net.k_in[v];
    }
    for (int u = 0; u < net.n_nodes; ++u) {
        for (const auto& [v, m] : net.out_edges[u]) {
            rows_[b_[u]][b_[v]] += m;
            cols_[b_[v]][b_[u]] += m;
        }
    }
    for (int r = 0; r < B_; ++r) {
        if (n_[r] > 0) ++B_nonempty_;
    }
    dc_constant_ = -static_cast<double>(net.n_edges);
    for (int v = 0; v < net.n_nodes; ++v) {
        dc_constant_ -= log_factorial(net.k_in[v]) + log_factorial(net.k_out[v]);
    }
}

BlockState BlockState::singleton(NetworkPtr net, Objective mode) {
    int n = net->n_nodes;
    std::vector<int> labels(n);
    for (int v = 0; v < n; ++v) labels[v] = v;
    return BlockState(std::move(net), std::move(labels), std::max(1, n), mode);
}

BlockState BlockState::random(NetworkPtr net, int n_blocks, Objective mode, std::uint64_t seed) {
    Rng rng(seed);
    int n = net->n_nodes;
    std::vector<int> labels(n);
    for (int v = 0; v < n; ++v) {
        labels[v] = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n_blocks)));
    }
    return BlockState(std::move(net), std::move(labels), n_blocks, mode);
}

long long BlockState::e_between(int r, int s) const {
    if (r >= B_ || s >= B_) return 0;
    auto it = rows_[r].find(s);
    return it == rows_[r].end() ? 0 : it->second;
}

double BlockState::entropy() const {
    if (mode_ == Objective::degree_corrected) {
        // S = -E - sum_v ln(k_in!) ln(k_out!) - sum_rs e_rs ln(e_rs / (e_out_r e_in_s))
        double s = dc_constant_;
        for (int r = 0; r < B_; ++r) {
            for (const auto& [c, e] : rows_[r]) {
                if (e <= 0) continue;
                double denom = static_cast<double>(e_out_[r]) * static_cast<double>(e_in_[c]);
                s -= static_cast<double>(e) * std::log(static_cast<double>(e) / denom);
            }
        }
        return s;
    }
    // multigraph: sum_rs ln C(n_r n_s + e_rs - 1, e_rs)
    double s = 0.0;
    for (int r = 0; r < B_; ++r) {
        for (const auto& [c, e] : rows_[r]) {
            s += lmultiset(static_cast<double>(n_[r]) * static_cast<double>(n_[c]), e);
        }
    }
    return s;
}

double BlockState::closure_dl() const {
    double slots = static_cast<double>(B_nonempty_) * static_cast<double>(B_nonempty_);
    return lmultiset(slots, net_->n_edges);
}

double BlockState::partition_dl() const {
    long long n_total = net_->n_nodes;
    double l = lbinom(static_cast<double>(n_total - 1), static_cast<double>(B_nonempty_ - 1));
    l += log_factorial(n_total);
    for (int r = 0; r < B_; ++r) {
        l -= log_factorial(n_[r]);
    }
    return l;
}

EdgeDelta BlockState::move_edge_delta(int v, int s) const {
    int r = b_[v];
    EdgeDelta delta;
    for (const auto& [u, m] : net_->out_edges[v]) {
        if (u == v) continue;
        int t = b_[u];
        delta[{r, t}] -= m;
        delta[{s, t}] += m;
    }
    for (const auto& [u, m] : net_->in_edges[v]) {
        if (u == v) continue;
        int t = b_[u];
        delta[{t, r}] -= m;
        delta[{t, s}] += m;
    }
    long long self = net_->self_mult[v];
    if (self > 0) {
        delta[{r, r}] -= self;
        delta[{s, s}] += self;
    }
    return delta;
}

EdgeDelta BlockState::merge_edge_delta(int r, int s) const {
    EdgeDelta delta;
    for (const auto& [t, e] : rows_[r]) {
        delta[{r, t}] -= e;
        delta[{s, t == r ? s : t}] += e;
    }
    for (const auto& [t, e] : cols_[r]) {
        if (t == r) continue;  // diagonal handled via the row
        delta[{t, r}] -= e;
        delta[{t == s ? s : t, s}] += e;
    }
    return delta;
}

double BlockState::entropy_delta(const EdgeDelta& edge_delta, int r, int s, long long moved_out,
                                 long long moved_in, long long moved_nodes) const {
    auto row_entry = [&](int a, int c) -> long long {
        if (a >= B_ || c >= B_) return 0;
        auto it = rows_[a].find(c);
        return it == rows_[a].end() ? 0 : it->second;
    };
    if (mode_ == Objective::degree_corrected) {
        double ds = 0.0;
        for (const auto& [ac, d] : edge_delta) {
            if (d == 0) continue;
            long long e = row_entry(ac.first, ac.second);
            ds -= xlogx(e + d) - xlogx(e);
        }
        long long eo_r = e_out_[r];
        long long ei_r = e_in_[r];
        long long eo_s = s < B_ ? e_out_[s] : 0;
        long long ei_s = s < B_ ? e_in_[s] : 0;
        ds += xlogx(eo_r - moved_out) - xlogx(eo_r);
        ds += xlogx(eo_s + moved_out) - xlogx(eo_s);
        ds += xlogx(ei_r - moved_in) - xlogx(ei_r);
        ds += xlogx(ei_s + moved_in) - xlogx(ei_s);
        return ds;
    }
    // multigraph terms depend on block sizes, so every nonzero pair
    // touching r or s changes, not just the pairs whose counts change
    std::set<std::pair<int, int>> affected;
    auto add_block = [&](int a) {
        if (a >= B_) return;
        for (const auto& [c, e] : rows_[a]) affected.insert({a, c});
        for (const auto& [c, e] : cols_[a]) affected.insert({c, a});
    };
    add_block(r);
    add_block(s);
    for (const auto& [ac, d] : edge_delta) {
        if (d != 0) affected.insert(ac);
    }
    auto size_of = [&](int a) -> long long { return a < B_ ? n_[a] : 0; };
    auto new_size = [&](int a) -> long long {
        if (a == r) return n_[r] - moved_nodes;
        if (a == s) return size_of(s) + moved_nodes;
        return size_of(a);
    };
    double ds = 0.0;
    for (const auto& ac : affected) {
        long long e = row_entry(ac.first, ac.second);
        long long d = 0;
        auto it = edge_delta.find(ac);
        if (it != edge_delta.end()) d = it->second;
        double slots_old = static_cast<double>(size_of(ac.first)) * static_cast<double>(size_of(ac.second));
        double slots_new = static_cast<double>(new_size(ac.first)) * static_cast<double>(new_size(ac.second));
        ds += lmultiset(slots_new, e + d) - lmultiset(slots_old, e);
    }
    return ds;
}

double BlockState::transfer_delta(const EdgeDelta& edge_delta, int r, int s, long long moved_out,
                                  long long moved_in, long long moved_nodes) const {
    double d = entropy_delta(edge_delta, r, s, moved_out, moved_in, moved_nodes);
    long long n_r = n_[r];
    long long n_s = s < B_ ? n_[s] : 0;
    d += log_factorial(n_r) - log_factorial(n_r - moved_nodes);
    d += log_factorial(n_s) - log_factorial(n_s + moved_nodes);
    int b_after = B_nonempty_;
    if (n_r - moved_nodes == 0) --b_after;
    if (n_s == 0 && moved_nodes > 0) ++b_after;
    if (b_after != B_nonempty_) {
        double n_total = static_cast<double>(net_->n_nodes);
        d += lbinom(n_total - 1, static_cast<double>(b_after - 1)) -
             lbinom(n_total - 1, static_cast<double>(B_nonempty_ - 1));
        double slots_after = static_cast<double>(b_after) * static_cast<double>(b_after);
        double slots_before = static_cast<double>(B_nonempty_) * static_cast<double>(B_nonempty_);
        d += lmultiset(slots_after, net_->n_edges) - lmultiset(slots_before, net_->n_edges);
    }
    return d;
}

double BlockState::delta_move(int v, int s) const {
    if (v < 0 || v >= net_->n_nodes) {
        throw std::invalid_argument("delta_move: node " + std::to_string(v) + " out of range");
    }
    if (s < 0 || s > B_) {
        throw std::invalid_argument("delta_move: target block " + std::to_string(s) + " out of range");
    }
    int r = b_[v];
    if (s == r) return 0.0;
    EdgeDelta delta = move_edge_delta(v, s);
    return transfer_delta(delta, r, s, net_->k_out[v], net_->k_in[v], 1);
}

double BlockState::delta_merge(int r, int s) const {
    if (r < 0 || r >= B_ || s < 0 || s >= B_) {
        throw std::invalid_argument("delta_merge: block out of range");
    }
    if (r == s || n_[r] == 0) return 0.0;
    EdgeDelta delta = merge_edge_delta(r, s);
    return transfer_delta(delta, r, s, e_out_[r], e_in_[r], n_[r]);
}

void BlockState::apply_transfer(const EdgeDelta& edge_delta, int r, int s, long long moved_out,
                                long long moved_in, long long moved_nodes) {
    for (const auto& [ac, d] : edge_delta) {
        if (d == 0) continue;
        auto [a, c] = ac;
        long long e = (rows_[a][c] += d);
        if (e == 0) rows_[a].erase(c);
        long long e2 = (cols_[c][a] += d);
        if (e2 == 0) cols_[c].erase(a);
    }
    bool r_emptied = (n_[r] - moved_nodes == 0);
    bool s_created = (n_[s] == 0 && moved_nodes > 0);
    e_out_[r] -= moved_out;
    e_out_[s] += moved_out;
    e_in_[r] -= moved_in;
    e_in_[s] += moved_in;
    n_[r] -= moved_nodes;
    n_[s] += moved_nodes;
    if (r_emptied) --B_nonempty_;
    if (s_created) ++B_nonempty_;
}

void BlockState::apply_move(int v, int s) {
    if (v < 0 || v >= net_->n_nodes) {
        throw std::invalid_argument("apply_move: node out of range");
    }
    if (s < 0 || s > B_) {
        throw std::invalid_argument("apply_move: target block out of range");
    }
    int r = b_[v];
    if (s == r) return;
    EdgeDelta delta = move_edge_delta(v, s);
    if (s == B_) {
        ++B_;
        rows_.emplace_back();
        cols_.emplace_back();
        e_out_.push_back(0);
        e_in_.push_back(0);
        n_.push_back(0);
    }
    apply_transfer(delta, r, s, net_->k_out[v], net_->k_in[v], 1);
    b_[v] = s;
}

void BlockState::apply_merge(int r, int s) {
    if (r < 0 || r >= B_ || s < 0 || s >= B_) {
        throw std::invalid_argument("apply_merge: block out of range");
    }
    if (r == s || n_[r] == 0) return;
    EdgeDelta delta = merge_edge_delta(r, s);
    apply_transfer(delta, r, s, e_out_[r], e_in_[r], n_[r]);
    for (auto& label : b_) {
        if (label == r) label = s;
    }
}

BlockState BlockState::compacted() const {
    std::vector<int> remap(B_, -1);
    std::vector<int> labels(b_.size());
    int next = 0;
    for (std::size_t v = 0; v < b_.size(); ++v) {
        int r = b_[v];
        if (remap[r] < 0) remap[r] = next++;
        labels[v] = remap[r];
    }
    return BlockState(net_, std::move(labels), std::max(1, next), mode_);
}

NetworkPtr BlockState::block_graph() const {
    if (B_nonempty_ != B_) {
        throw std::logic_error("block_graph: state must be compacted first");
    }
    std::vector<std::pair<std::pair<int, int>, long long>> edges;
    for (int r = 0; r < B_; ++r) {
        for (const auto& [c, e] : rows_[r]) {
            edges.push_back({{r, c}, e});
        }
    }
    return Network::from_multi_edges(B_, edges);
}

void BlockState::check_consistency() const {
    BlockState fresh(net_, b_, B_, mode_);
    auto fail = [](const std::string& what) {
        throw std::runtime_error("block_state: inconsistent statistics: " + what);
    };
    auto nonzero = [](const std::map<int, long long>& m) {
        std::map<int, long long> out;
        for (const auto& [k, v] : m) {
            if (v != 0) out[k] = v;
        }
        return out;
    };
    for (int r = 0; r < B_; ++r) {
        if (nonzero(rows_[r]) != nonzero(fresh.rows_[r])) fail("row " + std::to_string(r));
        if (nonzero(cols_[r]) != nonzero(fresh.cols_[r])) fail("col " + std::to_string(r));
        if (e_out_[r] != fresh.e_out_[r]) fail("e_out " + std::to_string(r));
        if (e_in_[r] != fresh.e_in_[r]) fail("e_in " + std::to_string(r));
        if (n_[r] != fresh.n_[r]) fail("n " + std::to_string(r));
    }
    if (B_nonempty_ != fresh.B_nonempty_) fail("nonempty block count");
    long long total_n = 0, total_e = 0;
    for (int r = 0; r < B_; ++r) {
        total_n += n_[r];
        for (const auto& [c, e] : rows_[r]) total_e += e;
    }
    if (total_n != net_->n_nodes) fail("node total");
    if (total_e != net_->n_edges) fail("edge total");
}

}  // namespace citegrowth::sbm
