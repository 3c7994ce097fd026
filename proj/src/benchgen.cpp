#include "citegrowth/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "citegrowth/rng.hpp"

namespace citegrowth::benchgen {

namespace {

std::string synth_id(int v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "P%06d", v);
    return buf;
}

std::vector<int> block_sizes(int n_nodes, int n_blocks, double skew) {
    std::vector<double> weight(n_blocks);
    double w = 1.0;
    for (int b = 0; b < n_blocks; ++b) {
        weight[b] = w;
        w *= (1.0 - skew);
    }
    double total = 0.0;
    for (double x : weight) total += x;
    std::vector<int> sizes(n_blocks, 1);  // every block gets at least one node
    int assigned = n_blocks;
    for (int b = 0; b < n_blocks && assigned < n_nodes; ++b) {
        int extra = static_cast<int>(std::floor(weight[b] / total * (n_nodes - n_blocks)));
        sizes[b] += extra;
        assigned += extra;
    }
    for (int b = 0; assigned < n_nodes; b = (b + 1) % n_blocks) {
        ++sizes[b];
        ++assigned;
    }
    return sizes;
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

PlantedGraph planted_graph(const PlantedSpec& spec) {
    if (spec.n_nodes < 1 || spec.n_blocks < 1 || spec.n_blocks > spec.n_nodes) {
        throw std::invalid_argument("planted_graph: need n_nodes >= n_blocks >= 1");
    }
    if (spec.assortativity < 0.0 || spec.assortativity > 1.0) {
        throw std::invalid_argument("planted_graph: assortativity outside [0, 1]");
    }
    if (spec.year_end < spec.year_start) {
        throw std::invalid_argument("planted_graph: empty year range");
    }

    int n = spec.n_nodes;
    std::vector<int> sizes = block_sizes(n, spec.n_blocks, spec.size_skew);
    std::vector<int> labels(n);
    {
        int v = 0;
        for (int b = 0; b < spec.n_blocks; ++b) {
            for (int i = 0; i < sizes[b]; ++i) labels[v++] = b;
        }
    }

    double pairs_all = 0.5 * n * (n - 1.0);
    double pairs_in = 0.0;
    for (int s : sizes) pairs_in += 0.5 * s * (s - 1.0);
    double target_edges = 0.5 * n * spec.mean_degree;
    double lambda = spec.assortativity;
    double p_mix = pairs_all > 0 ? target_edges / pairs_all : 0.0;
    double p_in = pairs_in > 0 ? target_edges / pairs_in : 0.0;
    double p_same = lambda * p_in + (1.0 - lambda) * p_mix;
    double p_diff = (1.0 - lambda) * p_mix;
    if (p_same > 1.0 || p_diff > 1.0) {
        throw std::invalid_argument("planted_graph: infeasible density for this block structure");
    }

    Rng rng(spec.seed);
    PlantedGraph out;
    out.labels = labels;
    out.graph.n_nodes = n;
    out.graph.id_of.reserve(n);
    out.graph.year_of.reserve(n);
    for (int v = 0; v < n; ++v) {
        out.graph.id_of.push_back(synth_id(v));
        out.graph.year_of.push_back(rng.uniform_int(spec.year_start, spec.year_end));
    }
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            double p = labels[u] == labels[v] ? p_same : p_diff;
            if (p <= 0.0 || !rng.bernoulli(p)) continue;
            // later application year cites earlier; tie goes to pair order
            if (out.graph.year_of[v] > out.graph.year_of[u]) {
                out.graph.edges.emplace_back(v, u);
            } else {
                out.graph.edges.emplace_back(u, v);
            }
        }
    }
    return out;
}

series::CommunitySeries lifecycle_series(LifecycleShape shape, int length, double noise,
                                         std::uint64_t seed, double amplitude, int year_start) {
    if (length < 10) {
        throw std::invalid_argument("lifecycle_series: length must be at least 10");
    }
    Rng rng(seed);
    series::CommunitySeries out;
    out.community_id = 0;
    out.year_start = year_start;
    out.year_end = year_start + length - 1;
    out.counts.reserve(length);
    int peak = static_cast<int>(std::lround(0.4 * (length - 1)));
    for (int t = 0; t < length; ++t) {
        double base = 0.0;
        switch (shape) {
            case LifecycleShape::flat:
                base = 0.5 * amplitude;
                break;
            case LifecycleShape::growth:
                base = amplitude * logistic(10.0 * (t - 0.5 * (length - 1)) / (length - 1));
                break;
            case LifecycleShape::peak_decline:
                // logistic rise into the peak year, exponential decay after
                if (t <= peak) {
                    base = amplitude * logistic(0.5 * (t - peak) + 2.0);
                } else {
                    base = amplitude * logistic(2.0) * std::exp(-0.1 * (t - peak));
                }
                break;
        }
        double value = base * (1.0 + noise * rng.normal());
        out.counts.push_back(std::llround(std::max(0.0, value)));
    }
    return out;
}

SynthCorpus synth_corpus(const SynthCorpusSpec& spec) {
    int n_comm = spec.n_communities;
    int per = spec.nodes_per_community;
    int n = n_comm * per;
    int n_years = spec.year_end - spec.year_start + 1;
    if (n_comm < 1 || per < 2 || n_years < 10) {
        throw std::invalid_argument("synth_corpus: degenerate corpus shape");
    }

    SynthCorpus out;
    out.planted.reserve(n);
    std::vector<int> year_of(n);
    std::vector<std::vector<int>> nodes_of_year(n_years);            // all nodes by year offset
    std::vector<std::vector<std::vector<int>>> block_year(n_comm);   // per block, per year offset
    for (int c = 0; c < n_comm; ++c) block_year[c].resize(n_years);

    for (int c = 0; c < n_comm; ++c) {
        for (int i = 0; i < per; ++i) {
            int v = c * per + i;
            int offset = static_cast<int>((static_cast<long long>(i) * n_years) / per);
            year_of[v] = spec.year_start + offset;
            nodes_of_year[offset].push_back(v);
            block_year[c][offset].push_back(v);
            out.planted.push_back(c);

            corpus::PatentRecord rec;
            rec.app_id = synth_id(v);
            rec.app_year = year_of[v];
            rec.ipc_codes = {"SYN0/00"};
            out.patents.records.push_back(std::move(rec));
        }
    }

    Rng rng(spec.seed);
    std::set<std::pair<int, int>> used;
    for (int c = 0; c < n_comm; ++c) {
        // 3:2 mix of peak-and-decline and steadily growing communities.
        // Declines decay gently so the late (test) years stay at count
        // levels the training segment already covered; growth stays on the
        // near-linear part of the logistic so late windows look like
        // slightly shifted training windows.
        bool declining = (c % 5 < 3);
        Rng curve_rng(derive_seed(spec.seed, 1000 + c));
        series::CommunitySeries target;
        target.community_id = c;
        target.year_start = spec.year_start;
        target.year_end = spec.year_end;
        int peak = static_cast<int>(std::lround(0.4 * (n_years - 1)));
        for (int t = 0; t < n_years; ++t) {
            double base;
            if (declining) {
                double amplitude = spec.amplitude * 2.2;
                base = t <= peak ? amplitude * logistic(0.5 * (t - peak) + 2.0)
                                 : amplitude * logistic(2.0) * std::exp(-0.06 * (t - peak));
            } else {
                base = 2.0 * spec.amplitude * logistic(0.12 * (t - (n_years - 1)));
            }
            double value = base * (1.0 + spec.noise * curve_rng.normal());
            target.counts.push_back(std::llround(std::max(0.0, value)));
        }

        // nodes of block c sorted by year; cited candidates are a prefix
        std::vector<int> block_nodes;
        std::vector<int> prefix_by_year(n_years, 0);
        for (int t = 0; t < n_years; ++t) {
            for (int v : block_year[c][t]) block_nodes.push_back(v);
            prefix_by_year[t] = static_cast<int>(block_nodes.size());
        }

        for (int t = 0; t < n_years; ++t) {
            long long want = target.counts[t];
            for (long long k = 0; k < want; ++k) {
                const std::vector<int>* citing_pool = &nodes_of_year[t];
                if (rng.bernoulli(spec.assortativity) && !block_year[c][t].empty()) {
                    citing_pool = &block_year[c][t];
                }
                if (citing_pool->empty()) continue;
                int cited_limit = prefix_by_year[t];
                if (cited_limit == 0) continue;
                bool placed = false;
                for (int attempt = 0; attempt < 40 && !placed; ++attempt) {
                    int u = (*citing_pool)[rng.uniform_below(citing_pool->size())];
                    int w = block_nodes[rng.uniform_below(static_cast<std::uint64_t>(cited_limit))];
                    if (u == w) continue;
                    if (used.emplace(u, w).second) {
                        out.citations.emplace_back(synth_id(u), synth_id(w));
                        placed = true;
                    }
                }
            }
        }
        out.target_series.push_back(std::move(target));
    }
    return out;
}

}  // namespace citegrowth::benchgen
