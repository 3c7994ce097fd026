#pragma once

#include <cstdint>
#include <vector>

#include "citegrowth/corpus.hpp"
#include "citegrowth/series.hpp"

namespace citegrowth::benchgen {

/// Planted-partition citation graph. Unordered node pairs receive an edge
/// independently: same-block pairs with probability
/// lambda * p_in + (1 - lambda) * p_mix and cross-block pairs with
/// (1 - lambda) * p_mix, where p_in and p_mix are calibrated so the
/// expected edge count is n_nodes * mean_degree / 2 and a lambda fraction
/// of it is assortative. Edges point from the later application year to
/// the earlier one, so citations never run into the future.
struct PlantedSpec {
    int n_nodes = 100;
    int n_blocks = 2;
    double mean_degree = 10.0;      // expected in+out degree
    double assortativity = 1.0;     // lambda in [0, 1]
    int year_start = 1960;
    int year_end = 2013;
    double size_skew = 0.0;         // 0 = equal blocks, towards 1 = geometric sizes
    std::uint64_t seed = 1;
};

struct PlantedGraph {
    corpus::CitationGraph graph;
    std::vector<int> labels;  // planted block per node
};

PlantedGraph planted_graph(const PlantedSpec& spec);

enum class LifecycleShape { growth, peak_decline, flat };

/// Life-cycle-shaped annual counts: logistic growth, a logistic rise with
/// exponential decay past the peak, or a constant level, with
/// multiplicative Gaussian noise, floored at zero and rounded to integers.
series::CommunitySeries lifecycle_series(LifecycleShape shape, int length, double noise,
                                         std::uint64_t seed, double amplitude = 120.0,
                                         int year_start = 1960);

/// Full synthetic corpus for end-to-end runs: a planted-partition graph
/// whose per-community citation-received histograms follow life-cycle
/// curves (peak-and-decline and steady growth mixed 3:2).
struct SynthCorpusSpec {
    int n_communities = 20;
    int nodes_per_community = 80;  // at least ~2 per year keeps the
                                   // within-community citing pools filled
    int year_start = 1965;
    int year_end = 2004;
    double assortativity = 0.9;
    double noise = 0.03;
    double amplitude = 30.0;
    std::uint64_t seed = 1;
};

struct SynthCorpus {
    corpus::PatentTable patents;
    std::vector<corpus::Citation> citations;
    std::vector<int> planted;  // community per record, in table order
    std::vector<series::CommunitySeries> target_series;
};

SynthCorpus synth_corpus(const SynthCorpusSpec& spec);

}  // namespace citegrowth::benchgen
