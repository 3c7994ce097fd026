#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "citegrowth/corpus.hpp"

namespace citegrowth::sbm {

/// Directed multigraph the inference runs on. Level 0 wraps the citation
/// graph (all multiplicities 1, no self-loops); higher levels wrap block
/// multigraphs, which can carry self-loops and parallel edges.
struct Network {
    int n_nodes = 0;
    long long n_edges = 0;  // sum of multiplicities

    // adjacency sorted by neighbor index; multiplicity > 0
    std::vector<std::vector<std::pair<int, long long>>> out_edges;
    std::vector<std::vector<std::pair<int, long long>>> in_edges;

    std::vector<long long> k_out;      // out-degree incl. self-loops
    std::vector<long long> k_in;       // in-degree incl. self-loops
    std::vector<long long> self_mult;  // self-loop multiplicity

    // merged out+in neighbor multiset, self-loops excluded; used by the
    // move proposal
    std::vector<std::vector<std::pair<int, long long>>> neighbors;
    std::vector<long long> neighbor_mass;

    static std::shared_ptr<const Network> from_graph(const corpus::CitationGraph& graph);
    static std::shared_ptr<const Network> from_multi_edges(
        int n_nodes, const std::vector<std::pair<std::pair<int, int>, long long>>& edges);
};

/// Shared immutable network handle. Block states keep their network alive
/// through this, so block multigraphs built per hierarchy level outlive
/// the scope that created them.
using NetworkPtr = std::shared_ptr<const Network>;

}  // namespace citegrowth::sbm
