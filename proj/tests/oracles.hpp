#pragma once

// Independent oracle implementations for the test suites. Everything here
// recomputes results with naive loops (log sums instead of lgamma, dense
// matrices instead of sparse deltas) so agreement with the library is
// meaningful.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace oracles {

struct TestGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // directed, simple
};

TestGraph random_graph(int n, double edge_prob, std::uint64_t seed);

/// all set partitions of n items as restricted-growth label strings
std::vector<std::vector<int>> all_partitions(int n);

/// single-level dl of a flat partition, naive loops throughout
double naive_level_dl(const TestGraph& g, const std::vector<int>& labels, bool degree_corrected);

/// the flat dl closed with a one-block top level (what the fitters minimize)
double naive_closed_dl(const TestGraph& g, const std::vector<int>& labels);

/// dl of a whole label stack (level 0 degree-corrected, higher levels
/// multigraph), aggregating block multigraphs densely
double naive_hierarchy_dl(const TestGraph& g, const std::vector<std::vector<int>>& levels);

std::optional<double> naive_mape(const std::vector<double>& truth, const std::vector<double>& pred,
                                 std::size_t* excluded = nullptr);
std::optional<double> naive_direction(const std::vector<double>& truth,
                                      const std::vector<double>& pred);

}  // namespace oracles
