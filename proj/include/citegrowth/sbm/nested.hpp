#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "citegrowth/sbm/select.hpp"

namespace citegrowth::sbm {

struct DLBreakdown {
    std::vector<double> entropy_per_level;
    std::vector<double> partition_dl_per_level;
    double total = 0.0;
};

/// Stack of partitions: level 0 labels graph nodes, level l labels the
/// blocks of level l-1. Produced hierarchies always end in a single block.
struct Hierarchy {
    std::vector<std::vector<int>> labels;  // labels[l][entity] -> block
    std::vector<int> n_blocks;             // blocks per level
    DLBreakdown dl;

    int n_levels() const { return static_cast<int>(labels.size()); }
};

struct NestedConfig {
    SelectConfig select;
    int b_min = 1;  // level-0 block count bounds; b_max 0 means node count
    int b_max = 0;
    double refine_tol = 1e-6;  // nats
    int max_refine_passes = 10;
};

/// Level-by-level nested fit: select the block count on the graph with the
/// degree-corrected objective, then keep re-clustering the resulting block
/// multigraph with the plain multigraph objective until a level comes back
/// with a single block. Up-down refinement passes then re-run the per-level
/// selection (rebuilding everything above an improved level) until the
/// total description length stops improving.
Hierarchy fit_nested(const NetworkPtr& net, const NestedConfig& config, std::uint64_t seed);

/// Total description length of a hierarchy: sum over levels of entropy
/// plus partition cost. Accepts partial stacks (top block count > 1), so
/// single partitions can be scored as one-level hierarchies. Throws if the
/// level structure is inconsistent with the graph.
DLBreakdown description_length(const Hierarchy& hierarchy, const NetworkPtr& net);

/// Flat node -> community map at the given level: the composition of label
/// arrays from level 0 upward, renumbered by first occurrence.
std::vector<int> project_level(const Hierarchy& hierarchy, int level);

std::string hierarchy_to_json(const Hierarchy& hierarchy);
Hierarchy hierarchy_from_json(const std::string& text);

}  // namespace citegrowth::sbm
