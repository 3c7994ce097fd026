#include "citegrowth/sbm/nested.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "citegrowth/sbm/partition.hpp"

namespace citegrowth::sbm {

namespace {

// rebuilds the per-level states implied by the label stack; throws when
// the stack is inconsistent
std::vector<BlockState> states_of(const Hierarchy& h, const NetworkPtr& net) {
    if (h.labels.empty()) {
        throw std::invalid_argument("hierarchy: empty level stack");
    }
    std::vector<BlockState> states;
    NetworkPtr level_net = net;
    for (int l = 0; l < h.n_levels(); ++l) {
        if (static_cast<int>(h.labels[l].size()) != level_net->n_nodes) {
            throw std::invalid_argument("hierarchy: level " + std::to_string(l) + " labels " +
                                        std::to_string(h.labels[l].size()) + " entities, expected " +
                                        std::to_string(level_net->n_nodes));
        }
        Objective mode = l == 0 ? Objective::degree_corrected : Objective::multigraph;
        BlockState state(level_net, h.labels[l], h.n_blocks[l], mode);
        if (state.num_nonempty() != h.n_blocks[l]) {
            throw std::invalid_argument("hierarchy: level " + std::to_string(l) + " has empty blocks");
        }
        if (l + 1 < h.n_levels()) {
            level_net = state.block_graph();
        }
        states.push_back(std::move(state));
    }
    return states;
}

DLBreakdown breakdown_of(const std::vector<BlockState>& states) {
    DLBreakdown dl;
    for (const auto& state : states) {
        double s = state.entropy();
        double l = state.partition_dl();
        dl.entropy_per_level.push_back(s);
        dl.partition_dl_per_level.push_back(l);
        dl.total += s + l;
    }
    return dl;
}

Hierarchy hierarchy_of(const std::vector<BlockState>& states) {
    Hierarchy h;
    for (const auto& state : states) {
        h.labels.push_back(state.labels());
        h.n_blocks.push_back(state.num_nonempty());
    }
    h.dl = breakdown_of(states);
    return h;
}

// complete stacks only (top level has one block, so its closure is zero);
// per-level closures are replaced by the actual levels above
double total_dl(const std::vector<BlockState>& states) {
    double total = 0.0;
    for (const auto& state : states) total += state.entropy() + state.partition_dl();
    return total;
}

// extends the stack upward until a level returns a single block; the
// closure term strictly dominates the identity partition, so every level
// coarsens and the recursion terminates
void build_upward(std::vector<BlockState>& states, const NestedConfig& config, std::uint64_t seed,
                  std::uint64_t pass_salt) {
    while (states.back().num_nonempty() > 1) {
        NetworkPtr block_net = states.back().block_graph();
        int level = static_cast<int>(states.size());
        int b_max = block_net->n_nodes;
        SelectConfig select_cfg = config.select;
        select_cfg.agglom.mode = Objective::multigraph;
        std::uint64_t level_seed =
            derive_seed(seed, pass_salt, static_cast<std::uint64_t>(level));
        states.push_back(select_block_count(block_net, 1, b_max, select_cfg, level_seed));
    }
}

}  // namespace

DLBreakdown description_length(const Hierarchy& hierarchy, const NetworkPtr& net) {
    return breakdown_of(states_of(hierarchy, net));
}

Hierarchy fit_nested(const NetworkPtr& net, const NestedConfig& config, std::uint64_t seed) {
    if (net->n_nodes == 0) {
        throw std::invalid_argument("fit_nested: empty graph");
    }
    int level0_min = std::max(1, config.b_min);
    int level0_max = config.b_max > 0 ? std::min(config.b_max, net->n_nodes) : net->n_nodes;
    std::vector<BlockState> states;
    SelectConfig level0_cfg = config.select;
    level0_cfg.agglom.mode = Objective::degree_corrected;
    states.push_back(
        select_block_count(net, level0_min, level0_max, level0_cfg, derive_seed(seed, 0, 0)));
    build_upward(states, config, seed, 0);

    // up-down refinement: re-select each level; an accepted change rebuilds
    // the levels above it
    double current = total_dl(states);
    for (int pass = 1; pass <= config.max_refine_passes; ++pass) {
        double pass_start = current;
        for (int level = 0; level < static_cast<int>(states.size()); ++level) {
            std::vector<BlockState> candidate(states.begin(), states.begin() + level);
            NetworkPtr level_net = level == 0 ? net : candidate.back().block_graph();
            SelectConfig select_cfg = config.select;
            select_cfg.agglom.mode = level == 0 ? Objective::degree_corrected : Objective::multigraph;
            int lo = level == 0 ? level0_min : 1;
            int hi = level == 0 ? level0_max : level_net->n_nodes;
            std::uint64_t level_seed = derive_seed(seed, static_cast<std::uint64_t>(pass),
                                                   static_cast<std::uint64_t>(level));
            candidate.push_back(select_block_count(level_net, lo, hi, select_cfg, level_seed));
            build_upward(candidate, config, seed, static_cast<std::uint64_t>(pass));
            double candidate_dl = total_dl(candidate);
            if (candidate_dl < current) {
                states = std::move(candidate);
                current = candidate_dl;
            }
        }
        if (pass_start - current < config.refine_tol) break;
    }
    return hierarchy_of(states);
}

std::vector<int> project_level(const Hierarchy& hierarchy, int level) {
    if (level < 0 || level >= hierarchy.n_levels()) {
        throw std::invalid_argument("project_level: level " + std::to_string(level) + " out of range");
    }
    std::vector<int> flat = hierarchy.labels[0];
    for (int l = 1; l <= level; ++l) {
        for (auto& c : flat) {
            c = hierarchy.labels[l][c];
        }
    }
    return compact_labels(flat);
}

std::string hierarchy_to_json(const Hierarchy& hierarchy) {
    nlohmann::json j;
    j["levels"] = nlohmann::json::array();
    for (int l = 0; l < hierarchy.n_levels(); ++l) {
        j["levels"].push_back({{"n_blocks", hierarchy.n_blocks[l]}, {"labels", hierarchy.labels[l]}});
    }
    j["dl"] = {{"total", hierarchy.dl.total},
               {"entropy_per_level", hierarchy.dl.entropy_per_level},
               {"partition_dl_per_level", hierarchy.dl.partition_dl_per_level}};
    return j.dump(2);
}

Hierarchy hierarchy_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Hierarchy h;
    for (const auto& level : j.at("levels")) {
        h.n_blocks.push_back(level.at("n_blocks").get<int>());
        h.labels.push_back(level.at("labels").get<std::vector<int>>());
    }
    const auto& dl = j.at("dl");
    h.dl.total = dl.at("total").get<double>();
    h.dl.entropy_per_level = dl.at("entropy_per_level").get<std::vector<double>>();
    h.dl.partition_dl_per_level = dl.at("partition_dl_per_level").get<std::vector<double>>();
    return h;
}

}  // namespace citegrowth::sbm
