#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "citegrowth/rng.hpp"
#include "citegrowth/sbm/nested.hpp"
#include "citegrowth/sbm/partition.hpp"
#include "oracles.hpp"

using namespace citegrowth;
using sbm::BlockState;
using sbm::Objective;

namespace {

sbm::NetworkPtr net_of(const oracles::TestGraph& g) {
    corpus::CitationGraph cg;
    cg.n_nodes = g.n;
    for (int v = 0; v < g.n; ++v) {
        cg.id_of.push_back(std::to_string(v));
        cg.year_of.push_back(2000);
    }
    cg.edges = g.edges;
    return sbm::Network::from_graph(cg);
}

sbm::Hierarchy one_level(const std::vector<int>& labels) {
    sbm::Hierarchy h;
    h.labels.push_back(labels);
    int b = 0;
    for (int label : labels) b = std::max(b, label + 1);
    h.n_blocks.push_back(b);
    return h;
}

}  // namespace

TEST_SUITE("sbm_dl") {

TEST_CASE("empty graph with one block has zero entropy and partition terms per the formulas") {
    oracles::TestGraph g;
    g.n = 6;
    auto net = net_of(g);
    BlockState state(net, std::vector<int>(6, 0), 1, Objective::degree_corrected);
    CHECK(state.entropy() == 0.0);
    // ln C(5, 0) + ln(6!/6!) = 0
    CHECK(state.partition_dl() == 0.0);
    auto dl = sbm::description_length(one_level(std::vector<int>(6, 0)), net);
    CHECK(dl.total == 0.0);
}

TEST_CASE("all partitions of a 6-node graph match the exhaustive oracle") {
    auto g = oracles::random_graph(6, 0.35, 2024);
    auto net = net_of(g);
    auto partitions = oracles::all_partitions(6);
    CHECK(partitions.size() == 203);  // Bell(6)
    for (const auto& labels : partitions) {
        auto dl = sbm::description_length(one_level(labels), net);
        double expected = oracles::naive_level_dl(g, labels, true);
        CHECK(std::abs(dl.total - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("dl is invariant under block relabeling") {
    auto g = oracles::random_graph(12, 0.3, 7);
    auto net = net_of(g);
    std::vector<int> labels = {0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2};
    std::vector<int> permuted = {2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1};
    for (auto mode : {Objective::degree_corrected, Objective::multigraph}) {
        BlockState a(net, labels, 3, mode);
        BlockState b(net, permuted, 3, mode);
        CHECK(a.dl() == doctest::Approx(b.dl()).epsilon(1e-14));
    }
}

TEST_CASE("stacked hierarchy dl matches the naive oracle") {
    auto g = oracles::random_graph(10, 0.35, 55);
    auto net = net_of(g);
    sbm::Hierarchy h;
    h.labels = {{0, 1, 2, 3, 0, 1, 2, 3, 0, 1},  // 10 nodes -> 4 blocks
                {0, 1, 0, 1},                     // 4 blocks -> 2
                {0, 0}};                          // 2 blocks -> 1
    h.n_blocks = {4, 2, 1};
    auto dl = sbm::description_length(h, net);
    double expected = oracles::naive_hierarchy_dl(g, h.labels);
    CHECK(dl.total == doctest::Approx(expected).epsilon(1e-12));
    CHECK(dl.entropy_per_level.size() == 3);
    double sum = 0.0;
    for (std::size_t l = 0; l < 3; ++l) {
        sum += dl.entropy_per_level[l] + dl.partition_dl_per_level[l];
    }
    CHECK(dl.total == doctest::Approx(sum).epsilon(1e-14));
}

TEST_CASE("inconsistent hierarchies are rejected") {
    auto g = oracles::random_graph(8, 0.3, 3);
    auto net = net_of(g);
    sbm::Hierarchy wrong_size;
    wrong_size.labels = {{0, 1, 0, 1}};  // 4 labels for 8 nodes
    wrong_size.n_blocks = {2};
    CHECK_THROWS_AS(sbm::description_length(wrong_size, net), std::invalid_argument);

    sbm::Hierarchy empty_block;
    empty_block.labels = {{0, 2, 0, 2, 0, 2, 0, 2}};  // label 1 unused
    empty_block.n_blocks = {3};
    CHECK_THROWS_AS(sbm::description_length(empty_block, net), std::invalid_argument);

    sbm::Hierarchy chain_mismatch;
    chain_mismatch.labels = {{0, 1, 0, 1, 0, 1, 0, 1}, {0, 0, 0}};  // 3 labels for 2 blocks
    chain_mismatch.n_blocks = {2, 1};
    CHECK_THROWS_AS(sbm::description_length(chain_mismatch, net), std::invalid_argument);
}

TEST_CASE("project_level composes the label stack") {
    sbm::Hierarchy h;
    h.labels = {{0, 1, 2, 3, 3, 2, 1, 0}, {1, 1, 0, 0}, {0, 0}};
    h.n_blocks = {4, 2, 1};
    auto level0 = sbm::project_level(h, 0);
    CHECK(level0 == sbm::compact_labels(h.labels[0]));

    auto level1 = sbm::project_level(h, 1);
    std::vector<int> direct;
    for (std::size_t v = 0; v < 8; ++v) {
        direct.push_back(h.labels[1][h.labels[0][v]]);  // iterated lookup
    }
    CHECK(level1 == sbm::compact_labels(direct));

    auto top = sbm::project_level(h, 2);
    for (int c : top) CHECK(c == 0);
    CHECK_THROWS_AS(sbm::project_level(h, 3), std::invalid_argument);
}

TEST_CASE("nmi basics") {
    CHECK(sbm::nmi({0, 0, 1, 1}, {1, 1, 0, 0}) == doctest::Approx(1.0));
    CHECK(sbm::nmi({0, 0, 0, 0}, {0, 0, 0, 0}) == doctest::Approx(1.0));
    CHECK(sbm::nmi({0, 1, 0, 1}, {0, 0, 1, 1}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(sbm::nmi({0, 1}, {0, 1, 2}), std::invalid_argument);
}

}  // TEST_SUITE
