#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "citegrowth/benchgen.hpp"
#include "citegrowth/rng.hpp"
#include "citegrowth/sbm/mcmc.hpp"
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

sbm::NetworkPtr planted_net(int n, int blocks, double mean_degree, double lambda, std::uint64_t seed,
                         std::vector<int>* labels = nullptr) {
    benchgen::PlantedSpec spec;
    spec.n_nodes = n;
    spec.n_blocks = blocks;
    spec.mean_degree = mean_degree;
    spec.assortativity = lambda;
    spec.seed = seed;
    auto planted = benchgen::planted_graph(spec);
    if (labels) *labels = planted.labels;
    return sbm::Network::from_graph(planted.graph);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace

TEST_SUITE("sbm_fit") {

TEST_CASE("greedy sweeps never increase the single-level dl") {
    auto net = net_of(oracles::random_graph(80, 0.06, 19));
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto state = BlockState::random(net, 8, Objective::degree_corrected, seed);
        Rng rng(derive_seed(100, seed));
        double dl = state.dl();
        for (int sweep = 0; sweep < 20; ++sweep) {
            sbm::mcmc_sweep(state, rng, {});
            double after = state.dl();
            CHECK(after <= dl + 1e-9);
            dl = after;
        }
    }
}

TEST_CASE("fixed seed gives an identical sweep trajectory") {
    auto net = net_of(oracles::random_graph(40, 0.1, 3));
    auto a = BlockState::random(net, 5, Objective::degree_corrected, 7);
    auto b = BlockState::random(net, 5, Objective::degree_corrected, 7);
    Rng rng_a(11), rng_b(11);
    for (int sweep = 0; sweep < 10; ++sweep) {
        int moves_a = sbm::mcmc_sweep(a, rng_a, {});
        int moves_b = sbm::mcmc_sweep(b, rng_b, {});
        CHECK(moves_a == moves_b);
    }
    CHECK(a.labels() == b.labels());
}

TEST_CASE("greedy sweeps recover a strongly assortative 2-block split") {
    // single chains of strict descent regularly collapse into one block or
    // stall mixed; the supported protocol is independent chains reduced by
    // minimum dl, which lands on the planted split
    std::vector<int> planted;
    auto net = planted_net(120, 2, 12.0, 1.0, 5, &planted);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        double best_dl = 1e300;
        std::vector<int> best_labels;
        for (std::uint64_t chain = 0; chain < 16; ++chain) {
            auto state = BlockState::random(net, 2, Objective::degree_corrected,
                                            derive_seed(seed, chain));
            Rng rng(derive_seed(17, seed, chain));
            int zero_streak = 0;
            for (int sweep = 0; sweep < 100 && zero_streak < 3; ++sweep) {
                zero_streak = sbm::mcmc_sweep(state, rng, {}) == 0 ? zero_streak + 1 : 0;
            }
            if (state.dl() < best_dl) {
                best_dl = state.dl();
                best_labels = state.labels();
            }
        }
        if (sbm::nmi(best_labels, planted) > 0.99) ++hits;
    }
    CHECK(hits >= 9);
}

TEST_CASE("agglomerative endpoints: single block and identity") {
    auto g = oracles::random_graph(25, 0.2, 9);
    auto net = net_of(g);
    sbm::AgglomConfig cfg;
    Rng rng(1);
    auto one = sbm::agglomerative_fit(net, 1, cfg, rng);
    CHECK(one.num_nonempty() == 1);
    BlockState flat(net, std::vector<int>(25, 0), 1, Objective::degree_corrected);
    CHECK(one.dl() == doctest::Approx(flat.dl()).epsilon(1e-12));

    Rng rng2(2);
    auto identity = sbm::agglomerative_fit(net, 25, cfg, rng2);
    CHECK(identity.num_nonempty() == 25);
    for (int v = 0; v < 25; ++v) CHECK(identity.label_of(v) == v);
}

TEST_CASE("agglomerative fit recovers a planted 4-block graph") {
    std::vector<double> scores;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        std::vector<int> planted;
        auto net = planted_net(200, 4, 10.0, 0.9, seed, &planted);
        Rng rng(derive_seed(23, seed));
        auto state = sbm::agglomerative_fit(net, 4, {}, rng);
        scores.push_back(sbm::nmi(state.labels(), planted));
    }
    CHECK(median(scores) >= 0.9);
}

TEST_CASE("select_block_count picks one block for an edgeless graph") {
    oracles::TestGraph g;
    g.n = 30;
    auto net = net_of(g);
    auto state = sbm::select_block_count(net, 1, 30, {}, 3);
    CHECK(state.num_nonempty() == 1);
}

TEST_CASE("selected dl is no worse than the bracket endpoints") {
    auto net = net_of(oracles::random_graph(60, 0.08, 77));
    sbm::SelectConfig cfg;
    auto best = sbm::select_block_count(net, 1, 60, cfg, 5);
    for (int b : {1, 60}) {
        Rng rng(derive_seed(5, static_cast<std::uint64_t>(b), 0));
        auto endpoint = sbm::agglomerative_fit(net, b, cfg.agglom, rng);
        CHECK(best.dl() <= endpoint.dl() + 1e-9);
    }
}

TEST_CASE("small graphs reach the exhaustive optimum from most seeds") {
    // global minimum over every partition of every block count, against
    // restarted agglomerative fits
    int attained = 0, close = 0;
    const int runs = 20;
    for (int run = 0; run < runs; ++run) {
        auto g = oracles::random_graph(7, 0.3, 500 + run);
        auto net = net_of(g);
        double global = 1e300;
        for (const auto& labels : oracles::all_partitions(7)) {
            global = std::min(global, oracles::naive_closed_dl(g, labels));
        }
        sbm::SelectConfig cfg;
        cfg.restarts = 10;
        auto state = sbm::select_block_count(net, 1, 7, cfg, 900 + run);
        double found = state.dl();
        if (found <= global + 1e-9) {
            ++attained;
        } else if (found <= global * 1.01) {
            ++close;
        }
    }
    CHECK(attained >= 16);        // >= 80% of 20 runs
    CHECK(attained + close == runs);  // stragglers stay within 1%
}

TEST_CASE("a single dense community collapses to one level with one block") {
    std::vector<int> planted;
    auto net = planted_net(60, 1, 12.0, 1.0, 21, &planted);
    auto h = sbm::fit_nested(net, {}, 4);
    REQUIRE(h.n_levels() == 1);
    CHECK(h.n_blocks[0] == 1);
    auto flat = sbm::project_level(h, 0);
    for (int c : flat) CHECK(c == 0);
}

TEST_CASE("nested fit ends at a single block and matches its own dl recomputation") {
    std::vector<int> planted;
    auto net = planted_net(150, 3, 10.0, 0.9, 31, &planted);
    auto h = sbm::fit_nested(net, {}, 9);
    CHECK(h.n_blocks.back() == 1);
    for (int l = 1; l < h.n_levels(); ++l) {
        CHECK(h.n_blocks[l] <= h.n_blocks[l - 1]);
        CHECK(static_cast<int>(h.labels[l].size()) == h.n_blocks[l - 1]);
    }
    auto recomputed = sbm::description_length(h, net);
    CHECK(recomputed.total == doctest::Approx(h.dl.total).epsilon(1e-12));
    CHECK(sbm::nmi(sbm::project_level(h, 0), planted) > 0.8);
}

TEST_CASE("hierarchy json round trip") {
    auto net = net_of(oracles::random_graph(30, 0.15, 8));
    auto h = sbm::fit_nested(net, {}, 12);
    auto back = sbm::hierarchy_from_json(sbm::hierarchy_to_json(h));
    CHECK(back.labels == h.labels);
    CHECK(back.n_blocks == h.n_blocks);
    CHECK(back.dl.total == h.dl.total);
}

}  // TEST_SUITE
