#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "citegrowth/benchgen.hpp"
#include "citegrowth/rng.hpp"

using namespace citegrowth;
using benchgen::LifecycleShape;

TEST_SUITE("benchgen") {

TEST_CASE("fully assortative graphs have no cross-block edges") {
    benchgen::PlantedSpec spec;
    spec.n_nodes = 100;
    spec.n_blocks = 2;
    spec.mean_degree = 8.0;
    spec.assortativity = 1.0;
    spec.seed = 3;
    auto planted = benchgen::planted_graph(spec);
    CHECK(!planted.graph.edges.empty());
    for (const auto& [u, v] : planted.graph.edges) {
        CHECK(planted.labels[u] == planted.labels[v]);
    }
}

TEST_CASE("realized edge count stays within three sigma of expectation") {
    benchgen::PlantedSpec spec;
    spec.n_nodes = 200;
    spec.n_blocks = 4;
    spec.mean_degree = 10.0;
    spec.assortativity = 0.7;
    double expected = 0.5 * spec.n_nodes * spec.mean_degree;
    double sigma = std::sqrt(expected);  // Bernoulli sum, p small
    int outliers = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        spec.seed = seed;
        auto planted = benchgen::planted_graph(spec);
        double realized = static_cast<double>(planted.graph.edges.size());
        if (std::abs(realized - expected) > 3.0 * sigma) ++outliers;
    }
    CHECK(outliers <= 2);  // ~0.3% expected rate, allow slack
}

TEST_CASE("graphs respect citation time and basic invariants") {
    benchgen::PlantedSpec spec;
    spec.n_nodes = 150;
    spec.n_blocks = 3;
    spec.mean_degree = 6.0;
    spec.assortativity = 0.5;
    spec.seed = 11;
    auto planted = benchgen::planted_graph(spec);
    std::set<std::pair<int, int>> seen;
    for (const auto& [u, v] : planted.graph.edges) {
        CHECK(u != v);
        CHECK(planted.graph.year_of[u] >= planted.graph.year_of[v]);
        CHECK(seen.insert({u, v}).second);
    }
}

TEST_CASE("identical spec and seed reproduce the graph exactly") {
    benchgen::PlantedSpec spec;
    spec.n_nodes = 80;
    spec.n_blocks = 4;
    spec.mean_degree = 7.0;
    spec.assortativity = 0.8;
    spec.seed = 21;
    auto a = benchgen::planted_graph(spec);
    auto b = benchgen::planted_graph(spec);
    CHECK(a.graph.edges == b.graph.edges);
    CHECK(a.graph.year_of == b.graph.year_of);
    CHECK(a.labels == b.labels);
}

TEST_CASE("size skew makes block sizes geometric-ish") {
    benchgen::PlantedSpec spec;
    spec.n_nodes = 100;
    spec.n_blocks = 4;
    spec.mean_degree = 6.0;
    spec.size_skew = 0.5;
    spec.seed = 2;
    auto planted = benchgen::planted_graph(spec);
    std::vector<int> sizes(4, 0);
    for (int b : planted.labels) ++sizes[b];
    CHECK(sizes[0] + sizes[1] + sizes[2] + sizes[3] == 100);
    CHECK(sizes[0] > sizes[1]);
    CHECK(sizes[1] > sizes[2]);
    CHECK(sizes[2] > sizes[3]);
    CHECK(sizes[3] >= 1);
}

TEST_CASE("infeasible density is rejected") {
    benchgen::PlantedSpec spec;
    spec.n_nodes = 10;
    spec.n_blocks = 5;
    spec.mean_degree = 40.0;  // more within-block edges than pairs exist
    spec.assortativity = 1.0;
    CHECK_THROWS_AS(benchgen::planted_graph(spec), std::invalid_argument);
}

TEST_CASE("flat series with no noise is constant") {
    auto s = benchgen::lifecycle_series(LifecycleShape::flat, 24, 0.0, 5);
    for (long long c : s.counts) CHECK(c == s.counts[0]);
}

TEST_CASE("peak-decline has a unique interior argmax at zero noise") {
    for (int length : {10, 20, 30, 45, 60, 90, 120}) {
        auto s = benchgen::lifecycle_series(LifecycleShape::peak_decline, length, 0.0, 1);
        int argmax = 0;
        for (int t = 1; t < length; ++t) {
            if (s.counts[t] > s.counts[argmax]) argmax = t;
        }
        CHECK(argmax > 0);
        CHECK(argmax < length - 1);
        for (int t = 0; t < length; ++t) {
            if (t != argmax) CHECK(s.counts[t] < s.counts[argmax]);
        }
    }
}

TEST_CASE("growth is monotone non-decreasing at zero noise") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        int length = 10 + static_cast<int>(rng.uniform_below(100));
        auto s = benchgen::lifecycle_series(LifecycleShape::growth, length, 0.0,
                                            rng.next_u64());
        for (int t = 1; t < length; ++t) {
            CHECK(s.counts[t] >= s.counts[t - 1]);
        }
    }
}

TEST_CASE("synthetic corpus round-trips through the csv format") {
    benchgen::SynthCorpusSpec spec;
    spec.n_communities = 4;
    spec.nodes_per_community = 12;
    spec.year_start = 1990;
    spec.year_end = 2009;
    spec.seed = 9;
    auto corpus_out = benchgen::synth_corpus(spec);
    REQUIRE(corpus_out.patents.records.size() == 48);
    CHECK(!corpus_out.citations.empty());

    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "citegrowth_benchgen_test";
    fs::create_directories(dir);
    corpus::save_patents(corpus_out.patents, (dir / "patents.csv").string());
    corpus::save_citations(corpus_out.citations, (dir / "citations.csv").string());
    auto patents = corpus::load_patents((dir / "patents.csv").string());
    auto citations = corpus::load_citations((dir / "citations.csv").string());
    REQUIRE(patents.records.size() == corpus_out.patents.records.size());
    for (std::size_t i = 0; i < patents.records.size(); ++i) {
        CHECK(patents.records[i].app_id == corpus_out.patents.records[i].app_id);
        CHECK(patents.records[i].app_year == corpus_out.patents.records[i].app_year);
        CHECK(patents.records[i].ipc_codes == corpus_out.patents.records[i].ipc_codes);
    }
    CHECK(citations == corpus_out.citations);
    fs::remove_all(dir);
}

TEST_CASE("synthetic corpus respects citation time and planted shares") {
    benchgen::SynthCorpusSpec spec;
    spec.n_communities = 6;
    spec.nodes_per_community = 50;
    spec.year_start = 1985;
    spec.year_end = 2009;
    spec.assortativity = 0.9;
    spec.amplitude = 15.0;
    spec.seed = 4;
    auto corpus_out = benchgen::synth_corpus(spec);
    corpus::DropCounts drops;
    auto graph = corpus::build_graph(corpus_out.patents, corpus_out.citations, &drops);
    CHECK(drops.dangling == 0);
    CHECK(drops.self_loops == 0);
    CHECK(drops.duplicates == 0);
    long long within = 0;
    for (const auto& [u, v] : graph.edges) {
        CHECK(graph.year_of[u] >= graph.year_of[v]);
        if (corpus_out.planted[u] == corpus_out.planted[v]) ++within;
    }
    double share = static_cast<double>(within) / graph.edges.size();
    CHECK(share > 0.8);  // lambda = 0.9 with sampling slack
    CHECK(share < 0.97);
}

}  // TEST_SUITE
