#include "citegrowth/sbm/network.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace citegrowth::sbm {

namespace {

void finalize(Network& net, const std::map<std::pair<int, int>, long long>& mult) {
    int n = net.n_nodes;
    net.out_edges.assign(n, {});
    net.in_edges.assign(n, {});
    net.k_out.assign(n, 0);
    net.k_in.assign(n, 0);
    net.self_mult.assign(n, 0);
    net.neighbors.assign(n, {});
    net.neighbor_mass.assign(n, 0);
    net.n_edges = 0;
    for (const auto& [uv, m] : mult) {
        auto [u, v] = uv;
        if (u < 0 || u >= n || v < 0 || v >= n) {
            throw std::invalid_argument("network: edge endpoint out of range");
        }
        if (m <= 0) continue;
        net.out_edges[u].emplace_back(v, m);
        net.in_edges[v].emplace_back(u, m);
        net.k_out[u] += m;
        net.k_in[v] += m;
        net.n_edges += m;
        if (u == v) net.self_mult[u] += m;
    }
    for (int v = 0; v < n; ++v) {
        std::sort(net.in_edges[v].begin(), net.in_edges[v].end());
        std::map<int, long long> nbr;
        for (const auto& [u, m] : net.out_edges[v]) {
            if (u != v) nbr[u] += m;
        }
        for (const auto& [u, m] : net.in_edges[v]) {
            if (u != v) nbr[u] += m;
        }
        for (const auto& [u, m] : nbr) {
            net.neighbors[v].emplace_back(u, m);
            net.neighbor_mass[v] += m;
        }
    }
}

}  // namespace

std::shared_ptr<const Network> Network::from_graph(const corpus::CitationGraph& graph) {
    auto net = std::make_shared<Network>();
    net->n_nodes = graph.n_nodes;
    std::map<std::pair<int, int>, long long> mult;
    for (const auto& [u, v] : graph.edges) {
        mult[{u, v}] += 1;
    }
    finalize(*net, mult);
    return net;
}

std::shared_ptr<const Network> Network::from_multi_edges(
    int n_nodes, const std::vector<std::pair<std::pair<int, int>, long long>>& edges) {
    auto net = std::make_shared<Network>();
    net->n_nodes = n_nodes;
    std::map<std::pair<int, int>, long long> mult;
    for (const auto& [uv, m] : edges) {
        mult[uv] += m;
    }
    finalize(*net, mult);
    return net;
}

}  // namespace citegrowth::sbm
