#include "citegrowth/sbm/select.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>

namespace citegrowth::sbm {

namespace {

struct Evaluator {
    const NetworkPtr& net;
    const SelectConfig& config;
    std::uint64_t seed;
    std::map<int, std::pair<double, BlockState>> cache;

    double eval(int b) {
        auto it = cache.find(b);
        if (it != cache.end()) return it->second.first;
        std::optional<BlockState> best;
        double best_dl = 0.0;
        for (int rep = 0; rep < std::max(1, config.restarts); ++rep) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b), static_cast<std::uint64_t>(rep)));
            BlockState state = agglomerative_fit(net, b, config.agglom, rng);
            double dl = state.dl();
            if (!best || dl < best_dl) {
                best_dl = dl;
                best = std::move(state);
            }
        }
        cache.emplace(b, std::make_pair(best_dl, std::move(*best)));
        return best_dl;
    }
};

}  // namespace

BlockState select_block_count(const NetworkPtr& net, int b_min, int b_max,
                              const SelectConfig& config, std::uint64_t seed) {
    if (b_min < 1 || b_min > b_max || b_max > std::max(1, net->n_nodes)) {
        throw std::invalid_argument("select_block_count: invalid block count bounds");
    }
    Evaluator ev{net, config, seed, {}};

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    int lo = b_min, hi = b_max;
    ev.eval(lo);
    ev.eval(hi);
    while (hi - lo > 3) {
        int gap = hi - lo;
        int c = hi - static_cast<int>(std::lround(inv_phi * gap));
        int d = lo + static_cast<int>(std::lround(inv_phi * gap));
        if (c <= lo) c = lo + 1;
        if (d >= hi) d = hi - 1;
        if (c >= d) d = c + 1;
        double fc = ev.eval(c);
        double fd = ev.eval(d);
        double flo = ev.eval(lo);
        double fhi = ev.eval(hi);
        // both patterns are impossible for a unimodal dl(B); scan the
        // bracket when one shows up
        if ((fc > flo && fd < fc) || (fd > fhi && fc < fd)) {
            for (int b = lo + 1; b < hi; ++b) ev.eval(b);
            break;
        }
        if (fc <= fd) {
            hi = d;
        } else {
            lo = c;
        }
    }
    for (int b = lo; b <= hi; ++b) ev.eval(b);

    int best_b = -1;
    double best_dl = 0.0;
    for (const auto& [b, entry] : ev.cache) {  // ascending b: ties keep the smaller
        if (best_b < 0 || entry.first < best_dl) {
            best_b = b;
            best_dl = entry.first;
        }
    }
    return std::move(ev.cache.at(best_b).second);
}

}  // namespace citegrowth::sbm
