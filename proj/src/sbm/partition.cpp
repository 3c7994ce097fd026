#include "citegrowth/sbm/partition.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace citegrowth::sbm {

std::vector<int> compact_labels(const std::vector<int>& labels) {
    std::unordered_map<int, int> remap;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = remap.emplace(labels[i], static_cast<int>(remap.size()));
        out[i] = it->second;
    }
    return out;
}

double nmi(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("nmi: partitions cover different node counts");
    }
    if (a.empty()) return 1.0;
    double n = static_cast<double>(a.size());
    std::map<int, long long> count_a, count_b;
    std::map<std::pair<int, int>, long long> joint;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++count_a[a[i]];
        ++count_b[b[i]];
        ++joint[{a[i], b[i]}];
    }
    double h_a = 0.0, h_b = 0.0, mi = 0.0;
    for (const auto& [label, c] : count_a) {
        double p = c / n;
        h_a -= p * std::log(p);
    }
    for (const auto& [label, c] : count_b) {
        double p = c / n;
        h_b -= p * std::log(p);
    }
    for (const auto& [ab, c] : joint) {
        double p = c / n;
        double pa = count_a[ab.first] / n;
        double pb = count_b[ab.second] / n;
        mi += p * std::log(p / (pa * pb));
    }
    if (h_a + h_b == 0.0) {
        return 1.0;  // both partitions trivial, hence identical
    }
    return 2.0 * mi / (h_a + h_b);
}

}  // namespace citegrowth::sbm
