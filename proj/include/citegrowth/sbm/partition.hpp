#pragma once

#include <vector>

namespace citegrowth::sbm {

/// renumbers labels by first occurrence, yielding ids 0..k-1
std::vector<int> compact_labels(const std::vector<int>& labels);

/// Normalized mutual information between two partitions of the same node
/// set, 2 I(a;b) / (H(a) + H(b)) in [0, 1]. Two single-cluster partitions
/// compare as 1.
double nmi(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace citegrowth::sbm
