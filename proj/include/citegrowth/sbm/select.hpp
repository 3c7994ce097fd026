#pragma once

#include <cstdint>

#include "citegrowth/sbm/agglomerative.hpp"

namespace citegrowth::sbm {

struct SelectConfig {
    AgglomConfig agglom;
    int restarts = 1;  // independent fits per evaluated block count
};

/// Minimizes the single-level description length over the block count by
/// golden-section search on the integer interval, treating dl(B) as
/// unimodal. Endpoints are always evaluated; if the interior probes are
/// worse than both endpoints the bracket is scanned linearly instead.
/// Ties break toward fewer blocks. Every fit is seeded by (seed, B, restart),
/// so the result does not depend on evaluation order.
BlockState select_block_count(const NetworkPtr& net, int b_min, int b_max,
                              const SelectConfig& config, std::uint64_t seed);

}  // namespace citegrowth::sbm
