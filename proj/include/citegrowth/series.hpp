#pragma once

#include <string>
#include <vector>

#include "citegrowth/corpus.hpp"

namespace citegrowth::series {

/// Annual citation counts for one community over an inclusive year range.
struct CommunitySeries {
    int community_id = 0;
    int year_start = 0;
    int year_end = 0;
    std::vector<long long> counts;  // length year_end - year_start + 1

    int n_years() const { return year_end - year_start + 1; }
};

/// received: an edge u -> w dated by year(u) is credited to w's community.
/// outgoing: the same edge is credited to u's community instead.
enum class Attribution { received, outgoing };

/// Tabulates per-community annual citation counts. Every edge whose citing
/// year falls inside the range is counted exactly once across communities.
std::vector<CommunitySeries> build_series(const corpus::CitationGraph& graph,
                                          const std::vector<int>& community_of,
                                          int year_start, int year_end,
                                          Attribution attribution = Attribution::received);

/// Keeps series with at least `min_total` citations spread over at least
/// `min_years_active` nonzero years. Order is preserved.
std::vector<CommunitySeries> filter_series(const std::vector<CommunitySeries>& all,
                                           long long min_total, int min_years_active);

/// series.csv long format: community_id,year,count
void save_series_csv(const std::vector<CommunitySeries>& all, const std::string& path,
                     const std::string& comment = "");
std::vector<CommunitySeries> load_series_csv(const std::string& path);

}  // namespace citegrowth::series
