#include "citegrowth/series.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

#include "citegrowth/csv.hpp"

namespace citegrowth::series {

std::vector<CommunitySeries> build_series(const corpus::CitationGraph& graph,
                                          const std::vector<int>& community_of,
                                          int year_start, int year_end,
                                          Attribution attribution) {
    if (static_cast<int>(community_of.size()) != graph.n_nodes) {
        throw std::invalid_argument("build_series: community map does not cover all nodes");
    }
    if (year_end < year_start) {
        throw std::invalid_argument("build_series: empty year range");
    }
    int n_communities = 0;
    for (int c : community_of) {
        if (c < 0) throw std::invalid_argument("build_series: negative community id");
        n_communities = std::max(n_communities, c + 1);
    }
    int n_years = year_end - year_start + 1;
    std::vector<CommunitySeries> out(n_communities);
    for (int c = 0; c < n_communities; ++c) {
        out[c].community_id = c;
        out[c].year_start = year_start;
        out[c].year_end = year_end;
        out[c].counts.assign(n_years, 0);
    }
    for (const auto& [citing, cited] : graph.edges) {
        int year = graph.year_of[citing];
        if (year < year_start || year > year_end) continue;
        int community = attribution == Attribution::received ? community_of[cited]
                                                             : community_of[citing];
        out[community].counts[year - year_start] += 1;
    }
    return out;
}

std::vector<CommunitySeries> filter_series(const std::vector<CommunitySeries>& all,
                                           long long min_total, int min_years_active) {
    std::vector<CommunitySeries> out;
    for (const auto& s : all) {
        long long total = 0;
        int active = 0;
        for (long long c : s.counts) {
            total += c;
            if (c > 0) ++active;
        }
        if (total >= min_total && active >= min_years_active) {
            out.push_back(s);
        }
    }
    return out;
}

void save_series_csv(const std::vector<CommunitySeries>& all, const std::string& path,
                     const std::string& comment) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("series: cannot write " + path);
    if (!comment.empty()) out << comment;
    out << "community_id,year,count\n";
    for (const auto& s : all) {
        for (int i = 0; i < s.n_years(); ++i) {
            out << s.community_id << ',' << (s.year_start + i) << ',' << s.counts[i] << '\n';
        }
    }
}

std::vector<CommunitySeries> load_series_csv(const std::string& path) {
    csv::Table t = csv::read_file(path);
    int id_col = t.column("community_id");
    int year_col = t.column("year");
    int count_col = t.column("count");
    if (id_col < 0 || year_col < 0 || count_col < 0) {
        throw std::runtime_error("series: " + path +
                                 " must have columns community_id,year,count");
    }
    std::map<int, std::map<int, long long>> by_community;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        try {
            int id = std::stoi(row[id_col]);
            int year = std::stoi(row[year_col]);
            long long count = std::stoll(row[count_col]);
            if (count < 0) throw std::invalid_argument("negative");
            if (!by_community[id].emplace(year, count).second) {
                throw std::invalid_argument("duplicate year");
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("series: line " + std::to_string(t.line_numbers[i]) + ": " +
                                     e.what() + " in " + path);
        }
    }
    std::vector<CommunitySeries> out;
    for (const auto& [id, years] : by_community) {
        CommunitySeries s;
        s.community_id = id;
        s.year_start = years.begin()->first;
        s.year_end = years.rbegin()->first;
        s.counts.assign(s.n_years(), 0);
        for (const auto& [year, count] : years) {
            s.counts[year - s.year_start] = count;
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace citegrowth::series
