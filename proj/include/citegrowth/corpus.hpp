#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace citegrowth::corpus {

struct PatentRecord {
    std::string app_id;
    int app_year = 0;
    std::vector<std::string> ipc_codes;
};

struct LoadConfig {
    std::string id_column = "app_id";
    std::string year_column = "app_year";
    std::string ipc_column = "ipc_codes";
    char ipc_delimiter = ';';
    int year_min = 1900;  // hard bounds, row error outside
    int year_max = 2100;
    int warn_year_min = 1960;  // soft bounds, warning outside
    int warn_year_max = 2013;
};

struct PatentTable {
    std::vector<PatentRecord> records;
    std::vector<std::string> warnings;
};

using Citation = std::pair<std::string, std::string>;  // citing_id -> cited_id

/// Immutable directed simple graph over patents. Edge (u, v) means u cites v.
struct CitationGraph {
    int n_nodes = 0;
    std::vector<std::pair<int, int>> edges;  // citing index -> cited index
    std::vector<std::string> id_of;          // node index -> app_id
    std::vector<int> year_of;                // node index -> application year

    std::optional<int> index_of(const std::string& app_id) const;
};

struct DropCounts {
    std::size_t dangling = 0;    // an endpoint not in the table
    std::size_t self_loops = 0;
    std::size_t duplicates = 0;
};

PatentTable load_patents(const std::string& path, const LoadConfig& config = {});
PatentTable parse_patents(const std::string& text, const LoadConfig& config = {});
void save_patents(const PatentTable& table, const std::string& path,
                  const LoadConfig& config = {}, const std::string& comment = "");

std::vector<Citation> load_citations(const std::string& path);
void save_citations(const std::vector<Citation>& citations, const std::string& path,
                    const std::string& comment = "");

/// Keeps records having at least one IPC code that starts with one of the
/// prefixes. Input order is preserved; result may be empty.
PatentTable filter_by_ipc(const PatentTable& table, const std::vector<std::string>& prefixes);

/// Builds the citation graph over the table's records. Citations touching
/// unknown ids, self-loops and duplicate pairs are dropped and counted.
CitationGraph build_graph(const PatentTable& table, const std::vector<Citation>& citations,
                          DropCounts* drops = nullptr);

}  // namespace citegrowth::corpus
