#include "citegrowth/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "citegrowth/csv.hpp"

namespace citegrowth::corpus {

std::optional<int> CitationGraph::index_of(const std::string& app_id) const {
    for (int i = 0; i < n_nodes; ++i) {
        if (id_of[i] == app_id) return i;
    }
    return std::nullopt;
}

namespace {

std::vector<std::string> split_codes(const std::string& s, char delim) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == delim) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

PatentTable table_from_csv(const csv::Table& t, const LoadConfig& config) {
    int id_col = t.column(config.id_column);
    int year_col = t.column(config.year_column);
    int ipc_col = t.column(config.ipc_column);
    if (id_col < 0) throw std::runtime_error("patents: missing column '" + config.id_column + "'");
    if (year_col < 0) throw std::runtime_error("patents: missing column '" + config.year_column + "'");
    if (ipc_col < 0) throw std::runtime_error("patents: missing column '" + config.ipc_column + "'");

    PatentTable table;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        std::size_t line = t.line_numbers[i];
        PatentRecord rec;
        rec.app_id = row[id_col];
        if (rec.app_id.empty()) {
            throw std::runtime_error("patents: line " + std::to_string(line) + ": empty app_id");
        }
        if (!seen.insert(rec.app_id).second) {
            throw std::runtime_error("patents: line " + std::to_string(line) +
                                     ": duplicate app_id '" + rec.app_id + "'");
        }
        try {
            std::size_t pos = 0;
            rec.app_year = std::stoi(row[year_col], &pos);
            if (pos != row[year_col].size()) throw std::invalid_argument("trailing chars");
        } catch (const std::exception&) {
            throw std::runtime_error("patents: line " + std::to_string(line) +
                                     ": unparseable year '" + row[year_col] + "'");
        }
        if (rec.app_year < config.year_min || rec.app_year > config.year_max) {
            throw std::runtime_error("patents: line " + std::to_string(line) + ": year " +
                                     std::to_string(rec.app_year) + " outside [" +
                                     std::to_string(config.year_min) + ", " +
                                     std::to_string(config.year_max) + "]");
        }
        if (rec.app_year < config.warn_year_min || rec.app_year > config.warn_year_max) {
            table.warnings.push_back("patents: line " + std::to_string(line) + ": year " +
                                     std::to_string(rec.app_year) + " outside usual range [" +
                                     std::to_string(config.warn_year_min) + ", " +
                                     std::to_string(config.warn_year_max) + "]");
        }
        rec.ipc_codes = split_codes(row[ipc_col], config.ipc_delimiter);
        table.records.push_back(std::move(rec));
    }
    return table;
}

}  // namespace

PatentTable load_patents(const std::string& path, const LoadConfig& config) {
    return table_from_csv(csv::read_file(path), config);
}

PatentTable parse_patents(const std::string& text, const LoadConfig& config) {
    return table_from_csv(csv::parse(text), config);
}

void save_patents(const PatentTable& table, const std::string& path, const LoadConfig& config,
                  const std::string& comment) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("patents: cannot write " + path);
    if (!comment.empty()) out << comment;
    out << config.id_column << ',' << config.year_column << ',' << config.ipc_column << '\n';
    for (const auto& rec : table.records) {
        std::string codes;
        for (std::size_t i = 0; i < rec.ipc_codes.size(); ++i) {
            if (i) codes += config.ipc_delimiter;
            codes += rec.ipc_codes[i];
        }
        out << csv::escape_field(rec.app_id) << ',' << rec.app_year << ','
            << csv::escape_field(codes) << '\n';
    }
}

std::vector<Citation> load_citations(const std::string& path) {
    csv::Table t = csv::read_file(path);
    int citing_col = t.column("citing_id");
    int cited_col = t.column("cited_id");
    if (citing_col < 0) throw std::runtime_error("citations: missing column 'citing_id'");
    if (cited_col < 0) throw std::runtime_error("citations: missing column 'cited_id'");
    std::vector<Citation> out;
    out.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        out.emplace_back(row[citing_col], row[cited_col]);
    }
    return out;
}

void save_citations(const std::vector<Citation>& citations, const std::string& path,
                    const std::string& comment) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("citations: cannot write " + path);
    if (!comment.empty()) out << comment;
    out << "citing_id,cited_id\n";
    for (const auto& [citing, cited] : citations) {
        out << csv::escape_field(citing) << ',' << csv::escape_field(cited) << '\n';
    }
}

PatentTable filter_by_ipc(const PatentTable& table, const std::vector<std::string>& prefixes) {
    if (prefixes.empty()) {
        throw std::invalid_argument("filter_by_ipc: prefix list is empty");
    }
    PatentTable out;
    out.warnings = table.warnings;
    for (const auto& rec : table.records) {
        bool keep = false;
        for (const auto& code : rec.ipc_codes) {
            for (const auto& prefix : prefixes) {
                if (code.compare(0, prefix.size(), prefix) == 0) {
                    keep = true;
                    break;
                }
            }
            if (keep) break;
        }
        if (keep) out.records.push_back(rec);
    }
    return out;
}

CitationGraph build_graph(const PatentTable& table, const std::vector<Citation>& citations,
                          DropCounts* drops) {
    CitationGraph g;
    g.n_nodes = static_cast<int>(table.records.size());
    g.id_of.reserve(g.n_nodes);
    g.year_of.reserve(g.n_nodes);
    std::unordered_map<std::string, int> index;
    index.reserve(table.records.size());
    for (int i = 0; i < g.n_nodes; ++i) {
        g.id_of.push_back(table.records[i].app_id);
        g.year_of.push_back(table.records[i].app_year);
        index.emplace(table.records[i].app_id, i);
    }
    DropCounts counts;
    std::set<std::pair<int, int>> seen;
    for (const auto& [citing, cited] : citations) {
        auto it_u = index.find(citing);
        auto it_v = index.find(cited);
        if (it_u == index.end() || it_v == index.end()) {
            ++counts.dangling;
            continue;
        }
        if (it_u->second == it_v->second) {
            ++counts.self_loops;
            continue;
        }
        if (!seen.emplace(it_u->second, it_v->second).second) {
            ++counts.duplicates;
            continue;
        }
        g.edges.emplace_back(it_u->second, it_v->second);
    }
    if (drops) *drops = counts;
    return g;
}

}  // namespace citegrowth::corpus
