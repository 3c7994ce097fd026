#pragma once

#include <string>
#include <vector>

namespace citegrowth::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    // 1-based file line of each row (comment/blank lines shift these)
    std::vector<std::size_t> line_numbers;

    // index of a header column, -1 if absent
    int column(const std::string& name) const;
};

// Reads a comma-separated file with a mandatory header row. Quoted fields
// with "" escapes are supported; lines starting with '#' are skipped so
// artifacts can carry a config echo.
Table read_file(const std::string& path);
Table parse(const std::string& text);

std::string escape_field(const std::string& field);

}  // namespace citegrowth::csv
