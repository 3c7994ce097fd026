#pragma once

#include <optional>
#include <string>
#include <vector>

#include "citegrowth/corpus.hpp"

namespace citegrowth::corpus {

// DOT dialect used for citation graphs:
//   digraph G {
//     "id" [year=1999];            node statement, optional comm attribute
//     "citing" -> "cited";         edge statement
//   }
// Nodes are written in index order and edges in edge-list order, so
// re-emitting a parsed file is byte-stable.

void write_dot(const CitationGraph& graph, const std::string& path,
               const std::vector<int>* community = nullptr);
std::string dot_string(const CitationGraph& graph, const std::vector<int>* community = nullptr);

/// Parsed node communities end up in `community` (empty when the file has
/// no comm attributes). Malformed statements raise with the line number.
CitationGraph read_dot(const std::string& path, std::vector<int>* community = nullptr);
CitationGraph parse_dot(const std::string& text, std::vector<int>* community = nullptr);

}  // namespace citegrowth::corpus
