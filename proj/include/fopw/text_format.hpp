// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fopw/formula.hpp"
#include "fopw/graph.hpp"
#include "fopw/path_decomposition.hpp"

namespace fopw {

// Line-oriented ASCII formats; lines starting with the word `c` are comments.
//
// Graph:          p fo <n> <m> <k> / e <u> <v> (0-based) / t <i> <v> (1-based i)
// Decomposition:  s td <l> <max bag size> <n> / b <j> <v...> / r <v> <rank>
//
// ParseError offsets are 1-based line numbers.

std::string write_graph(const Graph& g);
Graph read_graph(std::string_view text);

struct DecompositionFile {
  PathDecomposition decomposition;
  /// Present when the file carries `r` lines (then for every vertex).
  std::optional<std::vector<int>> ranks;
};

std::string write_decomposition(const PathDecomposition& pd);
std::string write_ranked_decomposition(const RankedDecomposition& rpd);
DecompositionFile read_decomposition(std::string_view text);

/// A formula file: comment lines dropped, the rest parsed as one formula.
Formula read_formula(std::string_view text, int k);

/// Whole file contents; throws Error when the file cannot be read.
std::string read_file(const std::string& path);
/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace fopw
