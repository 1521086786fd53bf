// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace fopw {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Undirected simple graph on the dense vertex ids 0..n-1 together with a
/// terminal labeling: label i (1-based) names the vertex terminal(i). Labels
/// may repeat a vertex. Immutable after construction.
class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, std::vector<Edge> edges,
        std::vector<Vertex> terminal_map = {});

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return edge_count_; }
  int terminal_count() const { return static_cast<int>(terminal_map_.size()); }

  const std::vector<Vertex>& terminal_map() const { return terminal_map_; }
  Vertex terminal(int label) const { return terminal_map_.at(label - 1); }
  bool is_terminal(Vertex v) const { return terminal_flag_[v] != 0; }
  /// Image of the terminal map, sorted and deduplicated.
  std::vector<Vertex> terminal_set() const;

  bool adjacent(Vertex u, Vertex v) const;
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
  int max_degree() const;

  /// All edges as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

  Graph with_terminals(std::vector<Vertex> terminal_map) const;

  bool operator==(const Graph& other) const {
    return adjacency_ == other.adjacency_ && terminal_map_ == other.terminal_map_;
  }

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Vertex> terminal_map_;
  std::vector<char> terminal_flag_;
  int edge_count_ = 0;
};

/// Total injective map from the vertices of one graph into another;
/// `image[v]` is the image of v.
struct VertexMapping {
  std::vector<Vertex> image;

  Vertex operator()(Vertex v) const { return image[v]; }
  bool operator==(const VertexMapping&) const = default;
};

/// A graph derived from a parent graph; `original[v]` is the parent id of v.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> original;
};

/// Ball around `center`; the center is carried so callers can pin it.
struct Ball {
  Graph graph;
  Vertex center = -1;
  std::vector<Vertex> original;
};

enum class TerminalPolicy {
  kRequireKept,  // every terminal must survive
  kDrop,         // labels of dropped vertices are removed from the map
};

/// G[keep]. Vertices keep their relative order. Throws PreconditionError
/// "terminal outside induced set" when a labeled vertex is dropped under
/// kRequireKept.
Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep,
                          TerminalPolicy policy = TerminalPolicy::kRequireKept);

/// Ball of radius r around the non-terminal v: induced on the terminals plus
/// everything reachable from v by a path of length <= r whose internal
/// vertices are non-terminals.
Ball ball(const Graph& g, Vertex v, int r);

struct IsomorphismOptions {
  /// Optional pinned pair (u in g1, v in g2) that must map to each other.
  std::optional<Edge> pinned;
};

/// Backtracking search for a terminal-respecting isomorphism g1 -> g2.
/// Candidates are ordered by (degree, terminal-adjacency signature, id).
std::optional<VertexMapping> find_terminal_respecting_isomorphism(
    const Graph& g1, const Graph& g2, const IsomorphismOptions& options = {});

/// True iff `f` is a terminal-respecting isomorphism g1 -> g2.
bool is_terminal_respecting_isomorphism(const Graph& g1, const Graph& g2,
                                        const VertexMapping& f);

/// r-similarity of v1 in g1 and v2 in g2 (both non-terminals).
bool r_similar(const Graph& g1, Vertex v1, const Graph& g2, Vertex v2, int r);

}  // namespace fopw
