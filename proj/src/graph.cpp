// SPDX-License-Identifier: Apache-2.0

#include "fopw/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

#include "fopw/errors.hpp"

namespace fopw {

Graph::Graph(int vertex_count, std::vector<Edge> edges,
             std::vector<Vertex> terminal_map)
    : adjacency_(vertex_count),
      terminal_map_(std::move(terminal_map)),
      terminal_flag_(vertex_count, 0) {
  if (vertex_count < 0) throw PreconditionError("negative vertex count");
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      throw PreconditionError("edge endpoint out of range: " + std::to_string(u) +
                              " " + std::to_string(v));
    }
    if (u == v) throw PreconditionError("self-loop at " + std::to_string(u));
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    edge_count_ += static_cast<int>(list.size());
  }
  edge_count_ /= 2;
  for (Vertex t : terminal_map_) {
    if (t < 0 || t >= vertex_count) {
      throw PreconditionError("terminal out of range: " + std::to_string(t));
    }
    terminal_flag_[t] = 1;
  }
}

std::vector<Vertex> Graph::terminal_set() const {
  std::vector<Vertex> set = terminal_map_;
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& list : adjacency_) best = std::max(best, static_cast<int>(list.size()));
  return best;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::with_terminals(std::vector<Vertex> terminal_map) const {
  return Graph(vertex_count(), edges(), std::move(terminal_map));
}

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep,
                          TerminalPolicy policy) {
  std::vector<Vertex> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<Vertex> renamed(g.vertex_count(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    Vertex v = sorted[i];
    if (v < 0 || v >= g.vertex_count()) {
      throw PreconditionError("kept vertex out of range: " + std::to_string(v));
    }
    renamed[v] = static_cast<Vertex>(i);
  }

  std::vector<Edge> edges;
  for (Vertex u : sorted) {
    for (Vertex v : g.neighbors(u)) {
      if (u < v && renamed[v] >= 0) edges.emplace_back(renamed[u], renamed[v]);
    }
  }

  std::vector<Vertex> terminals;
  for (Vertex t : g.terminal_map()) {
    if (renamed[t] >= 0) {
      terminals.push_back(renamed[t]);
    } else if (policy == TerminalPolicy::kRequireKept) {
      throw PreconditionError("terminal outside induced set");
    }
  }
  return {Graph(static_cast<int>(sorted.size()), std::move(edges), std::move(terminals)),
          std::move(sorted)};
}

Ball ball(const Graph& g, Vertex v, int r) {
  if (v < 0 || v >= g.vertex_count()) throw PreconditionError("ball center out of range");
  if (g.is_terminal(v)) throw PreconditionError("ball center is a terminal");
  if (r < 0) throw PreconditionError("negative ball radius");

  std::vector<int> dist(g.vertex_count(), -1);
  std::deque<Vertex> queue{v};
  dist[v] = 0;
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    // Paths may end at a terminal but never pass through one.
    if (x != v && g.is_terminal(x)) continue;
    if (dist[x] == r) continue;
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }

  std::vector<Vertex> keep = g.terminal_set();
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    if (dist[x] >= 0) keep.push_back(x);
  }
  Subgraph sub = induced_subgraph(g, keep);
  Vertex center = static_cast<Vertex>(
      std::lower_bound(sub.original.begin(), sub.original.end(), v) - sub.original.begin());
  return {std::move(sub.graph), center, std::move(sub.original)};
}

namespace {

// Positional adjacency of v to each label.
std::vector<bool> terminal_signature(const Graph& g, Vertex v) {
  std::vector<bool> sig(g.terminal_count());
  for (int i = 0; i < g.terminal_count(); ++i) sig[i] = g.adjacent(v, g.terminal_map()[i]);
  return sig;
}

// Joint colour refinement over both graphs. Initial colours encode degree,
// the terminal signature, the set of labels a vertex carries and the pin.
std::pair<std::vector<int>, std::vector<int>> refine_colours(
    const Graph& g1, const Graph& g2, const std::optional<Edge>& pinned) {
  using Key = std::pair<int, std::vector<int>>;
  auto initial = [&](const Graph& g, Vertex v, bool pin) {
    std::vector<int> key{g.degree(v), pin ? 1 : 0};
    for (bool b : terminal_signature(g, v)) key.push_back(b ? 1 : 0);
    for (int i = 0; i < g.terminal_count(); ++i) key.push_back(g.terminal_map()[i] == v ? 1 : 0);
    return key;
  };
  std::map<std::vector<int>, int> first_ids;
  std::vector<int> c1(g1.vertex_count()), c2(g2.vertex_count());
  for (Vertex v = 0; v < g1.vertex_count(); ++v) {
    auto key = initial(g1, v, pinned && pinned->first == v);
    c1[v] = first_ids.try_emplace(key, static_cast<int>(first_ids.size())).first->second;
  }
  for (Vertex v = 0; v < g2.vertex_count(); ++v) {
    auto key = initial(g2, v, pinned && pinned->second == v);
    c2[v] = first_ids.try_emplace(key, static_cast<int>(first_ids.size())).first->second;
  }

  std::size_t classes = first_ids.size();
  while (true) {
    std::map<Key, int> ids;
    auto step = [&](const Graph& g, const std::vector<int>& colour) {
      std::vector<int> next(g.vertex_count());
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        std::vector<int> around;
        for (Vertex u : g.neighbors(v)) around.push_back(colour[u]);
        std::sort(around.begin(), around.end());
        Key key{colour[v], std::move(around)};
        next[v] = ids.try_emplace(std::move(key), static_cast<int>(ids.size())).first->second;
      }
      return next;
    };
    auto n1 = step(g1, c1);
    auto n2 = step(g2, c2);
    c1 = std::move(n1);
    c2 = std::move(n2);
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return {std::move(c1), std::move(c2)};
}

class IsomorphismSearch {
 public:
  IsomorphismSearch(const Graph& g1, const Graph& g2, std::vector<int> c1,
                    std::vector<int> c2)
      : g1_(g1), g2_(g2), colour1_(std::move(c1)), colour2_(std::move(c2)),
        forward_(g1.vertex_count(), -1), backward_(g2.vertex_count(), -1) {}

  bool assign(Vertex u, Vertex v) {
    if (forward_[u] == v && backward_[v] == u) return true;
    if (forward_[u] >= 0 || backward_[v] >= 0) return false;
    if (!compatible(u, v)) return false;
    forward_[u] = v;
    backward_[v] = u;
    return true;
  }

  bool run() {
    build_order();
    return extend(0);
  }

  VertexMapping mapping() const { return {forward_}; }

 private:
  bool compatible(Vertex u, Vertex v) const {
    if (colour1_[u] != colour2_[v]) return false;
    if (g1_.degree(u) != g2_.degree(v)) return false;
    int mapped_neighbours = 0;
    for (Vertex x : g1_.neighbors(u)) {
      if (forward_[x] < 0) continue;
      if (!g2_.adjacent(v, forward_[x])) return false;
      ++mapped_neighbours;
    }
    int mapped_neighbours2 = 0;
    for (Vertex y : g2_.neighbors(v)) {
      if (backward_[y] >= 0) ++mapped_neighbours2;
    }
    return mapped_neighbours == mapped_neighbours2;
  }

  // Unassigned g1 vertices, each next one chosen with the most already
  // ordered neighbours, then highest degree, then smallest id.
  void build_order() {
    std::vector<char> placed(g1_.vertex_count(), 0);
    std::vector<int> touched(g1_.vertex_count(), 0);
    for (Vertex u = 0; u < g1_.vertex_count(); ++u) {
      if (forward_[u] >= 0) {
        placed[u] = 1;
        for (Vertex x : g1_.neighbors(u)) ++touched[x];
      }
    }
    while (true) {
      Vertex best = -1;
      for (Vertex u = 0; u < g1_.vertex_count(); ++u) {
        if (placed[u]) continue;
        if (best < 0 || touched[u] > touched[best] ||
            (touched[u] == touched[best] && g1_.degree(u) > g1_.degree(best))) {
          best = u;
        }
      }
      if (best < 0) break;
      placed[best] = 1;
      order_.push_back(best);
      for (Vertex x : g1_.neighbors(best)) ++touched[x];
    }
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    Vertex u = order_[depth];
    Vertex anchor = -1;
    for (Vertex x : g1_.neighbors(u)) {
      if (forward_[x] >= 0) {
        anchor = forward_[x];
        break;
      }
    }
    auto try_candidate = [&](Vertex v) {
      if (backward_[v] >= 0 || !compatible(u, v)) return false;
      forward_[u] = v;
      backward_[v] = u;
      if (extend(depth + 1)) return true;
      forward_[u] = -1;
      backward_[v] = -1;
      return false;
    };
    if (anchor >= 0) {
      for (Vertex v : g2_.neighbors(anchor)) {
        if (try_candidate(v)) return true;
      }
      return false;
    }
    for (Vertex v = 0; v < g2_.vertex_count(); ++v) {
      if (try_candidate(v)) return true;
    }
    return false;
  }

  const Graph& g1_;
  const Graph& g2_;
  std::vector<int> colour1_, colour2_;
  std::vector<Vertex> forward_, backward_;
  std::vector<Vertex> order_;
};

}  // namespace

std::optional<VertexMapping> find_terminal_respecting_isomorphism(
    const Graph& g1, const Graph& g2, const IsomorphismOptions& options) {
  if (g1.terminal_count() != g2.terminal_count()) {
    throw PreconditionError("isomorphism between graphs with different label counts");
  }
  if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count()) {
    return std::nullopt;
  }
  auto [c1, c2] = refine_colours(g1, g2, options.pinned);
  {
    std::vector<int> h1 = c1, h2 = c2;
    std::sort(h1.begin(), h1.end());
    std::sort(h2.begin(), h2.end());
    if (h1 != h2) return std::nullopt;
  }

  IsomorphismSearch search(g1, g2, std::move(c1), std::move(c2));
  for (int i = 0; i < g1.terminal_count(); ++i) {
    if (!search.assign(g1.terminal_map()[i], g2.terminal_map()[i])) return std::nullopt;
  }
  if (options.pinned && !search.assign(options.pinned->first, options.pinned->second)) {
    return std::nullopt;
  }
  if (!search.run()) return std::nullopt;
  return search.mapping();
}

bool is_terminal_respecting_isomorphism(const Graph& g1, const Graph& g2,
                                        const VertexMapping& f) {
  if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() ||
      g1.terminal_count() != g2.terminal_count() ||
      static_cast<int>(f.image.size()) != g1.vertex_count()) {
    return false;
  }
  std::vector<char> hit(g2.vertex_count(), 0);
  for (Vertex v : f.image) {
    if (v < 0 || v >= g2.vertex_count() || hit[v]) return false;
    hit[v] = 1;
  }
  for (int i = 0; i < g1.terminal_count(); ++i) {
    if (f(g1.terminal_map()[i]) != g2.terminal_map()[i]) return false;
  }
  for (auto [u, v] : g1.edges()) {
    if (!g2.adjacent(f(u), f(v))) return false;
  }
  return true;
}

bool r_similar(const Graph& g1, Vertex v1, const Graph& g2, Vertex v2, int r) {
  Ball b1 = ball(g1, v1, r);
  Ball b2 = ball(g2, v2, r);
  IsomorphismOptions options;
  options.pinned = Edge{b1.center, b2.center};
  return find_terminal_respecting_isomorphism(b1.graph, b2.graph, options).has_value();
}

}  // namespace fopw
