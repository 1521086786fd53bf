// SPDX-License-Identifier: Apache-2.0

#include "fopw/path_decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fopw/errors.hpp"

namespace fopw {

int PathDecomposition::max_bag_size() const {
  std::size_t best = 0;
  for (const auto& b : bags) best = std::max(best, b.size());
  return static_cast<int>(best);
}

PathDecomposition make_decomposition(int vertex_count, std::vector<std::vector<Vertex>> bags) {
  for (auto& b : bags) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
  return {vertex_count, std::move(bags)};
}

std::vector<Span> compute_spans(const PathDecomposition& pd) {
  std::vector<Span> spans(pd.vertex_count);
  for (int j = 1; j <= pd.length(); ++j) {
    for (Vertex v : pd.bag(j)) {
      if (v < 0 || v >= pd.vertex_count) continue;
      if (!spans[v].present()) spans[v].first = j;
      spans[v].last = j;
    }
  }
  return spans;
}

std::string ValidationReport::to_string() const {
  if (issues.empty()) return "valid";
  std::ostringstream out;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) out << '\n';
    out << issues[i].message;
  }
  return out.str();
}

ValidationReport validate_structure(const PathDecomposition& pd) {
  ValidationReport report;
  std::vector<int> count(pd.vertex_count, 0);
  for (int j = 1; j <= pd.length(); ++j) {
    for (Vertex v : pd.bag(j)) {
      if (v < 0 || v >= pd.vertex_count) {
        report.issues.push_back({ValidationIssue::Kind::kVertexOutOfRange, v, -1, j,
                                 "bag " + std::to_string(j) + " holds unknown vertex " +
                                     std::to_string(v)});
        continue;
      }
      ++count[v];
    }
  }
  auto spans = compute_spans(pd);
  for (Vertex v = 0; v < pd.vertex_count; ++v) {
    if (spans[v].present() && count[v] != spans[v].size()) {
      int gap = spans[v].first;
      while (std::binary_search(pd.bag(gap).begin(), pd.bag(gap).end(), v)) ++gap;
      report.issues.push_back({ValidationIssue::Kind::kBrokenInterval, v, -1, gap,
                               "vertex " + std::to_string(v) + " missing from bag " +
                                   std::to_string(gap) + " inside its interval"});
    }
  }
  return report;
}

ValidationReport validate(const Graph& g, const PathDecomposition& pd) {
  if (pd.vertex_count != g.vertex_count()) {
    ValidationReport report;
    report.issues.push_back({ValidationIssue::Kind::kVertexMismatch, -1, -1, 0,
                             "decomposition is over " + std::to_string(pd.vertex_count) +
                                 " vertices but the graph has " +
                                 std::to_string(g.vertex_count())});
    return report;
  }
  ValidationReport report = validate_structure(pd);
  auto spans = compute_spans(pd);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!spans[v].present()) {
      report.issues.push_back({ValidationIssue::Kind::kUncoveredVertex, v, -1, 0,
                               "vertex " + std::to_string(v) + " is in no bag"});
    }
  }
  for (auto [u, v] : g.edges()) {
    bool covered = false;
    if (spans[u].intersects(spans[v])) {
      for (int j = std::max(spans[u].first, spans[v].first);
           j <= std::min(spans[u].last, spans[v].last) && !covered; ++j) {
        const auto& b = pd.bag(j);
        covered = std::binary_search(b.begin(), b.end(), u) && std::binary_search(b.begin(), b.end(), v);
      }
    }
    if (!covered) {
      report.issues.push_back({ValidationIssue::Kind::kUncoveredEdge, u, v, 0,
                               "edge " + std::to_string(u) + "-" + std::to_string(v) +
                                   " is in no bag"});
    }
  }
  return report;
}

PathDecomposition remove_redundant_bags(const PathDecomposition& pd) {
  PathDecomposition out{pd.vertex_count, {}};
  for (const auto& b : pd.bags) {
    if (b.empty()) continue;
    if (!out.bags.empty() &&
        std::includes(out.bags.back().begin(), out.bags.back().end(), b.begin(), b.end())) {
      continue;
    }
    out.bags.push_back(b);
  }
  return out;
}

Graph build_interval_graph(const PathDecomposition& pd) {
  auto spans = compute_spans(pd);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < pd.vertex_count; ++u) {
    for (Vertex v = u + 1; v < pd.vertex_count; ++v) {
      if (spans[u].intersects(spans[v])) edges.emplace_back(u, v);
    }
  }
  return Graph(pd.vertex_count, std::move(edges));
}

RankedDecomposition::RankedDecomposition(PathDecomposition pd, std::vector<int> ranks)
    : pd_(std::move(pd)), ranks_(std::move(ranks)) {
  if (static_cast<int>(ranks_.size()) != pd_.vertex_count) {
    throw PreconditionError("ranking covers " + std::to_string(ranks_.size()) + " vertices, expected " +
                            std::to_string(pd_.vertex_count));
  }
  ValidationReport structure = validate_structure(pd_);
  if (!structure.ok()) throw PreconditionError(structure.to_string());
  spans_ = compute_spans(pd_);
  for (Vertex v = 0; v < pd_.vertex_count; ++v) {
    if (spans_[v].present() && ranks_[v] < 1) {
      throw PreconditionError("vertex " + std::to_string(v) + " has no rank");
    }
    rank_count_ = std::max(rank_count_, ranks_[v]);
  }
  by_rank_.assign(pd_.length(), std::vector<Vertex>(rank_count_ + 1, -1));
  for (int j = 1; j <= pd_.length(); ++j) {
    for (Vertex v : pd_.bag(j)) {
      Vertex& slot = by_rank_[j - 1][ranks_[v]];
      if (slot != -1) {
        throw PreconditionError("bag " + std::to_string(j) + " holds two vertices of rank " +
                                std::to_string(ranks_[v]));
      }
      slot = v;
    }
  }
}

Vertex RankedDecomposition::vertex_with_rank(int j, int rank) const {
  if (rank < 1 || rank > rank_count_) return -1;
  return by_rank_.at(j - 1)[rank];
}

RankedDecomposition rank(const PathDecomposition& pd) {
  auto spans = compute_spans(pd);
  std::vector<Vertex> order;
  for (Vertex v = 0; v < pd.vertex_count; ++v) {
    if (spans[v].present()) order.push_back(v);
  }
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return std::pair(spans[a].last, a) < std::pair(spans[b].last, b);
  });

  std::vector<int> ranks(pd.vertex_count, 0);
  int current = 0;
  while (!order.empty()) {
    ++current;
    std::vector<Vertex> rest;
    int last_end = 0;
    for (Vertex v : order) {
      if (spans[v].first > last_end) {
        ranks[v] = current;
        last_end = spans[v].last;
      } else {
        rest.push_back(v);
      }
    }
    order = std::move(rest);
  }
  return RankedDecomposition(pd, std::move(ranks));
}

int occurrence_count(const RankedDecomposition& rpd, Vertex v) {
  if (v < 0 || v >= rpd.vertex_count()) {
    throw PreconditionError("unknown vertex " + std::to_string(v));
  }
  return rpd.span(v).size();
}

RankingCheck check_ranking(const RankedDecomposition& rpd) {
  RankingCheck check;
  auto note = [&](const std::string& what) {
    if (check.first_violation.empty()) check.first_violation = what;
  };
  const int length = rpd.length();

  for (int j = 1; j <= length; ++j) {
    std::vector<int> seen;
    for (Vertex v : rpd.bag(j)) seen.push_back(rpd.rank_of(v));
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      check.ranks_unique_per_bag = false;
      note("bag " + std::to_string(j) + " repeats a rank");
    }
    if (j >= 2) {
      const auto& prev = rpd.bag(j - 1);
      const auto& cur = rpd.bag(j);
      if (std::includes(prev.begin(), prev.end(), cur.begin(), cur.end())) {
        check.normalized = false;
        note("bag " + std::to_string(j) + " introduces no vertex");
      }
    }
  }

  const int n = rpd.vertex_count();
  for (Vertex v = 0; v < n; ++v) {
    if (!rpd.span(v).present()) continue;
    std::vector<int> per_rank(rpd.rank_count() + 1, 0);
    for (Vertex u = 0; u < n; ++u) {
      if (u == v || rpd.rank_of(u) <= rpd.rank_of(v)) continue;
      if (rpd.span(u).intersects(rpd.span(v)) && ++per_rank[rpd.rank_of(u)] == 3) {
        check.higher_rank_sparse = false;
        note("vertex " + std::to_string(v) + " shares bags with three vertices of rank " +
             std::to_string(rpd.rank_of(u)));
      }
    }
  }

  if (rpd.rank_count() > 8 * rpd.decomposition().max_bag_size()) {
    check.within_rank_budget = false;
    note("uses " + std::to_string(rpd.rank_count()) + " ranks");
  }
  return check;
}

}  // namespace fopw
