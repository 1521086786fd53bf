// SPDX-License-Identifier: Apache-2.0

#include "fopw/rewire.hpp"

#include <algorithm>
#include <set>

#include "fopw/block_iso.hpp"
#include "fopw/errors.hpp"

namespace fopw {
namespace {

void check_cuts(const RankedDecomposition& rpd, int s1, int s2) {
  if (!(1 <= s1 && s1 < s2 && s2 <= rpd.length())) {
    throw PreconditionError("cuts (" + std::to_string(s1) + ", " + std::to_string(s2) +
                            ") are not increasing bag indices in 1.." + std::to_string(rpd.length()));
  }
}

bool in_bag(const RankedDecomposition& rpd, Vertex v, int j) { return rpd.span(v).contains(j); }

bool strictly_between(const RankedDecomposition& rpd, Vertex u, int s1, int s2) {
  const Span& sp = rpd.span(u);
  return sp.present() && sp.first > s1 && sp.last < s2;
}

bool after(const RankedDecomposition& rpd, Vertex u, int s2) {
  const Span& sp = rpd.span(u);
  return sp.present() && sp.first > s2;
}

// Non-terminals meeting bags [lo, hi] and avoiding the listed bags.
std::vector<Vertex> meeting_range(const Graph& g, const RankedDecomposition& rpd, int lo, int hi,
                                  std::initializer_list<int> avoid) {
  std::vector<Vertex> out;
  lo = std::max(lo, 1);
  hi = std::min(hi, rpd.length());
  if (lo > hi) return out;
  Span range{lo, hi};
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.is_terminal(v) || !rpd.span(v).intersects(range)) continue;
    if (std::any_of(avoid.begin(), avoid.end(), [&](int j) { return in_bag(rpd, v, j); })) continue;
    out.push_back(v);
  }
  return out;
}

std::vector<Vertex> part_between(const Graph& g, const RankedDecomposition& rpd, int c1, int c2) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.is_terminal(v)) continue;
    if (strictly_between(rpd, v, c1, c2) || in_bag(rpd, v, c2)) out.push_back(v);
  }
  return out;
}

}  // namespace

RewirePlan plan_rewire(const Graph& g, const RankedDecomposition& rpd, int s1, int s2, int radius) {
  check_cuts(rpd, s1, s2);
  RewirePlan plan;
  plan.s1 = s1;
  plan.s2 = s2;
  plan.radius = radius;
  plan.separator1 = rpd.bag(s1);
  plan.separator2 = rpd.bag(s2);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.is_terminal(v) || in_bag(rpd, v, s1) || in_bag(rpd, v, s2)) continue;
    const Span& sp = rpd.span(v);
    if (!sp.present()) continue;
    if (sp.last < s1) {
      plan.x.push_back(v);
    } else if (sp.first > s2) {
      plan.z.push_back(v);
    } else {
      plan.y.push_back(v);
    }
  }
  if (radius > 0) {
    plan.x1 = meeting_range(g, rpd, s1 - radius, s1 - 1, {s1});
    plan.y1 = meeting_range(g, rpd, s1 + 1, s1 + radius, {s1, s2});
    plan.y2 = meeting_range(g, rpd, s2 - radius, s2 - 1, {s1, s2});
    plan.z1 = meeting_range(g, rpd, s2 + 1, s2 + radius, {s2});
  }
  if (s1 - radius >= 1 && s2 + radius <= rpd.length() &&
      block_isomorphic(rpd, g, s1 - radius, s1 + radius, s2 - radius, s2 + radius)) {
    plan.block_map = canonical_block_map(rpd, g, s1 - radius, s2 - radius, 2 * radius);
  }
  return plan;
}

Graph rewire(const Graph& g, const RankedDecomposition& rpd, int s1, int s2) {
  check_cuts(rpd, s1, s2);
  if (rpd.vertex_count() != g.vertex_count()) {
    throw PreconditionError("decomposition and graph disagree on the vertex count");
  }
  std::set<Edge> edges;
  for (const Edge& e : g.edges()) edges.insert(e);
  auto key = [](Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; };

  auto apply_clause = [&](int from, int to, auto&& far_side) {
    std::vector<Edge> added;
    for (Vertex v : rpd.bag(from)) {
      if (g.is_terminal(v)) continue;
      Vertex mate = rpd.vertex_with_rank(to, rpd.rank_of(v));
      for (Vertex u : g.neighbors(v)) {
        if (g.is_terminal(u) || !far_side(u)) continue;
        edges.erase(key(u, v));
        if (mate != -1) added.push_back(key(u, mate));
      }
    }
    edges.insert(added.begin(), added.end());
  };
  apply_clause(s1, s2, [&](Vertex u) { return strictly_between(rpd, u, s1, s2); });
  apply_clause(s2, s1, [&](Vertex u) { return after(rpd, u, s2); });

  return Graph(g.vertex_count(), {edges.begin(), edges.end()}, g.terminal_map());
}

SafetyVerdict check_rewire_safety(const Graph& g, const RankedDecomposition& rpd, int s1, int s2,
                                  int q, int bound) {
  check_cuts(rpd, s1, s2);
  if (q < 0 || q > 30 || bound < 0) throw PreconditionError("q or bound out of range");
  require_occurrence_bound(rpd, g, bound);
  const long long radius = static_cast<long long>(bound) * ((1LL << q) - 1);
  const long long length = rpd.length();

  SafetyVerdict verdict;
  if (!(s1 > 4 * radius)) {
    verdict.violation = "s1 > 4L fails (s1=" + std::to_string(s1) + ", L=" + std::to_string(radius) + ")";
  } else if (!(s2 < length - 4 * radius)) {
    verdict.violation = "s2 < l - 4L fails (s2=" + std::to_string(s2) + ", l=" +
                        std::to_string(length) + ", L=" + std::to_string(radius) + ")";
  } else if (!(s2 - s1 > 6 * radius)) {
    verdict.violation = "s2 - s1 > 6L fails (s2-s1=" + std::to_string(s2 - s1) + ", L=" +
                        std::to_string(radius) + ")";
  } else {
    RewirePlan plan = plan_rewire(g, rpd, s1, s2, static_cast<int>(radius));
    if (!plan.block_map) {
      verdict.violation = "blocks around s1 and s2 are not block isomorphic";
    } else {
      verdict.certificate = SafetyCertificate{q, bound, std::move(plan)};
    }
  }
  return verdict;
}

namespace {

bool same_set(std::vector<Vertex> a, std::vector<Vertex> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

VertexMapping identity_mapping(int n) {
  VertexMapping id{std::vector<Vertex>(n)};
  for (Vertex v = 0; v < n; ++v) id.image[v] = v;
  return id;
}

}  // namespace

bool is_swap_witness(const Graph& g, const std::vector<Vertex>& reference,
                     const std::vector<Vertex>& part, const VertexMapping& witness) {
  const int n = g.vertex_count();
  if (static_cast<int>(witness.image.size()) != n || reference.size() != part.size()) return false;
  if (same_set(reference, part)) return witness == identity_mapping(n);
  std::vector<char> in_ref(n, 0), in_part(n, 0);
  for (Vertex v : reference) in_ref[v] = 1;
  for (Vertex v : part) {
    if (in_ref[v]) return false;
    in_part[v] = 1;
  }
  for (Vertex v = 0; v < n; ++v) {
    Vertex w = witness(v);
    if (w < 0 || w >= n) return false;
    if (in_ref[v] && !in_part[w]) return false;
    if (in_part[v] && !in_ref[w]) return false;
    if (!in_ref[v] && !in_part[v] && w != v) return false;
  }
  return is_terminal_respecting_isomorphism(g, g, witness);
}

std::optional<VertexMapping> find_swap_witness(const Graph& g, const std::vector<Vertex>& reference,
                                               const std::vector<Vertex>& part) {
  const int n = g.vertex_count();
  if (reference.size() != part.size()) return std::nullopt;
  if (same_set(reference, part)) return identity_mapping(n);
  std::vector<char> role(n, 0);  // 1 reference, 2 part
  for (Vertex v : reference) role[v] = 1;
  for (Vertex v : part) {
    if (role[v] != 0) return std::nullopt;
    role[v] = 2;
  }
  Graph plain = g.with_terminals({});
  auto side = [&](char dropped) {
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < n; ++v) {
      if (role[v] != dropped) keep.push_back(v);
    }
    Subgraph sub = induced_subgraph(plain, keep);
    std::vector<Vertex> fixed;
    for (Vertex local = 0; local < sub.graph.vertex_count(); ++local) {
      if (role[sub.original[local]] == 0) fixed.push_back(local);
    }
    sub.graph = sub.graph.with_terminals(std::move(fixed));
    return sub;
  };
  Subgraph with_ref = side(2);
  Subgraph with_part = side(1);
  auto f = find_terminal_respecting_isomorphism(with_ref.graph, with_part.graph);
  if (!f) return std::nullopt;

  VertexMapping swap{std::vector<Vertex>(n)};
  for (Vertex v = 0; v < n; ++v) swap.image[v] = v;
  for (Vertex local = 0; local < with_ref.graph.vertex_count(); ++local) {
    Vertex v = with_ref.original[local];
    if (role[v] != 1) continue;
    Vertex w = with_part.original[(*f)(local)];
    swap.image[v] = w;
    swap.image[w] = v;
  }
  if (!is_swap_witness(g, reference, part, swap)) return std::nullopt;
  return swap;
}

std::vector<IdenticalPart> extract_identical_parts(const Graph& g_rewired,
                                                   const RankedDecomposition& rpd,
                                                   const std::vector<std::pair<int, int>>& cut_pairs) {
  std::vector<IdenticalPart> parts;
  if (cut_pairs.empty()) return parts;
  const int gap = cut_pairs.front().second - cut_pairs.front().first;
  for (auto [c1, c2] : cut_pairs) {
    check_cuts(rpd, c1, c2);
    if (c2 - c1 != gap) throw PreconditionError("cut pairs use different offsets");
  }
  const int n = g_rewired.vertex_count();
  const auto reference = part_between(g_rewired, rpd, cut_pairs.front().first, cut_pairs.front().second);

  const VertexMapping identity = identity_mapping(n);
  parts.push_back({reference, identity});

  for (std::size_t i = 1; i < cut_pairs.size(); ++i) {
    auto [c1, c2] = cut_pairs[i];
    auto part = part_between(g_rewired, rpd, c1, c2);
    auto block_map =
        canonical_block_map(rpd, g_rewired, cut_pairs.front().first + 1, c1 + 1, gap - 1);
    if (!block_map || part.size() != reference.size()) {
      throw WitnessError("cut pair " + std::to_string(i) + " has no matching block");
    }
    VertexMapping swap = identity;
    for (Vertex v : reference) {
      Vertex w = (*block_map)[v];
      if (w < 0 || !std::binary_search(part.begin(), part.end(), w)) {
        throw WitnessError("block map leaves part " + std::to_string(i));
      }
      swap.image[v] = w;
      swap.image[w] = v;
    }
    if (!is_swap_witness(g_rewired, reference, part, swap)) {
      throw WitnessError("witness for part " + std::to_string(i) + " is not an automorphism");
    }
    parts.push_back({std::move(part), std::move(swap)});
  }
  return parts;
}

Subgraph delete_one_part(const Graph& g, const std::vector<IdenticalPart>& parts, int q) {
  if (q < 0 || static_cast<int>(parts.size()) < q + 1) {
    throw PreconditionError("need at least q+1 = " + std::to_string(q + 1) + " identical parts, got " +
                            std::to_string(parts.size()));
  }
  const int n = g.vertex_count();
  std::vector<char> used(n, 0);
  for (const auto& part : parts) {
    for (Vertex v : part.vertices) {
      if (v < 0 || v >= n) throw PreconditionError("part vertex out of range");
      if (g.is_terminal(v)) throw PreconditionError("part contains a terminal");
      if (used[v]) throw PreconditionError("parts overlap");
      used[v] = 1;
    }
  }
  const auto& reference = parts.front().vertices;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!is_swap_witness(g, reference, parts[i].vertices, parts[i].witness)) {
      throw PreconditionError("part " + std::to_string(i) + " has an invalid witness");
    }
  }
  std::vector<char> drop(n, 0);
  for (Vertex v : reference) drop[v] = 1;
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < n; ++v) {
    if (!drop[v]) keep.push_back(v);
  }
  return induced_subgraph(g, keep);
}

CollapseResult collapse_interval(const Graph& g, const RankedDecomposition& rpd, int q1, int q2) {
  check_cuts(rpd, q1, q2);
  const int n = g.vertex_count();
  if (rpd.vertex_count() != n) {
    throw PreconditionError("decomposition and graph disagree on the vertex count");
  }
  std::vector<Vertex> target(n);
  for (Vertex v = 0; v < n; ++v) target[v] = v;
  std::vector<char> removed(n, 0);
  for (Vertex v : rpd.bag(q2)) {
    if (in_bag(rpd, v, q1)) continue;
    Vertex mate = rpd.vertex_with_rank(q1, rpd.rank_of(v));
    if (mate == -1) {
      throw PreconditionError("rank " + std::to_string(rpd.rank_of(v)) + " of bag " + std::to_string(q2) +
                              " is missing from bag " + std::to_string(q1));
    }
    target[v] = mate;
    removed[v] = 1;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!strictly_between(rpd, v, q1, q2)) continue;
    if (g.is_terminal(v)) throw PreconditionError("collapse would delete terminal " + std::to_string(v));
    target[v] = -1;
    removed[v] = 1;
  }

  CollapseResult result;
  std::vector<Vertex> fresh(n, -1);
  int count = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (!removed[v]) fresh[v] = count++;
  }
  result.remap.assign(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    if (target[v] != -1) result.remap[v] = fresh[target[v]];
  }

  std::vector<Edge> edges;
  for (auto [a, b] : g.edges()) {
    Vertex x = result.remap[a], y = result.remap[b];
    if (x == -1 || y == -1 || x == y) continue;
    edges.emplace_back(x, y);
  }
  std::vector<Vertex> labels;
  for (Vertex t : g.terminal_map()) labels.push_back(result.remap[t]);
  result.graph = Graph(count, std::move(edges), std::move(labels));

  std::vector<std::vector<Vertex>> bags;
  auto push_bag = [&](int j) {
    std::vector<Vertex> bag;
    for (Vertex v : rpd.bag(j)) bag.push_back(result.remap[v]);
    bags.push_back(std::move(bag));
  };
  for (int j = 1; j <= q1; ++j) push_bag(j);
  for (int j = q2 + 1; j <= rpd.length(); ++j) push_bag(j);
  result.shift = q2 - q1;

  std::vector<int> ranks(count, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (!removed[v]) ranks[fresh[v]] = rpd.rank_of(v);
  }
  PathDecomposition pd = remove_redundant_bags(make_decomposition(count, std::move(bags)));
  ValidationReport report = validate(result.graph, pd);
  if (!report.ok()) throw PreconditionError("collapsed decomposition is invalid: " + report.to_string());
  result.decomposition = RankedDecomposition(std::move(pd), std::move(ranks));
  return result;
}

}  // namespace fopw
