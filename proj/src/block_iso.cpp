// SPDX-License-Identifier: Apache-2.0

#include "fopw/block_iso.hpp"

#include <algorithm>
#include <map>

#include "fopw/errors.hpp"

namespace fopw {
namespace {

class BitWriter {
 public:
  void push(bool bit) {
    if (sig_.bit_length % 64 == 0) sig_.words.push_back(0);
    if (bit) sig_.words.back() |= std::uint64_t{1} << (sig_.bit_length % 64);
    ++sig_.bit_length;
  }
  BlockSignature take() { return std::move(sig_); }

 private:
  BlockSignature sig_;
};

void check_bag_range(const RankedDecomposition& rpd, int s, int t) {
  if (s < 1 || t > rpd.length() || s > t) {
    throw PreconditionError("block [" + std::to_string(s) + ", " + std::to_string(t) +
                            "] is outside bags 1.." + std::to_string(rpd.length()));
  }
}

std::vector<Vertex> terminals_in_bag(const RankedDecomposition& rpd, const Graph& g, int j) {
  std::vector<Vertex> out;
  for (Vertex v : rpd.bag(j)) {
    if (g.is_terminal(v)) out.push_back(v);
  }
  return out;
}

std::vector<int> rank_set(const RankedDecomposition& rpd, int j) {
  std::vector<int> out;
  for (Vertex v : rpd.bag(j)) out.push_back(rpd.rank_of(v));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> introduced_ranks(const RankedDecomposition& rpd, int j) {
  std::vector<int> out;
  for (Vertex v : rpd.bag(j)) {
    if (rpd.span(v).first == j) out.push_back(rpd.rank_of(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Sorted vertex set T + bags s..t.
std::vector<Vertex> block_domain(const RankedDecomposition& rpd, const Graph& g, int s, int t) {
  std::vector<Vertex> out = g.terminal_set();
  for (int j = s; j <= t; ++j) out.insert(out.end(), rpd.bag(j).begin(), rpd.bag(j).end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int induced_edge_count(const Graph& g, const std::vector<Vertex>& sorted_set) {
  int count = 0;
  for (Vertex x : sorted_set) {
    for (Vertex y : g.neighbors(x)) {
      if (x < y && std::binary_search(sorted_set.begin(), sorted_set.end(), y)) ++count;
    }
  }
  return count;
}

}  // namespace

std::size_t signature_bit_bound(int length, int ranks, int labels) {
  std::size_t p = static_cast<std::size_t>(ranks);
  return static_cast<std::size_t>(length + 1) * (p * p + 2 * p + static_cast<std::size_t>(labels) * p);
}

BlockSignature block_signature(const RankedDecomposition& rpd, const Graph& g, int s, int length) {
  if (length < 0) throw PreconditionError("negative block length");
  check_bag_range(rpd, s, s + length);
  if (rpd.vertex_count() != g.vertex_count()) {
    throw PreconditionError("decomposition and graph disagree on the vertex count");
  }
  const auto terminals = terminals_in_bag(rpd, g, s);
  for (int j = s + 1; j <= s + length; ++j) {
    if (terminals_in_bag(rpd, g, j) != terminals) {
      throw PreconditionError("terminal set varies within the block starting at bag " +
                              std::to_string(s));
    }
  }

  const int p = rpd.rank_count();
  const int k = g.terminal_count();
  BitWriter out;
  for (int j = s; j <= s + length; ++j) {
    std::vector<Vertex> at(p + 1, -1);
    for (int r = 1; r <= p; ++r) at[r] = rpd.vertex_with_rank(j, r);
    for (int r = 1; r <= p; ++r) out.push(at[r] != -1);
    for (int r = 1; r <= p; ++r) {
      out.push(at[r] != -1 && (j == s || rpd.span(at[r]).first == j));
    }
    for (int r = 1; r <= p; ++r) {
      for (int r2 = r + 1; r2 <= p; ++r2) {
        out.push(at[r] != -1 && at[r2] != -1 && g.adjacent(at[r], at[r2]));
      }
    }
    for (int label = 1; label <= k; ++label) {
      for (int r = 1; r <= p; ++r) out.push(at[r] != -1 && g.adjacent(at[r], g.terminal(label)));
    }
  }
  return out.take();
}

std::optional<std::vector<Vertex>> canonical_block_map(const RankedDecomposition& rpd,
                                                       const Graph& g, int s1, int s2,
                                                       int length) {
  check_bag_range(rpd, s1, s1 + length);
  check_bag_range(rpd, s2, s2 + length);
  std::vector<Vertex> image(g.vertex_count(), -1);
  for (Vertex t : g.terminal_set()) image[t] = t;
  for (int j = s1; j <= s1 + length; ++j) {
    for (Vertex v : rpd.bag(j)) {
      int first = std::max(rpd.span(v).first, s1);
      if (first != j) continue;
      Vertex target = rpd.vertex_with_rank(s2 + (j - s1), rpd.rank_of(v));
      if (target == -1) return std::nullopt;
      image[v] = target;
    }
  }
  return image;
}

bool block_isomorphic(const RankedDecomposition& rpd, const Graph& g, int s1, int t1, int s2,
                      int t2) {
  if (t1 - s1 != t2 - s2) throw PreconditionError("blocks have different lengths");
  check_bag_range(rpd, s1, t1);
  check_bag_range(rpd, s2, t2);
  const int length = t1 - s1;

  for (int o = 0; o <= length; ++o) {
    if (rank_set(rpd, s1 + o) != rank_set(rpd, s2 + o)) return false;
    if (o > 0 && introduced_ranks(rpd, s1 + o) != introduced_ranks(rpd, s2 + o)) return false;
  }

  auto image = canonical_block_map(rpd, g, s1, s2, length);
  if (!image) return false;
  const auto domain = block_domain(rpd, g, s1, t1);
  const auto codomain = block_domain(rpd, g, s2, t2);
  if (domain.size() != codomain.size()) return false;

  std::vector<Vertex> targets;
  for (Vertex x : domain) targets.push_back((*image)[x]);
  std::sort(targets.begin(), targets.end());
  if (targets != codomain) return false;

  for (int label = 1; label <= g.terminal_count(); ++label) {
    if ((*image)[g.terminal(label)] != g.terminal(label)) return false;
  }
  for (Vertex x : domain) {
    for (Vertex y : g.neighbors(x)) {
      if (x < y && std::binary_search(domain.begin(), domain.end(), y) &&
          !g.adjacent((*image)[x], (*image)[y])) {
        return false;
      }
    }
  }
  return induced_edge_count(g, domain) == induced_edge_count(g, codomain);
}

std::pair<int, int> find_pair(const RankedDecomposition& rpd, const Graph& g, int first,
                              int last, int length, int s) {
  if (length < 0) throw PreconditionError("negative block length");
  first = std::max(first, 1);
  last = std::min(last, rpd.length());
  std::map<BlockSignature, int> seen;
  for (int start = std::max(s, first); start + length <= last; start += length + 1) {
    auto sig = block_signature(rpd, g, start, length);
    auto [it, inserted] = seen.emplace(std::move(sig), start);
    if (!inserted) {
      if (!block_isomorphic(rpd, g, it->second, it->second + length, start, start + length)) {
        throw WitnessError("equal signatures at bags " + std::to_string(it->second) + " and " +
                           std::to_string(start) + " but blocks are not isomorphic");
      }
      return {it->second, start};
    }
  }
  throw SearchError("pigeonhole window too small");
}

std::vector<int> find_repeats(const RankedDecomposition& rpd, const Graph& g, int first,
                              int last, int length, int count) {
  if (length < 0 || count < 0) throw PreconditionError("negative block length or count");
  first = std::max(first, 1);
  last = std::min(last, rpd.length());
  if (count == 0) {
    if (first + length > last) throw SearchError("pigeonhole window too small");
    return {first};
  }
  std::map<BlockSignature, std::vector<int>> classes;
  for (int start = first; start + length <= last; start += length + 1) {
    auto& members = classes[block_signature(rpd, g, start, length)];
    members.push_back(start);
    if (static_cast<int>(members.size()) == count + 1) {
      for (std::size_t a = 1; a < members.size(); ++a) {
        if (!block_isomorphic(rpd, g, members[0], members[0] + length, members[a],
                              members[a] + length)) {
          throw WitnessError("equal signatures but blocks are not isomorphic");
        }
      }
      return members;
    }
  }
  throw SearchError("pigeonhole window too small");
}

void require_occurrence_bound(const RankedDecomposition& rpd, const Graph& g, int bound) {
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_terminal(v) && rpd.span(v).size() > bound) {
      throw OccurrenceBoundError("vertex " + std::to_string(v) + " occurs in " +
                                 std::to_string(rpd.span(v).size()) + " bags, bound is " +
                                 std::to_string(bound));
    }
  }
}

bool ball_within_window(const RankedDecomposition& rpd, const Graph& g, Vertex v, int j, int r,
                        int bound) {
  require_occurrence_bound(rpd, g, bound);
  if (g.is_terminal(v)) throw PreconditionError("ball center is a terminal");
  if (!rpd.span(v).contains(j)) {
    throw PreconditionError("vertex " + std::to_string(v) + " is not in bag " + std::to_string(j));
  }
  const long lo = static_cast<long>(j) - static_cast<long>(r) * bound;
  const long hi = static_cast<long>(j) + static_cast<long>(r) * bound;
  Ball b = ball(g, v, r);
  for (Vertex local = 0; local < b.graph.vertex_count(); ++local) {
    Vertex w = b.original[local];
    if (g.is_terminal(w)) continue;
    const Span& sp = rpd.span(w);
    if (!sp.present() || sp.last < lo || sp.first > hi) return false;
  }
  return true;
}

}  // namespace fopw
