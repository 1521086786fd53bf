// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "fopw/graph.hpp"

namespace fopw {

/// Bags B_1..B_l over the vertices 0..vertex_count-1. Bag indices are
/// 1-based throughout the public API; each bag is kept sorted.
struct PathDecomposition {
  int vertex_count = 0;
  std::vector<std::vector<Vertex>> bags;

  int length() const { return static_cast<int>(bags.size()); }
  const std::vector<Vertex>& bag(int j) const { return bags.at(j - 1); }
  int max_bag_size() const;
  /// max_bag_size() - 1, or -1 for a decomposition without nonempty bags.
  int width() const { return max_bag_size() - 1; }

  bool operator==(const PathDecomposition&) const = default;
};

/// Normalizes bag contents (sort and deduplicate).
PathDecomposition make_decomposition(int vertex_count, std::vector<std::vector<Vertex>> bags);

/// Interval of bags [first, last] holding a vertex; {0, 0} if it is in none.
struct Span {
  int first = 0;
  int last = 0;

  bool present() const { return first > 0; }
  int size() const { return present() ? last - first + 1 : 0; }
  bool contains(int j) const { return present() && first <= j && j <= last; }
  bool intersects(const Span& o) const {
    return present() && o.present() && first <= o.last && o.first <= last;
  }
  bool operator==(const Span&) const = default;
};

/// First and last bag of each vertex. Does not check contiguity.
std::vector<Span> compute_spans(const PathDecomposition& pd);

struct ValidationIssue {
  enum class Kind { kVertexOutOfRange, kVertexMismatch, kUncoveredVertex, kUncoveredEdge, kBrokenInterval };
  Kind kind;
  Vertex u = -1;
  Vertex v = -1;
  int bag = 0;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

/// Checks coverage of every vertex and edge and the contiguity of each
/// vertex's bag interval. Never throws on a bad decomposition.
ValidationReport validate(const Graph& g, const PathDecomposition& pd);
/// Contiguity and range checks only.
ValidationReport validate_structure(const PathDecomposition& pd);

/// Deletes every bag contained in its (surviving) predecessor and every
/// empty bag, so each bag after the first introduces a vertex.
PathDecomposition remove_redundant_bags(const PathDecomposition& pd);

/// One vertex per graph vertex, edge uv iff the bag intervals of u and v meet.
Graph build_interval_graph(const PathDecomposition& pd);

/// Path decomposition with a ranking: no bag holds two vertices of equal
/// rank. Ranks are 1-based; vertices outside every bag carry rank 0.
class RankedDecomposition {
 public:
  RankedDecomposition() = default;
  /// Throws PreconditionError if the intervals are not contiguous, a bag
  /// repeats a rank, or a bagged vertex has no positive rank.
  RankedDecomposition(PathDecomposition pd, std::vector<int> ranks);

  const PathDecomposition& decomposition() const { return pd_; }
  int vertex_count() const { return pd_.vertex_count; }
  int length() const { return pd_.length(); }
  const std::vector<Vertex>& bag(int j) const { return pd_.bag(j); }

  const std::vector<int>& ranks() const { return ranks_; }
  int rank_of(Vertex v) const { return ranks_.at(v); }
  /// Largest rank in use (the p' of the ranking).
  int rank_count() const { return rank_count_; }

  const std::vector<Span>& spans() const { return spans_; }
  const Span& span(Vertex v) const { return spans_.at(v); }

  /// Vertex of the given rank in B_j, or -1.
  Vertex vertex_with_rank(int j, int rank) const;

  bool operator==(const RankedDecomposition& o) const { return pd_ == o.pd_ && ranks_ == o.ranks_; }

 private:
  PathDecomposition pd_;
  std::vector<int> ranks_;
  std::vector<Span> spans_;
  int rank_count_ = 0;
  // by_rank_[j-1][r] is the rank-r vertex of B_j or -1.
  std::vector<std::vector<Vertex>> by_rank_;
};

/// Greedy ranking: repeatedly extracts a maximal set of pairwise disjoint
/// bag intervals, scanning vertices by (last bag, id) and taking each one
/// that starts after the previously taken interval ends. The k-th extracted
/// set receives rank k.
RankedDecomposition rank(const PathDecomposition& pd);

/// Number of bags holding v. Throws PreconditionError for an unknown vertex.
int occurrence_count(const RankedDecomposition& rpd, Vertex v);

struct RankingCheck {
  bool ranks_unique_per_bag = true;
  bool normalized = true;
  bool higher_rank_sparse = true;
  bool within_rank_budget = true;
  std::string first_violation;

  bool ok() const {
    return ranks_unique_per_bag && normalized && higher_rank_sparse && within_rank_budget;
  }
};

/// Checks the ranked-decomposition properties: per-bag rank uniqueness,
/// that every bag introduces a vertex, at most two co-bag vertices of each
/// higher rank per vertex, and at most 8 * max_bag_size ranks.
RankingCheck check_ranking(const RankedDecomposition& rpd);

}  // namespace fopw
