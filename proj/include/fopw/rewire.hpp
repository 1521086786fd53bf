// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fopw/graph.hpp"
#include "fopw/path_decomposition.hpp"

namespace fopw {

/// Vertex sets around the cuts (s1, s2). All sets exclude terminals and are
/// sorted. x, y, z are the non-separator vertices before s1, strictly
/// between the cuts, and after s2. The radius-dependent sets are
///   x1: in a bag of [s1 - radius, s1 - 1] but not in B_s1
///   y1: in a bag of [s1 + 1, s1 + radius] but not in B_s1 or B_s2
///   y2: in a bag of [s2 - radius, s2 - 1] but not in B_s1 or B_s2
///   z1: in a bag of [s2 + 1, s2 + radius] but not in B_s2
struct RewirePlan {
  int s1 = 0;
  int s2 = 0;
  int radius = 0;
  std::vector<Vertex> separator1, separator2;
  std::vector<Vertex> x, y, z;
  std::vector<Vertex> x1, y1, y2, z1;
  /// Canonical map of the block around s1 onto the block around s2
  /// (indexed by vertex, -1 outside the domain), when the blocks match.
  std::optional<std::vector<Vertex>> block_map;
};

RewirePlan plan_rewire(const Graph& g, const RankedDecomposition& rpd, int s1, int s2,
                       int radius = 0);

/// Edge surgery at the cuts s1 < s2. Clause (i): an edge from a
/// non-terminal v in B_s1 to a non-terminal u that occurs only strictly
/// between the cuts is replaced by u-v', v' the vertex of B_s2 with the rank
/// of v (or just deleted when there is none). Clause (ii): an edge from a
/// non-terminal v in B_s2 to a non-terminal u occurring only after s2 is
/// replaced by u-v'', v'' the rank-mate of v in B_s1. Clause (i) runs first;
/// within a clause deletions precede additions. The decomposition is not
/// updated.
Graph rewire(const Graph& g, const RankedDecomposition& rpd, int s1, int s2);

struct SafetyCertificate {
  int q = 0;
  int bound = 0;
  RewirePlan plan;  // radius = bound * (2^q - 1), block_map set
};

struct SafetyVerdict {
  std::optional<SafetyCertificate> certificate;
  std::string violation;

  bool certified() const { return certificate.has_value(); }
};

/// With L = bound * (2^q - 1) checks s1 > 4L, s2 < l - 4L, s2 - s1 > 6L and
/// that the blocks [s1 - L, s1 + L] and [s2 - L, s2 + L] are block
/// isomorphic. Throws OccurrenceBoundError when a non-terminal occurs in
/// more than `bound` bags.
SafetyVerdict check_rewire_safety(const Graph& g, const RankedDecomposition& rpd, int s1, int s2,
                                  int q, int bound);

/// A vertex set together with an automorphism of the graph that swaps it
/// with the first part of its family and fixes every other vertex. The
/// first part's witness is the identity.
struct IdenticalPart {
  std::vector<Vertex> vertices;
  VertexMapping witness;
};

/// For every cut pair (c1, c2), the part (Y + B_c2) minus terminals, with Y
/// the vertices occurring only strictly between the cuts. All pairs must
/// have the same gap, and `g_rewired` must already be rewired at each pair.
/// Witnesses come from the canonical block maps of the first pair onto the
/// others and are re-validated; throws WitnessError when one fails.
std::vector<IdenticalPart> extract_identical_parts(const Graph& g_rewired,
                                                   const RankedDecomposition& rpd,
                                                   const std::vector<std::pair<int, int>>& cut_pairs);

/// Whether `witness` is an automorphism of g fixing the labels that swaps
/// `part` with `reference` and fixes every other vertex.
bool is_swap_witness(const Graph& g, const std::vector<Vertex>& reference,
                     const std::vector<Vertex>& part, const VertexMapping& witness);

/// Searches for a swap witness between two disjoint non-terminal sets.
std::optional<VertexMapping> find_swap_witness(const Graph& g, const std::vector<Vertex>& reference,
                                               const std::vector<Vertex>& part);

/// G minus the first part. Requires at least q + 1 pairwise disjoint parts
/// with valid witnesses; throws PreconditionError otherwise.
Subgraph delete_one_part(const Graph& g, const std::vector<IdenticalPart>& parts, int q);

struct CollapseResult {
  Graph graph;
  RankedDecomposition decomposition;
  /// remap[v] is the new id of old vertex v, or -1 if v was deleted.
  std::vector<Vertex> remap;
  /// Old bag indices after q2 move down by this amount (before redundancy
  /// removal).
  int shift = 0;
};

/// Identifies each vertex of B_q2 with the vertex of B_q1 of the same rank,
/// deletes the vertices that occur only strictly between q1 and q2, and
/// splices the bags 1..q1 and q2+1..l (renamed). The result is redundancy
/// removed, keeps the inherited ranking and is validated. Throws
/// PreconditionError when a rank of B_q2 is missing from B_q1 or a terminal
/// would be deleted.
CollapseResult collapse_interval(const Graph& g, const RankedDecomposition& rpd, int q1, int q2);

}  // namespace fopw
