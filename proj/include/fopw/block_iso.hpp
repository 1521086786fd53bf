// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fopw/graph.hpp"
#include "fopw/path_decomposition.hpp"

namespace fopw {

/// Packed bit string describing a block purely in (bag offset, rank)
/// coordinates. Per offset it records: which ranks are present, which ranks
/// are introduced there (all of them at offset 0), the adjacency between
/// every pair of present ranks, and the adjacency of every present rank to
/// each terminal label in order.
struct BlockSignature {
  std::vector<std::uint64_t> words;
  std::size_t bit_length = 0;

  bool operator==(const BlockSignature&) const = default;
  bool operator<(const BlockSignature& o) const {
    return std::pair(bit_length, words) < std::pair(o.bit_length, o.words);
  }
};

/// Upper bound (length + 1) * (p^2 + 2p + kp) on the signature size.
std::size_t signature_bit_bound(int length, int ranks, int labels);

/// Signature of the block B_s..B_{s+length}. The decomposition must cover g,
/// and all bags of the block must meet the terminal set in the same
/// vertices; otherwise PreconditionError.
BlockSignature block_signature(const RankedDecomposition& rpd, const Graph& g, int s, int length);

/// Canonical map of the block at s1 onto the block at s2, both of
/// `length + 1` bags. Each vertex of the first block goes to the vertex of
/// the same rank in the bag at the same offset as its first bag in the
/// block; terminals outside the first block are fixed. The result is
/// indexed by vertex with -1 outside the domain, or nullopt when some
/// target rank is missing.
std::optional<std::vector<Vertex>> canonical_block_map(const RankedDecomposition& rpd,
                                                       const Graph& g, int s1, int s2,
                                                       int length);

/// Block isomorphism of B_{s1}..B_{t1} and B_{s2}..B_{t2}: equal rank sets
/// per offset, equal introduced ranks per offset after the first, and the
/// canonical map is a terminal-respecting isomorphism between
/// G[T + first block] and G[T + second block].
/// Throws PreconditionError for blocks of different lengths.
bool block_isomorphic(const RankedDecomposition& rpd, const Graph& g, int s1, int t1, int s2,
                      int t2);

/// Scans the starts s, s + (length + 1), ... with blocks inside [first, last]
/// and returns the smallest s2 with the earliest s1 < s2 of equal signature.
/// The pair is re-verified with block_isomorphic.
/// Throws SearchError("pigeonhole window too small") when no pair exists.
std::pair<int, int> find_pair(const RankedDecomposition& rpd, const Graph& g, int first,
                              int last, int length, int s);

/// Like find_pair with blocks of `length + 1` bags starting at first,
/// first + (length + 1), ...: returns the earliest count + 1 starts of one
/// signature class. With count == 0 returns {first}.
std::vector<int> find_repeats(const RankedDecomposition& rpd, const Graph& g, int first,
                              int last, int length, int count);

/// Whether every non-terminal of ball(g, v, r) occurs in a bag with index in
/// [j - r*bound, j + r*bound]. Throws OccurrenceBoundError if a non-terminal
/// occurs in more than `bound` bags and PreconditionError if v is a terminal
/// or not in B_j.
bool ball_within_window(const RankedDecomposition& rpd, const Graph& g, Vertex v, int j, int r,
                        int bound);

/// Throws OccurrenceBoundError unless every non-terminal occurs in at most
/// `bound` bags.
void require_occurrence_bound(const RankedDecomposition& rpd, const Graph& g, int bound);

}  // namespace fopw
