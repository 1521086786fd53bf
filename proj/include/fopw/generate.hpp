// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "fopw/graph.hpp"
#include "fopw/path_decomposition.hpp"

namespace fopw {

enum class Family { kPath, kCycle, kLadder, kCaterpillar, kRandom };

/// Throws PreconditionError for an unknown name.
Family parse_family(std::string_view name);
std::string family_name(Family family);

struct Instance {
  Graph graph;
  PathDecomposition decomposition;
};

/// Deterministic instance per (family, size, seed).
///   path:        size vertices, bags {j, j+1}
///   cycle:       size >= 3 vertices, bags {0, j, j+1} around anchor 0
///   ladder:      size rungs, top i and bottom size+i, bags of three
///   caterpillar: spine of size vertices with 0..2 leaves each, spine windows
///   random:      size vertices on random intervals, bags of at most 4,
///                each co-bag pair adjacent with probability 1/2
/// Throws PreconditionError when size < 1 (size < 3 for cycles).
Instance generate(Family family, int size, std::uint64_t seed);

/// mt19937_64 stream with exact uniform draws by rejection, so sequences do
/// not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  int between(int lo, int hi);
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fopw
