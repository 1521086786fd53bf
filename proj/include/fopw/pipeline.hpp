// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fopw/formula.hpp"
#include "fopw/graph.hpp"
#include "fopw/path_decomposition.hpp"
#include "fopw/rewire.hpp"
#include "fopw/tower_int.hpp"

namespace fopw {

enum class Mode { kStrict, kLab };

/// Strict mode derives every threshold from delta(); lab mode takes a small
/// explicit table. In lab mode `delta[i - 1]` is Delta(i) and must cover
/// every rank in use; lhat is a lower bound for the rewiring radius, rhat
/// the window length and rstar a cap on the searched region.
struct Thresholds {
  Mode mode = Mode::kStrict;
  std::vector<std::uint64_t> delta;
  std::uint64_t lhat = 0;
  std::uint64_t rhat = 0;
  std::uint64_t rstar = 0;

  static Thresholds strict() { return {}; }
  static Thresholds lab(std::vector<std::uint64_t> delta, std::uint64_t lhat, std::uint64_t rhat,
                        std::uint64_t rstar) {
    return {Mode::kLab, std::move(delta), lhat, rhat, rstar};
  }

  /// Lab mode: nonempty, strictly increasing table. Strict mode: no
  /// overrides. Throws PreconditionError otherwise.
  void validate() const;
};

/// The quantities of one strict simplification step at rank i >= 2 with k
/// labels: lhat = 3p*Delta(i-1)*(2^q - 1),
/// rhat = (20 lhat + 1)(2^((20 lhat + 1)(p^2 + kp + 2p)) + 1) and
/// rstar = (5 rhat + 1)(q 2^((5 rhat + 1)(p^2 + kp + 2p)) + 1).
struct StrictQuantities {
  TowerInt lhat, rhat, rstar;
};
StrictQuantities strict_quantities(int p, int q, int k, int i);

/// Occurrence threshold 3p*Delta(i) for rank i.
TowerInt offender_threshold(const Thresholds& thresholds, int p, int q, int i);

struct Offender {
  Vertex vertex = -1;
  int rank = 0;
  int occurrences = 0;
};

/// Vertex of minimum rank (then minimum id) occurring in at least
/// 3p*Delta(rank) bags, where p is the number of ranks in use.
std::optional<Offender> find_offender(const Graph& g, const RankedDecomposition& rpd, int q,
                                      const Thresholds& thresholds);

struct Section {
  int a3 = 0;
  int a4 = 0;
  /// Vertices of B_a3 then B_a4, each bag by rank, without repeats.
  std::vector<Vertex> terminals;
  /// Bags in the offender's span whose higher-rank vertices differ from the
  /// previous bag.
  int interesting_bags = 0;
};

/// Longest maximal run of bags in the span of v sharing the same vertices of
/// rank at least i (earliest on ties). Throws LabStepError("section") when
/// it is shorter than min_length bags.
Section find_section(const RankedDecomposition& rpd, Vertex v, int i,
                     std::uint64_t min_length);

struct StepOptions {
  /// Also rebuild G1 from the collapsed graph and compare (slow).
  bool check_undo = false;
};

struct StepTrace {
  Offender offender;
  Section section;
  int t1 = 0;
  int t2 = 0;
  int region_first = 0;
  int region_last = 0;
  int occurrence_bound = 0;
  int lhat = 0;
  int rhat = 0;
  std::vector<int> windows;
  std::vector<std::pair<int, int>> cut_pairs;
  std::vector<SafetyCertificate> certificates;
  std::vector<std::vector<Vertex>> parts;
  int vertices_before = 0;
  int vertices_after = 0;
  /// Set when StepOptions::check_undo is on.
  std::optional<bool> undo_isomorphic;

  std::vector<std::string> lines() const;
};

struct StepResult {
  Graph graph;
  RankedDecomposition decomposition;
  StepTrace trace;
  /// G with the section labels, after rewiring every window.
  Graph rewired;
  /// G1: `rewired` without the first part.
  Graph reduced;
};

/// One application of the main simplification: label the section, find q+1
/// block-isomorphic windows, pick certified cuts in each, rewire, extract
/// the identical parts, and return the collapse of the first window's cuts
/// with the inherited ranking and no labels. Throws PreconditionError if g
/// carries labels or no offender exists, and LabStepError when a lab search
/// fails.
StepResult simplify_step(const Graph& g, const RankedDecomposition& rpd, int q,
                         const Thresholds& thresholds, const StepOptions& options = {});

/// max over v of (max bag size) * occurrences(v); throws Error if it is
/// below the maximum degree.
int certify_degree_bound(const Graph& g, const RankedDecomposition& rpd);

struct ModelCheckReport {
  bool answer = false;
  int rounds = 0;
  int degree_bound = 0;
  int final_vertex_count = 0;
  std::vector<StepTrace> steps;

  std::vector<std::string> trace_lines() const;
};

/// Normalizes and ranks pd, simplifies while an offender exists, certifies
/// the degree bound and evaluates phi by brute force on the final graph.
ModelCheckReport model_check_pw(const Graph& g, const PathDecomposition& pd, const Formula& phi,
                                const Thresholds& thresholds, const StepOptions& options = {});

}  // namespace fopw
