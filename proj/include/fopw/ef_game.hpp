// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fopw/graph.hpp"

namespace fopw {

struct EfOptions {
  /// Cache won/lost positions keyed by the pebble set and rounds left.
  bool memoize = true;
};

/// q-round Ehrenfeucht-Fraisse game between g1 and g2. The game starts with
/// pebbles on (terminal(i) of g1, terminal(i) of g2) for every label i.
/// Returns true iff Duplicator has a winning strategy, i.e. the graphs agree
/// on every sentence with at most q quantifiers over the labels.
/// Throws PreconditionError when the label counts differ.
bool ef_equivalent(const Graph& g1, const Graph& g2, int q, const EfOptions& options = {});

}  // namespace fopw
