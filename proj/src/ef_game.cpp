// SPDX-License-Identifier: Apache-2.0

#include "fopw/ef_game.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "fopw/errors.hpp"

namespace fopw {
namespace {

using PebblePair = std::pair<Vertex, Vertex>;

class Game {
 public:
  Game(const Graph& g1, const Graph& g2, bool memoize) : g1_(g1), g2_(g2), memoize_(memoize) {
    for (int label = 1; label <= g1.terminal_count(); ++label) {
      pebbles_.emplace_back(g1.terminal(label), g2.terminal(label));
    }
  }

  bool play(int rounds) {
    if (!partial_isomorphism()) return false;
    return duplicator_wins(rounds);
  }

 private:
  bool partial_isomorphism() const {
    for (std::size_t i = 0; i < pebbles_.size(); ++i) {
      for (std::size_t j = i + 1; j < pebbles_.size(); ++j) {
        auto [a1, a2] = pebbles_[i];
        auto [b1, b2] = pebbles_[j];
        if ((a1 == b1) != (a2 == b2)) return false;
        if (g1_.adjacent(a1, b1) != g2_.adjacent(a2, b2)) return false;
      }
    }
    return true;
  }

  // Equality and adjacency of x with each pebble, on the given side.
  std::string atomic_type(Vertex x, bool first) const {
    const Graph& g = first ? g1_ : g2_;
    std::string type(pebbles_.size(), '\0');
    for (std::size_t i = 0; i < pebbles_.size(); ++i) {
      Vertex a = first ? pebbles_[i].first : pebbles_[i].second;
      type[i] = static_cast<char>((x == a ? 1 : 0) | (g.adjacent(x, a) ? 2 : 0));
    }
    return type;
  }

  std::set<std::string> realized_types(bool first) const {
    const Graph& g = first ? g1_ : g2_;
    std::set<std::string> out;
    for (Vertex x = 0; x < g.vertex_count(); ++x) out.insert(atomic_type(x, first));
    return out;
  }

  std::string state_key(int rounds) const {
    std::vector<PebblePair> added(pebbles_.begin() + g1_.terminal_count(), pebbles_.end());
    std::sort(added.begin(), added.end());
    std::string key = std::to_string(rounds);
    for (auto [a, b] : added) key += ";" + std::to_string(a) + "," + std::to_string(b);
    return key;
  }

  bool pebbled(Vertex x, bool first) const {
    return std::any_of(pebbles_.begin(), pebbles_.end(), [&](const PebblePair& p) {
      return (first ? p.first : p.second) == x;
    });
  }

  // Precondition: the current pebbles form a partial isomorphism.
  bool duplicator_wins(int rounds) {
    if (rounds == 0) return true;
    if (rounds == 1) return realized_types(true) == realized_types(false);

    std::string key;
    if (memoize_) {
      key = state_key(rounds);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    bool result = spoiler_fails(true, rounds) && spoiler_fails(false, rounds);
    if (memoize_) memo_.emplace(std::move(key), result);
    return result;
  }

  bool spoiler_fails(bool first, int rounds) {
    const Graph& spoiler = first ? g1_ : g2_;
    const Graph& duplicator = first ? g2_ : g1_;
    for (Vertex x = 0; x < spoiler.vertex_count(); ++x) {
      // Re-pebbling a pebbled vertex only wastes a round.
      if (pebbled(x, first)) continue;
      std::string wanted = atomic_type(x, first);
      bool answered = false;
      for (Vertex y = 0; y < duplicator.vertex_count() && !answered; ++y) {
        if (atomic_type(y, !first) != wanted) continue;
        pebbles_.push_back(first ? PebblePair{x, y} : PebblePair{y, x});
        answered = duplicator_wins(rounds - 1);
        pebbles_.pop_back();
      }
      if (!answered) return false;
    }
    return true;
  }

  const Graph& g1_;
  const Graph& g2_;
  bool memoize_;
  std::vector<PebblePair> pebbles_;
  std::unordered_map<std::string, bool> memo_;
};

}  // namespace

bool ef_equivalent(const Graph& g1, const Graph& g2, int q, const EfOptions& options) {
  if (g1.terminal_count() != g2.terminal_count()) {
    throw PreconditionError("graphs carry different numbers of labels");
  }
  if (q < 0) throw PreconditionError("negative round count");
  return Game(g1, g2, options.memoize).play(q);
}

}  // namespace fopw
