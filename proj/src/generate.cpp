// SPDX-License-Identifier: Apache-2.0

#include "fopw/generate.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "fopw/errors.hpp"

namespace fopw {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

int Rng::between(int lo, int hi) {
  if (hi < lo) throw PreconditionError("empty range");
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Family parse_family(std::string_view name) {
  if (name == "path") return Family::kPath;
  if (name == "cycle") return Family::kCycle;
  if (name == "ladder") return Family::kLadder;
  if (name == "caterpillar") return Family::kCaterpillar;
  if (name == "random") return Family::kRandom;
  throw PreconditionError("unknown family '" + std::string(name) + "'");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::kPath: return "path";
    case Family::kCycle: return "cycle";
    case Family::kLadder: return "ladder";
    case Family::kCaterpillar: return "caterpillar";
    case Family::kRandom: return "random";
  }
  return "unknown";
}

namespace {

Instance path(int n) {
  std::vector<Edge> edges;
  std::vector<std::vector<Vertex>> bags;
  for (Vertex v = 0; v + 1 < n; ++v) {
    edges.emplace_back(v, v + 1);
    bags.push_back({v, v + 1});
  }
  if (n == 1) bags.push_back({0});
  return {Graph(n, edges), make_decomposition(n, std::move(bags))};
}

Instance cycle(int n) {
  if (n < 3) throw PreconditionError("a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  std::vector<std::vector<Vertex>> bags;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  for (Vertex v = 1; v + 1 < n; ++v) bags.push_back({0, v, v + 1});
  return {Graph(n, edges), make_decomposition(n, std::move(bags))};
}

Instance ladder(int rungs) {
  const int n = 2 * rungs;
  std::vector<Edge> edges;
  std::vector<std::vector<Vertex>> bags;
  for (Vertex i = 0; i < rungs; ++i) {
    edges.emplace_back(i, rungs + i);
    if (i + 1 < rungs) {
      edges.emplace_back(i, i + 1);
      edges.emplace_back(rungs + i, rungs + i + 1);
      bags.push_back({i, rungs + i, i + 1});
      bags.push_back({rungs + i, i + 1, rungs + i + 1});
    }
  }
  if (rungs == 1) bags.push_back({0, 1});
  return {Graph(n, edges), make_decomposition(n, std::move(bags))};
}

Instance caterpillar(int spine, Rng& rng) {
  std::vector<Edge> edges;
  std::vector<std::vector<Vertex>> bags;
  Vertex next = spine;
  for (Vertex s = 0; s < spine; ++s) {
    const int leaves = rng.between(0, 2);
    for (int l = 0; l < leaves; ++l) {
      edges.emplace_back(s, next);
      bags.push_back({s, next});
      ++next;
    }
    if (s + 1 < spine) {
      edges.emplace_back(s, s + 1);
      bags.push_back({s, s + 1});
    } else if (leaves == 0) {
      bags.push_back({s});
    }
  }
  return {Graph(next, edges), make_decomposition(next, std::move(bags))};
}

Instance random_interval(int n, Rng& rng) {
  constexpr int kMaxBag = 4;
  constexpr int kTries = 64;
  int length = std::max(1, n);
  std::vector<int> load(static_cast<std::size_t>(length) + 1, 0);
  std::vector<std::pair<int, int>> spans(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    bool placed = false;
    for (int attempt = 0; attempt < kTries && !placed; ++attempt) {
      const int first = rng.between(1, length);
      const int last = std::min(length, first + rng.between(0, 2));
      bool fits = true;
      for (int j = first; j <= last; ++j) fits = fits && load[j] < kMaxBag;
      if (!fits) continue;
      for (int j = first; j <= last; ++j) ++load[j];
      spans[v] = {first, last};
      placed = true;
    }
    if (!placed) {
      ++length;
      load.push_back(1);
      spans[v] = {length, length};
    }
  }
  std::vector<std::vector<Vertex>> bags(static_cast<std::size_t>(length));
  for (Vertex v = 0; v < n; ++v) {
    for (int j = spans[v].first; j <= spans[v].second; ++j) bags[j - 1].push_back(v);
  }
  std::erase_if(bags, [](const auto& bag) { return bag.empty(); });
  std::set<Edge> edges;
  for (const auto& bag : bags) {
    for (std::size_t a = 0; a < bag.size(); ++a) {
      for (std::size_t b = a + 1; b < bag.size(); ++b) {
        Edge e{std::min(bag[a], bag[b]), std::max(bag[a], bag[b])};
        if (edges.count(e) == 0 && rng.coin()) edges.insert(e);
      }
    }
  }
  return {Graph(n, std::vector<Edge>(edges.begin(), edges.end())), make_decomposition(n, std::move(bags))};
}

}  // namespace

Instance generate(Family family, int size, std::uint64_t seed) {
  if (size < 1) throw PreconditionError("size must be at least 1");
  Rng rng(seed);
  switch (family) {
    case Family::kPath: return path(size);
    case Family::kCycle: return cycle(size);
    case Family::kLadder: return ladder(size);
    case Family::kCaterpillar: return caterpillar(size, rng);
    case Family::kRandom: return random_interval(size, rng);
  }
  throw PreconditionError("unknown family");
}

}  // namespace fopw
