// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "fopw/block_iso.hpp"
#include "fopw/ef_game.hpp"
#include "fopw/errors.hpp"
#include "fopw/pipeline.hpp"
#include "fopw/rewire.hpp"
#include "fopw/text_format.hpp"
#include "fopw/tower_int.hpp"
#include "test_util.hpp"

namespace fopw {
namespace {

using testing::cycle_graph;
using testing::disjoint_union;
using testing::path_graph;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Instance permuted(const Instance& inst, Rng& rng) {
  const int n = inst.graph.vertex_count();
  std::vector<Vertex> perm(n);
  for (Vertex v = 0; v < n; ++v) perm[v] = v;
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.between(0, i)]);
  std::vector<Edge> edges;
  for (auto [u, v] : inst.graph.edges()) edges.emplace_back(perm[u], perm[v]);
  std::vector<std::vector<Vertex>> bags;
  for (const auto& bag : inst.decomposition.bags) {
    bags.emplace_back();
    for (Vertex v : bag) bags.back().push_back(perm[v]);
  }
  return {Graph(n, edges), make_decomposition(n, std::move(bags))};
}

/// Hubs 0..hubs-1 adjacent to every leaf; bags {hubs..., leaf} in leaf order,
/// followed by an optional tail path with its own bags.
Instance hub_instance(int hubs, int leaves, int tail) {
  std::vector<Edge> edges;
  std::vector<std::vector<Vertex>> bags;
  for (Vertex l = hubs; l < hubs + leaves; ++l) {
    std::vector<Vertex> bag;
    for (Vertex h = 0; h < hubs; ++h) {
      edges.emplace_back(h, l);
      bag.push_back(h);
    }
    bag.push_back(l);
    bags.push_back(bag);
  }
  const Vertex base = hubs + leaves;
  for (Vertex t = base; t + 1 < base + tail; ++t) {
    edges.emplace_back(t, t + 1);
    bags.push_back({t, t + 1});
  }
  if (tail == 1) bags.push_back({base});
  const int n = base + tail;
  return {Graph(n, edges), make_decomposition(n, std::move(bags))};
}

/// Instances on which a q = 1 lab step exists, with the matching table.
struct RoundInstance {
  Instance instance;
  Thresholds thresholds;
};

std::vector<RoundInstance> round_instances(Rng& rng, int copies) {
  std::vector<RoundInstance> out;
  std::vector<std::pair<Instance, Thresholds>> shapes;
  for (int m = 36; m <= 39; ++m) shapes.emplace_back(hub_instance(1, m, 0), Thresholds::lab({1, 6}, 1, 13, 1000));
  for (int m = 36; m <= 38; ++m) shapes.emplace_back(hub_instance(2, m, 0), Thresholds::lab({1, 4, 5}, 1, 13, 1000));
  shapes.emplace_back(hub_instance(1, 36, 1), Thresholds::lab({1, 6}, 1, 13, 1000));
  shapes.emplace_back(hub_instance(2, 36, 2), Thresholds::lab({1, 4, 5}, 1, 13, 1000));
  shapes.emplace_back(hub_instance(1, 37, 2), Thresholds::lab({1, 6}, 1, 13, 1000));
  for (int c = 0; c < copies; ++c) {
    for (const auto& [inst, thresholds] : shapes) {
      out.push_back({c == 0 ? inst : permuted(inst, rng), thresholds});
    }
  }
  return out;
}

struct CorpusEntry {
  std::string name;
  Graph graph;
  RankedDecomposition rpd;
};

std::vector<CorpusEntry> corpus(bool labeled) {
  std::vector<CorpusEntry> out;
  Rng rng(2024);
  for (Family family : {Family::kPath, Family::kCycle, Family::kLadder, Family::kCaterpillar, Family::kRandom}) {
    for (int size : {3, 6, 9, 14, 20}) {
      Instance inst = generate(family, size, rng.next());
      if (inst.graph.vertex_count() > 40) continue;
      RankedDecomposition rpd = rank(remove_redundant_bags(inst.decomposition));
      std::string name = family_name(family) + std::to_string(size);
      out.push_back({name, inst.graph, rpd});
      if (labeled) out.push_back({name + "+t", inst.graph.with_terminals({0}), rpd});
    }
  }
  return out;
}

int max_non_terminal_occurrence(const Graph& g, const RankedDecomposition& rpd) {
  int bound = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_terminal(v)) bound = std::max(bound, rpd.span(v).size());
  }
  return bound;
}

Outcome locality_replay() {
  auto start = std::chrono::steady_clock::now();
  Graph long_path = path_graph(16);
  Graph split = disjoint_union(path_graph(8), cycle_graph(8));
  bool two = ef_equivalent(long_path, split, 2);
  bool three = ef_equivalent(long_path, split, 3);
  double elapsed = seconds_since(start);
  bool oracle_agrees = testing::types_equivalent(long_path, split, 2) == two &&
                       testing::types_equivalent(long_path, split, 3) == three;
  std::ostringstream detail;
  detail << "q=2 " << (two ? "equivalent" : "not equivalent") << ", q=3 "
         << (three ? "equivalent" : "not equivalent") << ", type oracle " << (oracle_agrees ? "agrees" : "disagrees")
         << ", " << elapsed << " s";
  return {two && oracle_agrees && elapsed < 10.0, detail.str()};
}

Outcome identical_parts_replay() {
  auto start = std::chrono::steady_clock::now();
  Rng rng(31337);
  int ok = 0, runs = 0;
  for (; runs < 50; ++runs) {
    const int q = rng.between(0, 2);
    const int copies = q + 1 + rng.between(0, 1);
    const int part_size = rng.between(1, 4);
    const int host = rng.between(2, 30 - copies * part_size >= 8 ? 8 : 30 - copies * part_size);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < host; ++u)
      for (Vertex v = u + 1; v < host; ++v)
        if (rng.between(0, 2) == 0) edges.emplace_back(u, v);
    std::vector<Edge> inner;
    for (int a = 0; a < part_size; ++a)
      for (int b = a + 1; b < part_size; ++b)
        if (rng.coin()) inner.emplace_back(a, b);
    std::vector<std::pair<int, Vertex>> attach;
    for (int a = 0; a < part_size; ++a)
      for (Vertex h = 0; h < host; ++h)
        if (rng.between(0, 3) == 0) attach.emplace_back(a, h);
    const int n = host + copies * part_size;
    for (int c = 0; c < copies; ++c) {
      const Vertex base = host + c * part_size;
      for (auto [a, b] : inner) edges.emplace_back(base + a, base + b);
      for (auto [a, h] : attach) edges.emplace_back(base + a, h);
    }
    std::vector<Vertex> labels;
    for (int t = rng.between(0, 2); t > 0; --t) labels.push_back(rng.between(0, host - 1));
    Graph g(n, edges, labels);

    std::vector<IdenticalPart> parts;
    bool witnesses_ok = true;
    for (int c = 0; c < copies; ++c) {
      IdenticalPart part;
      VertexMapping swap{std::vector<Vertex>(n)};
      for (Vertex v = 0; v < n; ++v) swap.image[v] = v;
      for (int a = 0; a < part_size; ++a) {
        part.vertices.push_back(host + c * part_size + a);
        swap.image[host + a] = host + c * part_size + a;
        swap.image[host + c * part_size + a] = host + a;
      }
      part.witness = swap;
      witnesses_ok = witnesses_ok && is_swap_witness(g, parts.empty() ? part.vertices : parts[0].vertices,
                                                     part.vertices, part.witness);
      parts.push_back(part);
    }
    Subgraph reduced = delete_one_part(g, parts, q);
    bool same = ef_equivalent(g, reduced.graph, q) && testing::types_equivalent(g, reduced.graph, q);
    if (witnesses_ok && same && reduced.graph.vertex_count() == n - part_size) ++ok;
  }
  double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << ok << "/" << runs << " deletions q-equivalent, " << elapsed << " s";
  return {ok == runs && elapsed < 60.0, detail.str()};
}

PathDecomposition random_wide_decomposition(Rng& rng) {
  const int length = rng.between(1, 60);
  const int cap = rng.between(1, 5);
  std::vector<int> load(length + 1, 0);
  std::vector<std::vector<Vertex>> bags(length);
  Vertex next = 0;
  for (int attempt = 0; attempt < 4 * length; ++attempt) {
    int first = rng.between(1, length);
    int last = std::min(length, first + rng.between(0, 8));
    bool fits = true;
    for (int j = first; j <= last; ++j) fits = fits && load[j] < cap;
    if (!fits) continue;
    for (int j = first; j <= last; ++j) {
      ++load[j];
      bags[j - 1].push_back(next);
    }
    ++next;
  }
  std::erase_if(bags, [](const auto& bag) { return bag.empty(); });
  if (bags.empty()) bags.push_back({next++});
  return make_decomposition(next, std::move(bags));
}

Outcome ranking_contract() {
  Rng rng(4242);
  int ok = 0;
  std::string first_failure;
  for (int trial = 0; trial < 200; ++trial) {
    PathDecomposition pd = remove_redundant_bags(random_wide_decomposition(rng));
    RankedDecomposition rpd = rank(pd);
    RankingCheck check = check_ranking(rpd);
    bool budget = rpd.rank_count() <= 8 * pd.max_bag_size();
    if (check.ok() && budget && pd.width() <= 4 && pd.length() <= 60) {
      ++ok;
    } else if (first_failure.empty()) {
      first_failure = check.first_violation;
    }
  }
  return {ok == 200, std::to_string(ok) + "/200 rankings within 8p ranks, unique per bag, sparse" +
                         (first_failure.empty() ? "" : " (" + first_failure + ")")};
}

Outcome ball_windows() {
  long long checks = 0, ok = 0;
  for (const auto& entry : corpus(true)) {
    const int bound = max_non_terminal_occurrence(entry.graph, entry.rpd);
    for (Vertex v = 0; v < entry.graph.vertex_count(); ++v) {
      if (entry.graph.is_terminal(v)) continue;
      for (int j = entry.rpd.span(v).first; j <= entry.rpd.span(v).last; ++j) {
        for (int r = 0; r <= 3; ++r) {
          ++checks;
          if (ball_within_window(entry.rpd, entry.graph, v, j, r, bound)) ++ok;
        }
      }
    }
  }
  return {checks > 0 && ok == checks, std::to_string(ok) + "/" + std::to_string(checks) + " (v, bag, r) windows"};
}

Outcome pigeonhole_search() {
  // Each decomposition repeats its ranked pattern every `period` bags, so
  // q * period + 1 stride points hold q + 1 of one class.
  struct Uniform {
    std::string name;
    Graph graph;
    RankedDecomposition rpd;
    int period;
  };
  std::vector<Uniform> uniform;
  for (int n : {60, 90}) {
    uniform.push_back({"path" + std::to_string(n), path_graph(n), testing::parity_ranked_path(n), 2});
  }
  for (int rungs : {40, 60}) {
    Instance inst = generate(Family::kLadder, rungs, 0);
    std::vector<int> ranks(2 * rungs);
    for (Vertex i = 0; i < rungs; ++i) {
      ranks[i] = 1 + i % 2;
      ranks[rungs + i] = 3 + i % 2;
    }
    uniform.push_back({"ladder" + std::to_string(rungs), inst.graph, RankedDecomposition(inst.decomposition, ranks), 4});
  }
  for (int n : {60, 90}) {
    Instance inst = generate(Family::kCycle, n, 0);
    uniform.push_back({"cycle" + std::to_string(n), inst.graph.with_terminals({0}), rank(inst.decomposition), 2});
  }
  int runs = 0, ok = 0;
  std::string failure;
  for (const auto& u : uniform) {
    for (int q = 0; q <= 2; ++q) {
      for (int r = 1; r <= 4; ++r) {
        const int rstar = (q * u.period + 1) * (r + 1) + r;
        const int first = 2, last = first + rstar - 1;
        if (last > u.rpd.length()) continue;
        ++runs;
        try {
          std::vector<int> starts = find_repeats(u.rpd, u.graph, first, last, r, q);
          bool good = static_cast<int>(starts.size()) == q + 1;
          for (std::size_t a = 0; a < starts.size() && good; ++a) {
            if (a > 0) good = starts[a] - starts[a - 1] > r;
            for (std::size_t b = a + 1; b < starts.size() && good; ++b) {
              good = block_isomorphic(u.rpd, u.graph, starts[a], starts[a] + r, starts[b], starts[b] + r);
            }
          }
          if (good) ++ok;
          else if (failure.empty()) failure = u.name;
        } catch (const Error& e) {
          if (failure.empty()) failure = u.name + ": " + e.what();
        }
      }
    }
  }
  return {runs > 0 && ok == runs, std::to_string(ok) + "/" + std::to_string(runs) + " searches" +
                                      (failure.empty() ? "" : " (" + failure + ")")};
}

Outcome rewire_safety() {
  auto start = std::chrono::steady_clock::now();
  int certified = 0, certified_ok = 0, refuted = 0;
  int by_q[3] = {0, 0, 0};
  std::vector<CorpusEntry> entries;
  Rng rng(77);
  for (int n : {30, 34, 38, 40}) {
    entries.push_back({"path" + std::to_string(n), path_graph(n), testing::parity_ranked_path(n)});
    entries.push_back({"path" + std::to_string(n) + "+t", path_graph(n, {0}), testing::parity_ranked_path(n)});
  }
  for (int n : {12, 20, 30}) {
    Instance inst = generate(Family::kCycle, n, 0);
    entries.push_back({"cycle" + std::to_string(n), inst.graph.with_terminals({0}), rank(inst.decomposition)});
  }
  for (int rungs : {8, 14, 20}) {
    Instance inst = generate(Family::kLadder, rungs, 0);
    entries.push_back({"ladder" + std::to_string(rungs), inst.graph, rank(inst.decomposition)});
  }
  for (int spine : {8, 14, 20}) {
    Instance inst = generate(Family::kCaterpillar, spine, rng.next());
    if (inst.graph.vertex_count() > 40) continue;
    entries.push_back({"caterpillar" + std::to_string(spine), inst.graph,
                       rank(remove_redundant_bags(inst.decomposition))});
  }
  for (const auto& entry : entries) {
    const int bound = max_non_terminal_occurrence(entry.graph, entry.rpd);
    const int length = entry.rpd.length();
    for (int q = 0; q <= 2; ++q) {
      int taken = 0;
      for (int s1 = 1; s1 < length && taken < 12; ++s1) {
        for (int s2 = s1 + 1; s2 <= length && taken < 12; ++s2) {
          SafetyVerdict verdict = check_rewire_safety(entry.graph, entry.rpd, s1, s2, q, bound);
          if (!verdict.certified()) continue;
          ++taken;
          ++certified;
          ++by_q[q];
          Graph rewired = rewire(entry.graph, entry.rpd, s1, s2);
          if (ef_equivalent(entry.graph, rewired, q)) ++certified_ok;
        }
      }
    }
  }
  // Uncertified rewirings at q = 2 near a labeled vertex.
  for (int n = 10; n <= 20 && refuted < 15; ++n) {
    RankedDecomposition rpd = testing::parity_ranked_path(n);
    for (Vertex t = 1; t < n - 1 && refuted < 15; ++t) {
      Graph g = path_graph(n, {t});
      const int bound = max_non_terminal_occurrence(g, rpd);
      for (int s1 = 1; s1 + 2 <= rpd.length() && refuted < 15; ++s1) {
        const int s2 = s1 + 3;
        if (s2 > rpd.length() || check_rewire_safety(g, rpd, s1, s2, 2, bound).certified()) continue;
        if (!ef_equivalent(g, rewire(g, rpd, s1, s2), 2)) ++refuted;
      }
    }
  }
  double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << certified_ok << "/" << certified << " certified rewirings equivalent (q=0: " << by_q[0]
         << ", q=1: " << by_q[1] << ", q=2: " << by_q[2] << "), " << refuted
         << " uncertified rewirings inequivalent, " << elapsed << " s";
  return {certified >= 100 && certified_ok == certified && refuted >= 10, detail.str()};
}

Outcome p12_golden() {
  const std::string expected =
      "p fo 12 11 0\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 9\ne 5 6\ne 5 8\ne 6 7\ne 7 8\ne 9 10\ne 10 11\n";
  Graph rewired = rewire(path_graph(12), testing::parity_ranked_path(12), 4, 8);
  std::string text = write_graph(rewired);
  CollapseResult collapsed = collapse_interval(path_graph(12), testing::parity_ranked_path(12), 4, 8);
  bool collapse_ok = collapsed.graph == path_graph(8);
  return {text == expected && collapse_ok,
          std::string("rewire(4,8) ") + (text == expected ? "matches" : "differs") + ", collapse(4,8) " +
              (collapse_ok ? "is P8" : "is not P8")};
}

Outcome differential() {
  auto start = std::chrono::steady_clock::now();
  Rng rng(8080);
  int runs = 0, agree = 0, with_rounds = 0;
  std::string failure;
  auto record = [&](const Graph& g, const PathDecomposition& pd, const Formula& phi, const Thresholds& t) {
    ++runs;
    try {
      ModelCheckReport report = model_check_pw(g, pd, phi, t);
      if (report.answer == model_check(g, phi)) ++agree;
      else if (failure.empty()) failure = "disagreement on " + to_string(phi);
      if (report.rounds > 0) ++with_rounds;
    } catch (const Error& e) {
      if (failure.empty()) failure = e.what();
    }
  };
  const Thresholds calm = Thresholds::lab({64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384, 32768, 65536,
                                           131072, 262144, 524288, 1048576, 2097152},
                                          1, 13, 1000);
  for (Family family : {Family::kPath, Family::kCycle, Family::kLadder, Family::kCaterpillar, Family::kRandom}) {
    for (int trial = 0; trial < 25; ++trial) {
      int size = rng.between(3, family == Family::kLadder ? 20 : 40);
      Instance inst = generate(family, size, rng.next());
      if (inst.graph.vertex_count() > 40) continue;
      int k = rng.between(0, 1);
      Graph g = k ? inst.graph.with_terminals({rng.between(0, inst.graph.vertex_count() - 1)}) : inst.graph;
      testing::FormulaSampler sampler(rng, k);
      for (int f = 0; f < 2; ++f) {
        record(g, inst.decomposition, parse_formula(sampler.sentence(rng.between(1, 2)), k), calm);
      }
    }
  }
  for (const auto& entry : round_instances(rng, 3)) {
    testing::FormulaSampler sampler(rng, 0);
    for (int f = 0; f < 3; ++f) {
      record(entry.instance.graph, entry.instance.decomposition, parse_formula(sampler.sentence(1), 0),
             entry.thresholds);
    }
  }
  double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << agree << "/" << runs << " agree, " << with_rounds << " with a simplification round, " << elapsed << " s"
         << (failure.empty() ? "" : " (" + failure + ")");
  return {runs >= 300 && agree == runs && with_rounds >= 20 && elapsed < 600.0, detail.str()};
}

Outcome strict_arithmetic() {
  auto start = std::chrono::steady_clock::now();
  int checks = 0, ok = 0;
  std::string failure;
  try {
    for (int p = 1; p <= 4; ++p) {
      for (int q = 1; q <= 3; ++q) {
        const TowerInt three_p(static_cast<std::uint64_t>(3 * p));
        auto note = [&](bool holds, const std::string& what) {
          ++checks;
          if (holds) ++ok;
          else if (failure.empty()) failure = what + " p=" + std::to_string(p) + " q=" + std::to_string(q);
        };
        note(delta(p, q, 1) == three_p, "base");
        for (int i = 2; i <= 5; ++i) {
          const TowerInt prev = delta(p, q, i - 1);
          const TowerInt cur = delta(p, q, i);
          const TowerInt wide = TowerInt::pow2(TowerInt(static_cast<std::uint64_t>(20 * q * p * p)));
          const TowerInt narrow = TowerInt::pow2(TowerInt(static_cast<std::uint64_t>(10 * q * p * p)));
          const TowerInt double_exp = TowerInt::pow2(TowerInt::pow2(prev * narrow));
          note(cur == TowerInt::pow2(TowerInt::pow2(prev * wide)), "recurrence i=" + std::to_string(i));
          note(prev < cur, "monotone i=" + std::to_string(i));
          note(cur >= double_exp + three_p * prev, "chain i=" + std::to_string(i));
          StrictQuantities sq = strict_quantities(p, q, 2 * p, i);
          note(sq.lhat <= prev * TowerInt::pow2(TowerInt(static_cast<std::uint64_t>(p + q + 2))),
               "lhat i=" + std::to_string(i));
          note(sq.rstar <= double_exp, "rstar i=" + std::to_string(i));
        }
      }
    }
  } catch (const std::exception& e) {
    failure = std::string("undecided comparison: ") + e.what();
  }
  double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << ok << "/" << checks << " symbolic checks, " << elapsed << " s"
         << (failure.empty() ? "" : " (" + failure + ")");
  return {checks > 0 && ok == checks && elapsed < 1.0, detail.str()};
}

Outcome undo_equivalence() {
  Rng rng(1010);
  int runs = 0, ok = 0;
  std::string failure;
  for (const auto& entry : round_instances(rng, 2)) {
    if (runs == 20) break;
    ++runs;
    try {
      RankedDecomposition rpd = rank(remove_redundant_bags(entry.instance.decomposition));
      StepResult step = simplify_step(entry.instance.graph, rpd, 1, entry.thresholds, StepOptions{true});
      if (step.trace.undo_isomorphic.value_or(false)) ++ok;
    } catch (const Error& e) {
      if (failure.empty()) failure = e.what();
    }
  }
  return {runs == 20 && ok == runs, std::to_string(ok) + "/" + std::to_string(runs) + " collapses isomorphic" +
                                        (failure.empty() ? "" : " (" + failure + ")")};
}

}  // namespace
}  // namespace fopw

int main() {
  using fopw::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"locality replay", fopw::locality_replay},
      {"identical parts", fopw::identical_parts_replay},
      {"ranking contract", fopw::ranking_contract},
      {"ball windows", fopw::ball_windows},
      {"pigeonhole search", fopw::pigeonhole_search},
      {"rewire safety", fopw::rewire_safety},
      {"P12 golden", fopw::p12_golden},
      {"differential", fopw::differential},
      {"strict arithmetic", fopw::strict_arithmetic},
      {"undo equivalence", fopw::undo_equivalence},
  };
  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    Outcome outcome;
    try {
      outcome = criteria[c].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failed += outcome.pass ? 0 : 1;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << c + 1 << " " << criteria[c].first << ": "
              << outcome.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
