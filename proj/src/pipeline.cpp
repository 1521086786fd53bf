// SPDX-License-Identifier: Apache-2.0

#include "fopw/pipeline.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "fopw/block_iso.hpp"
#include "fopw/errors.hpp"

namespace fopw {
namespace {

// Step geometry in plain integers. Strict mode follows the original
// constants (pair blocks of 20L cut at their midpoint, repeats of 5R read in
// their middle fifth); lab mode packs the same searches tighter.
struct Geometry {
  std::uint64_t section_min = 0;
  std::uint64_t margin = 0;
  std::uint64_t lhat = 0;
  std::uint64_t rhat = 0;
  std::uint64_t rstar = 0;
  std::uint64_t pair_block = 0;
  std::uint64_t cut_shift = 0;
  std::uint64_t repeat_length = 0;
  std::uint64_t window_offset = 0;
};

constexpr std::uint64_t kIndexLimit = static_cast<std::uint64_t>(std::numeric_limits<int>::max() / 64);

std::uint64_t machine_value(const TowerInt& x, const char* what) {
  auto v = x.to_u64();
  if (!v || *v > kIndexLimit) {
    throw Error(std::string("strict-mode ") + what + " exceeds machine integers: " + x.to_string());
  }
  return *v;
}

int max_occurrence(const RankedDecomposition& rpd, const auto& keep) {
  int best = 0;
  for (Vertex v = 0; v < rpd.vertex_count(); ++v) {
    if (keep(v)) best = std::max(best, rpd.span(v).size());
  }
  return best;
}

std::string join(const std::vector<int>& xs) {
  std::string out;
  for (int x : xs) out += (out.empty() ? "" : " ") + std::to_string(x);
  return out;
}

}  // namespace

void Thresholds::validate() const {
  if (mode == Mode::kStrict) {
    if (!delta.empty() || lhat || rhat || rstar) {
      throw PreconditionError("strict mode takes no threshold overrides");
    }
    return;
  }
  if (delta.empty()) throw PreconditionError("lab mode needs a Delta table");
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (delta[i] == 0) throw PreconditionError("lab Delta values must be positive");
    if (i > 0 && delta[i] <= delta[i - 1]) {
      throw PreconditionError("lab Delta table must be strictly increasing");
    }
  }
  if (rhat == 0 || rstar == 0) throw PreconditionError("lab mode needs rhat and rstar");
}

StrictQuantities strict_quantities(int p, int q, int k, int i) {
  if (i < 2) throw PreconditionError("strict quantities need i >= 2");
  const TowerInt one(1);
  const TowerInt c(static_cast<std::uint64_t>(p * p + k * p + 2 * p));
  StrictQuantities out;
  out.lhat = TowerInt(static_cast<std::uint64_t>(3 * p)) * delta(p, q, i - 1) *
             TowerInt((std::uint64_t{1} << q) - 1);
  TowerInt inner = TowerInt(20) * out.lhat + one;
  out.rhat = inner * (TowerInt::pow2(inner * c) + one);
  TowerInt outer = TowerInt(5) * out.rhat + one;
  out.rstar = outer * (TowerInt(static_cast<std::uint64_t>(q)) * TowerInt::pow2(outer * c) + one);
  return out;
}

TowerInt offender_threshold(const Thresholds& thresholds, int p, int q, int i) {
  const TowerInt three_p(static_cast<std::uint64_t>(3 * p));
  if (thresholds.mode == Mode::kStrict) return three_p * delta(p, std::max(q, 1), i);
  if (i < 1 || static_cast<std::size_t>(i) > thresholds.delta.size()) {
    throw PreconditionError("lab Delta table must cover all " + std::to_string(p) + " ranks");
  }
  return three_p * TowerInt(thresholds.delta[i - 1]);
}

std::optional<Offender> find_offender(const Graph& g, const RankedDecomposition& rpd, int q,
                                      const Thresholds& thresholds) {
  if (g.vertex_count() != rpd.vertex_count()) {
    throw PreconditionError("decomposition and graph disagree on the vertex count");
  }
  const int p = rpd.rank_count();
  std::vector<std::vector<Vertex>> by_rank(p + 1);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (rpd.rank_of(v) > 0) by_rank[rpd.rank_of(v)].push_back(v);
  }
  for (int i = 1; i <= p; ++i) {
    if (by_rank[i].empty()) continue;
    TowerInt threshold = offender_threshold(thresholds, p, q, i);
    for (Vertex v : by_rank[i]) {
      int occ = rpd.span(v).size();
      if (TowerInt(static_cast<std::uint64_t>(occ)) >= threshold) return Offender{v, i, occ};
    }
  }
  return std::nullopt;
}

Section find_section(const RankedDecomposition& rpd, Vertex v, int i,
                     std::uint64_t min_length) {
  const Span span = rpd.span(v);
  if (!span.present()) throw PreconditionError("offender is in no bag");
  auto higher = [&](int j) {
    std::vector<Vertex> out;
    for (Vertex u : rpd.bag(j)) {
      if (rpd.rank_of(u) > i) out.push_back(u);
    }
    return out;
  };

  Section best;
  int run_start = span.first;
  auto close_run = [&](int run_end) {
    if (run_end - run_start > best.a4 - best.a3 || best.a3 == 0) {
      best.a3 = run_start;
      best.a4 = run_end;
    }
  };
  auto previous = higher(span.first);
  for (int j = span.first + 1; j <= span.last; ++j) {
    auto current = higher(j);
    if (current != previous) {
      ++best.interesting_bags;
      close_run(j - 1);
      run_start = j;
      previous = std::move(current);
    }
  }
  int interesting = best.interesting_bags;
  close_run(span.last);
  best.interesting_bags = interesting;

  const auto length = static_cast<std::uint64_t>(best.a4 - best.a3 + 1);
  if (length < min_length) {
    throw LabStepError("section", "longest section has " + std::to_string(length) +
                                      " bags, need " + std::to_string(min_length));
  }
  for (int j : {best.a3, best.a4}) {
    std::vector<Vertex> bag = rpd.bag(j);
    std::sort(bag.begin(), bag.end(),
              [&](Vertex a, Vertex b) { return rpd.rank_of(a) < rpd.rank_of(b); });
    for (Vertex u : bag) {
      if (std::find(best.terminals.begin(), best.terminals.end(), u) == best.terminals.end()) {
        best.terminals.push_back(u);
      }
    }
  }
  return best;
}

std::vector<std::string> StepTrace::lines() const {
  std::vector<std::string> out;
  out.push_back("offender vertex=" + std::to_string(offender.vertex) + " rank=" +
                std::to_string(offender.rank) + " occurrences=" + std::to_string(offender.occurrences));
  std::vector<int> labels(section.terminals.begin(), section.terminals.end());
  out.push_back("section a3=" + std::to_string(section.a3) + " a4=" + std::to_string(section.a4) +
                " interesting=" + std::to_string(section.interesting_bags) + " labels=" + join(labels));
  out.push_back("bounds t1=" + std::to_string(t1) + " t2=" + std::to_string(t2) +
                " occurrence=" + std::to_string(occurrence_bound) + " lhat=" + std::to_string(lhat) +
                " rhat=" + std::to_string(rhat));
  out.push_back("region " + std::to_string(region_first) + " " + std::to_string(region_last));
  out.push_back("windows " + join(windows));
  for (std::size_t k = 0; k < cut_pairs.size(); ++k) {
    std::string line = "cut " + std::to_string(cut_pairs[k].first) + " " + std::to_string(cut_pairs[k].second);
    if (k < certificates.size()) {
      line += " certified L=" + std::to_string(certificates[k].plan.radius) +
              " bound=" + std::to_string(certificates[k].bound);
    }
    out.push_back(line);
  }
  for (std::size_t k = 0; k < parts.size(); ++k) {
    out.push_back("part " + std::to_string(k + 1) + " size=" + std::to_string(parts[k].size()) +
                  " vertices=" + join(std::vector<int>(parts[k].begin(), parts[k].end())));
  }
  out.push_back("vertices " + std::to_string(vertices_before) + " -> " + std::to_string(vertices_after));
  if (undo_isomorphic) out.push_back(std::string("undo ") + (*undo_isomorphic ? "isomorphic" : "differs"));
  return out;
}

StepResult simplify_step(const Graph& g, const RankedDecomposition& rpd, int q,
                         const Thresholds& thresholds, const StepOptions& options) {
  thresholds.validate();
  if (g.terminal_count() > 0) {
    throw PreconditionError("simplification needs an unlabeled graph");
  }
  auto offender = find_offender(g, rpd, q, thresholds);
  if (!offender) throw PreconditionError("no vertex exceeds its occurrence threshold");
  const bool lab = thresholds.mode == Mode::kLab;
  const int p = rpd.rank_count();
  const int i = offender->rank;
  const std::uint64_t rounds_factor = (std::uint64_t{1} << q) - 1;

  Geometry geo;
  if (lab) {
    geo.section_min = thresholds.delta[i - 1];
  } else {
    if (i < 2) throw Error("strict-mode offender at rank 1 has no lower threshold");
    const int qq = std::max(q, 1);
    geo.section_min = machine_value(delta(p, qq, i), "Delta(i)");
    geo.margin = machine_value(TowerInt(static_cast<std::uint64_t>(3 * p)) * delta(p, qq, i - 1), "margin");
  }

  StepResult result;
  StepTrace& trace = result.trace;
  trace.offender = *offender;
  trace.vertices_before = g.vertex_count();
  trace.section = find_section(rpd, offender->vertex, i, geo.section_min);
  const Section& section = trace.section;
  const Graph labeled = g.with_terminals(section.terminals);

  if (lab) {
    geo.margin = static_cast<std::uint64_t>(
        max_occurrence(rpd, [&](Vertex v) { return rpd.rank_of(v) > 0 && rpd.rank_of(v) < i; }));
  }
  const int bound = max_occurrence(rpd, [&](Vertex v) { return !labeled.is_terminal(v); });
  trace.occurrence_bound = bound;
  if (lab) {
    geo.lhat = std::max<std::uint64_t>(thresholds.lhat, static_cast<std::uint64_t>(bound) * rounds_factor);
    geo.rhat = thresholds.rhat;
    geo.rstar = thresholds.rstar;
    geo.pair_block = 6 * geo.lhat;
    geo.cut_shift = geo.lhat;
    geo.repeat_length = geo.rhat;
    geo.window_offset = 0;
  } else {
    StrictQuantities sq = strict_quantities(p, std::max(q, 1), static_cast<int>(section.terminals.size()), i);
    geo.lhat = machine_value(sq.lhat, "lhat");
    geo.rhat = machine_value(sq.rhat, "rhat");
    geo.rstar = machine_value(sq.rstar, "rstar");
    geo.pair_block = 20 * geo.lhat;
    geo.cut_shift = 10 * geo.lhat;
    geo.repeat_length = 5 * geo.rhat;
    geo.window_offset = 2 * geo.rhat;
  }
  if (geo.lhat > kIndexLimit || geo.rhat > kIndexLimit || geo.margin > kIndexLimit) {
    throw LabStepError("geometry", "thresholds exceed the decomposition length");
  }
  const long long length = rpd.length();
  const long long lhat = static_cast<long long>(geo.lhat);
  trace.t1 = section.a3 + static_cast<int>(geo.margin);
  trace.t2 = section.a4 - static_cast<int>(geo.margin);
  trace.lhat = static_cast<int>(geo.lhat);
  trace.rhat = static_cast<int>(geo.rhat);

  long long first = std::max<long long>(trace.t1, 3 * lhat + 1);
  long long last = std::min<long long>(trace.t2, length - 3 * lhat - 1);
  if (last - first + 1 > static_cast<long long>(geo.rstar)) last = first + static_cast<long long>(geo.rstar) - 1;
  trace.region_first = static_cast<int>(first);
  trace.region_last = static_cast<int>(last);
  if (first > last) {
    throw LabStepError("region", "no bags left between the margins (t1=" + std::to_string(trace.t1) +
                                     ", t2=" + std::to_string(trace.t2) + ")");
  }

  std::vector<int> starts;
  try {
    starts = find_repeats(rpd, labeled, trace.region_first, trace.region_last,
                          static_cast<int>(geo.repeat_length), q);
  } catch (const SearchError& e) {
    throw LabStepError("repeats", e.what());
  }
  for (int s : starts) trace.windows.push_back(s + static_cast<int>(geo.window_offset));

  const int window_length = static_cast<int>(geo.rhat);
  const int w0 = trace.windows.front();
  std::optional<std::pair<int, int>> offsets;
  std::set<std::pair<int, int>> tried;
  for (int start = w0; start + static_cast<int>(geo.pair_block) <= w0 + window_length && !offsets; ++start) {
    std::pair<int, int> found;
    try {
      found = find_pair(rpd, labeled, w0, w0 + window_length, static_cast<int>(geo.pair_block), start);
    } catch (const SearchError&) {
      continue;
    }
    if (!tried.insert(found).second) continue;
    const int j1 = found.first + static_cast<int>(geo.cut_shift) - w0;
    const int j2 = found.second + static_cast<int>(geo.cut_shift) - w0;
    std::vector<SafetyCertificate> certificates;
    for (int w : trace.windows) {
      SafetyVerdict verdict = check_rewire_safety(labeled, rpd, w + j1, w + j2, q, bound);
      if (!verdict.certified()) break;
      certificates.push_back(std::move(*verdict.certificate));
    }
    if (certificates.size() == trace.windows.size()) {
      offsets = std::pair(j1, j2);
      trace.certificates = std::move(certificates);
    }
  }
  if (!offsets) throw LabStepError("pair", "no certified cut pair inside the windows");
  for (int w : trace.windows) trace.cut_pairs.emplace_back(w + offsets->first, w + offsets->second);

  Graph rewired = labeled;
  for (auto [c1, c2] : trace.cut_pairs) rewired = rewire(rewired, rpd, c1, c2);
  auto parts = extract_identical_parts(rewired, rpd, trace.cut_pairs);
  for (const auto& part : parts) trace.parts.push_back(part.vertices);
  Subgraph reduced = delete_one_part(rewired, parts, q);

  auto [c1, c2] = trace.cut_pairs.front();
  CollapseResult collapsed = collapse_interval(labeled, rpd, c1, c2);
  if (options.check_undo) {
    bool aligned = collapsed.decomposition.length() == rpd.length() - collapsed.shift;
    Graph undone = collapsed.graph;
    for (std::size_t k = 1; k < trace.cut_pairs.size() && aligned; ++k) {
      undone = rewire(undone, collapsed.decomposition, trace.cut_pairs[k].first - collapsed.shift,
                      trace.cut_pairs[k].second - collapsed.shift);
    }
    trace.undo_isomorphic =
        aligned && find_terminal_respecting_isomorphism(reduced.graph, undone).has_value();
  }

  result.graph = collapsed.graph.with_terminals({});
  result.decomposition = std::move(collapsed.decomposition);
  result.rewired = std::move(rewired);
  result.reduced = std::move(reduced.graph);
  trace.vertices_after = result.graph.vertex_count();
  if (trace.vertices_after >= trace.vertices_before) {
    throw Error("simplification step did not shrink the graph");
  }
  ValidationReport report = validate(result.graph, result.decomposition.decomposition());
  if (!report.ok()) throw Error("simplified decomposition is invalid: " + report.to_string());
  return result;
}

int certify_degree_bound(const Graph& g, const RankedDecomposition& rpd) {
  const int p = rpd.decomposition().max_bag_size();
  int bound = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) bound = std::max(bound, p * rpd.span(v).size());
  if (bound < g.max_degree()) {
    throw Error("degree bound " + std::to_string(bound) + " is below the maximum degree " +
                std::to_string(g.max_degree()));
  }
  return bound;
}

std::vector<std::string> ModelCheckReport::trace_lines() const {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    out.push_back("round " + std::to_string(k + 1));
    for (auto& line : steps[k].lines()) out.push_back("  " + line);
  }
  out.push_back("rounds " + std::to_string(rounds));
  out.push_back("final vertices " + std::to_string(final_vertex_count));
  out.push_back("degree bound " + std::to_string(degree_bound));
  out.push_back(std::string("answer ") + (answer ? "true" : "false"));
  return out;
}

ModelCheckReport model_check_pw(const Graph& g, const PathDecomposition& pd, const Formula& phi,
                                const Thresholds& thresholds, const StepOptions& options) {
  thresholds.validate();
  ValidationReport valid = validate(g, pd);
  if (!valid.ok()) throw PreconditionError("invalid decomposition: " + valid.to_string());
  const int q = quantifier_count(phi);

  Graph current = g;
  RankedDecomposition rpd = rank(remove_redundant_bags(pd));
  if (thresholds.mode == Mode::kLab &&
      thresholds.delta.size() < static_cast<std::size_t>(rpd.rank_count())) {
    throw PreconditionError("lab Delta table must cover all " + std::to_string(rpd.rank_count()) + " ranks");
  }

  ModelCheckReport report;
  while (find_offender(current, rpd, q, thresholds)) {
    if (report.rounds > g.vertex_count()) throw Error("simplification loop made no progress");
    StepResult step = simplify_step(current, rpd, q, thresholds, options);
    current = std::move(step.graph);
    rpd = std::move(step.decomposition);
    report.steps.push_back(std::move(step.trace));
    ++report.rounds;
  }
  report.degree_bound = certify_degree_bound(current, rpd);
  report.final_vertex_count = current.vertex_count();
  report.answer = model_check(current, phi);
  return report;
}

}  // namespace fopw
