// SPDX-License-Identifier: Apache-2.0

#include "fopw/cli.hpp"

#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "fopw/block_iso.hpp"
#include "fopw/ef_game.hpp"
#include "fopw/errors.hpp"
#include "fopw/generate.hpp"
#include "fopw/rewire.hpp"
#include "fopw/text_format.hpp"

namespace fopw {

Thresholds RunConfig::thresholds() const {
  if (mode == Mode::kStrict) {
    if (has_overrides()) throw PreconditionError("strict mode takes no threshold overrides");
    return Thresholds::strict();
  }
  if (delta.empty() || !lhat || !rhat || !rstar) {
    throw PreconditionError("lab mode needs --delta, --lhat, --rhat and --rstar");
  }
  Thresholds t = Thresholds::lab(delta, *lhat, *rhat, *rstar);
  t.validate();
  return t;
}

namespace {

struct Inputs {
  std::string graph, td, formula, out, out_prefix;
};

Graph load_graph(const std::string& path) { return read_graph(read_file(path)); }

/// Ranks from the file when present, otherwise the greedy ranking of the
/// bags as given.
RankedDecomposition load_ranked(const std::string& path) {
  DecompositionFile file = read_decomposition(read_file(path));
  if (file.ranks) return RankedDecomposition(file.decomposition, *file.ranks);
  return rank(file.decomposition);
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

void emit_instance(const std::string& prefix, const std::string& graph_text, const std::string& td_text,
                   std::ostream& out) {
  if (prefix.empty()) {
    out << graph_text << td_text;
  } else {
    write_file_atomic(prefix + ".fo", graph_text);
    write_file_atomic(prefix + ".td", td_text);
  }
}

std::string joined(const std::vector<std::string>& lines) {
  std::string text;
  for (const auto& line : lines) text += line + "\n";
  return text;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"First-order model checking on graphs of bounded pathwidth"};
  app.require_subcommand(1);

  RunConfig config;
  Inputs in;
  std::string mode_name = "strict";
  int q = 0, s1 = 0, s2 = 0, q1 = 0, q2 = 0, length = 0, size = 0;
  std::string family;
  bool check_undo = false;

  auto add_thresholds = [&](CLI::App* sub) {
    sub->add_option("--mode", mode_name, "strict or lab")->check(CLI::IsMember({"strict", "lab"}));
    sub->add_option("--delta", config.delta, "lab Delta table, comma separated")->delimiter(',');
    sub->add_option("--lhat", config.lhat, "lab lower bound for the rewiring radius");
    sub->add_option("--rhat", config.rhat, "lab window length");
    sub->add_option("--rstar", config.rstar, "lab cap on the searched region");
  };

  auto* check = app.add_subcommand("check", "model check via the simplification pipeline");
  check->add_option("--graph", in.graph)->required();
  check->add_option("--td", in.td)->required();
  check->add_option("--formula", in.formula)->required();
  check->add_option("--trace", config.trace_path, "write the step trace here");
  check->add_flag("--check-undo", check_undo, "verify each collapse against deletion");
  add_thresholds(check);

  auto* oracle = app.add_subcommand("oracle", "brute-force model check");
  oracle->add_option("--graph", in.graph)->required();
  oracle->add_option("--formula", in.formula)->required();

  auto* ef = app.add_subcommand("ef", "q-round EF game between two graphs");
  ef->add_option("--q", q)->required()->check(CLI::NonNegativeNumber);
  ef->add_option("graphs", config.inputs)->required()->expected(2);

  auto* normalize = app.add_subcommand("normalize", "drop redundant bags and rank");
  normalize->add_option("--graph", in.graph)->required();
  normalize->add_option("--td", in.td)->required();
  normalize->add_option("--out", in.out);

  auto* blocks = app.add_subcommand("blocks", "signature classes of the blocks of a given length");
  blocks->add_option("--graph", in.graph)->required();
  blocks->add_option("--td", in.td)->required();
  blocks->add_option("--length", length, "bags per block minus one")->required()->check(CLI::NonNegativeNumber);

  auto* rewire_cmd = app.add_subcommand("rewire", "rewire between two separator bags");
  rewire_cmd->add_option("--graph", in.graph)->required();
  rewire_cmd->add_option("--td", in.td)->required();
  rewire_cmd->add_option("--s1", s1)->required();
  rewire_cmd->add_option("--s2", s2)->required();
  rewire_cmd->add_option("--out-prefix", in.out_prefix);

  auto* collapse = app.add_subcommand("collapse", "collapse the bags between two separators");
  collapse->add_option("--graph", in.graph)->required();
  collapse->add_option("--td", in.td)->required();
  collapse->add_option("--q1", q1)->required();
  collapse->add_option("--q2", q2)->required();
  collapse->add_option("--out-prefix", in.out_prefix);

  auto* gen = app.add_subcommand("gen", "generate a corpus instance");
  gen->add_option("--family", family)->required()->check(
      CLI::IsMember({"path", "cycle", "ladder", "caterpillar", "random"}));
  gen->add_option("--n", size)->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", config.seed);
  gen->add_option("--out-prefix", in.out_prefix);

  std::vector<const char*> argv;
  argv.push_back("fopw");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "fopw: " << e.what() << "\n";
    return 2;
  }

  try {
    config.mode = mode_name == "lab" ? Mode::kLab : Mode::kStrict;
    if (check->parsed()) {
      config.subcommand = "check";
      Thresholds thresholds = config.thresholds();
      Graph g = load_graph(in.graph);
      PathDecomposition pd = read_decomposition(read_file(in.td)).decomposition;
      Formula phi = read_formula(read_file(in.formula), g.terminal_count());
      ModelCheckReport report = model_check_pw(g, pd, phi, thresholds, StepOptions{check_undo});
      if (!config.trace_path.empty()) write_file_atomic(config.trace_path, joined(report.trace_lines()));
      out << (report.answer ? "true" : "false") << "\n";
      return report.answer ? 0 : 1;
    }
    if (oracle->parsed()) {
      Graph g = load_graph(in.graph);
      Formula phi = read_formula(read_file(in.formula), g.terminal_count());
      bool answer = model_check(g, phi);
      out << (answer ? "true" : "false") << "\n";
      return answer ? 0 : 1;
    }
    if (ef->parsed()) {
      Graph g1 = load_graph(config.inputs[0]);
      Graph g2 = load_graph(config.inputs[1]);
      bool same = ef_equivalent(g1, g2, q);
      out << (same ? "equivalent" : "not equivalent") << "\n";
      return same ? 0 : 1;
    }
    if (normalize->parsed()) {
      Graph g = load_graph(in.graph);
      PathDecomposition pd = read_decomposition(read_file(in.td)).decomposition;
      ValidationReport report = validate(g, pd);
      require(report.ok(), report.to_string());
      emit(in.out, write_ranked_decomposition(rank(remove_redundant_bags(pd))), out);
      return 0;
    }
    if (blocks->parsed()) {
      Graph g = load_graph(in.graph);
      RankedDecomposition rpd = load_ranked(in.td);
      std::map<BlockSignature, int> classes;
      for (int s = 1; s + length <= rpd.length(); ++s) {
        auto [it, fresh] = classes.emplace(block_signature(rpd, g, s, length), static_cast<int>(classes.size()) + 1);
        out << "window " << s << " class " << it->second << "\n";
      }
      out << "classes " << classes.size() << "\n";
      return 0;
    }
    if (rewire_cmd->parsed()) {
      Graph g = load_graph(in.graph);
      RankedDecomposition rpd = load_ranked(in.td);
      Graph rewired = rewire(g, rpd, s1, s2);
      emit_instance(in.out_prefix, write_graph(rewired), write_ranked_decomposition(rpd), out);
      return 0;
    }
    if (collapse->parsed()) {
      Graph g = load_graph(in.graph);
      RankedDecomposition rpd = load_ranked(in.td);
      CollapseResult result = collapse_interval(g, rpd, q1, q2);
      emit_instance(in.out_prefix, write_graph(result.graph), write_ranked_decomposition(result.decomposition),
                    out);
      return 0;
    }
    if (gen->parsed()) {
      Instance instance = generate(parse_family(family), size, config.seed);
      emit_instance(in.out_prefix, write_graph(instance.graph), write_decomposition(instance.decomposition), out);
      return 0;
    }
  } catch (const std::exception& e) {
    err << "fopw: " << e.what() << "\n";
    return 2;
  }
  err << "fopw: no subcommand\n";
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace fopw
