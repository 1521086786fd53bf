// SPDX-License-Identifier: Apache-2.0

#include "fopw/text_format.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fopw/errors.hpp"

namespace fopw {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> words;
};

bool is_comment(const std::vector<std::string>& words) { return !words.empty() && words[0] == "c"; }

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream words(raw);
    Line line{number, {}};
    for (std::string w; words >> w;) line.words.push_back(w);
    if (line.words.empty() || is_comment(line.words)) continue;
    out.push_back(std::move(line));
  }
  return out;
}

long long integer(const Line& line, std::size_t index) {
  if (index >= line.words.size()) throw ParseError("missing field", line.number);
  const std::string& w = line.words[index];
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(w, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != w.size() || w.empty()) throw ParseError("expected an integer, got '" + w + "'", line.number);
  return value;
}

void expect_fields(const Line& line, std::size_t count) {
  if (line.words.size() != count) {
    throw ParseError("expected " + std::to_string(count) + " fields", line.number);
  }
}

}  // namespace

std::string write_graph(const Graph& g) {
  std::ostringstream out;
  out << "p fo " << g.vertex_count() << ' ' << g.edge_count() << ' ' << g.terminal_count() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
  for (int i = 1; i <= g.terminal_count(); ++i) out << "t " << i << ' ' << g.terminal(i) << '\n';
  return out.str();
}

Graph read_graph(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("missing 'p fo' header", 1);
  const Line& header = lines.front();
  if (header.words.size() != 5 || header.words[0] != "p" || header.words[1] != "fo") {
    throw ParseError("expected 'p fo <n> <m> <k>'", header.number);
  }
  long long n = integer(header, 2), m = integer(header, 3), k = integer(header, 4);
  if (n < 0 || m < 0 || k < 0 || n > (1 << 26)) throw ParseError("bad header counts", header.number);

  std::vector<Edge> edges;
  std::vector<Vertex> labels(static_cast<std::size_t>(k), -1);
  for (std::size_t idx = 1; idx < lines.size(); ++idx) {
    const Line& line = lines[idx];
    const std::string& tag = line.words[0];
    if (tag == "e") {
      expect_fields(line, 3);
      long long u = integer(line, 1), v = integer(line, 2);
      if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("edge endpoint out of range", line.number);
      if (u == v) throw ParseError("self-loop", line.number);
      edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    } else if (tag == "t") {
      expect_fields(line, 3);
      long long i = integer(line, 1), v = integer(line, 2);
      if (i < 1 || i > k) throw ParseError("label index out of range", line.number);
      if (v < 0 || v >= n) throw ParseError("terminal vertex out of range", line.number);
      if (labels[i - 1] != -1) throw ParseError("label given twice", line.number);
      labels[i - 1] = static_cast<Vertex>(v);
    } else {
      throw ParseError("unknown line type '" + tag + "'", line.number);
    }
  }
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError("header announces " + std::to_string(m) + " edges, found " + std::to_string(edges.size()),
                     header.number);
  }
  if (std::find(labels.begin(), labels.end(), -1) != labels.end()) {
    throw ParseError("some label has no 't' line", header.number);
  }
  Graph g(static_cast<int>(n), edges, labels);
  if (g.edge_count() != m) throw ParseError("duplicate edge", header.number);
  return g;
}

std::string write_decomposition(const PathDecomposition& pd) {
  std::ostringstream out;
  out << "s td " << pd.length() << ' ' << pd.max_bag_size() << ' ' << pd.vertex_count << '\n';
  for (int j = 1; j <= pd.length(); ++j) {
    out << "b " << j;
    for (Vertex v : pd.bag(j)) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

std::string write_ranked_decomposition(const RankedDecomposition& rpd) {
  std::string out = write_decomposition(rpd.decomposition());
  for (Vertex v = 0; v < rpd.vertex_count(); ++v) {
    out += "r " + std::to_string(v) + " " + std::to_string(rpd.rank_of(v)) + "\n";
  }
  return out;
}

DecompositionFile read_decomposition(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("missing 's td' header", 1);
  const Line& header = lines.front();
  if (header.words.size() != 5 || header.words[0] != "s" || header.words[1] != "td") {
    throw ParseError("expected 's td <l> <max bag size> <n>'", header.number);
  }
  long long length = integer(header, 2), max_bag = integer(header, 3), n = integer(header, 4);
  if (length < 0 || max_bag < 0 || n < 0 || n > (1 << 26) || length > (1 << 26)) {
    throw ParseError("bad header counts", header.number);
  }

  std::vector<std::vector<Vertex>> bags(static_cast<std::size_t>(length));
  std::vector<char> seen_bag(static_cast<std::size_t>(length), 0);
  std::vector<int> ranks(static_cast<std::size_t>(n), 0);
  std::vector<char> seen_rank(static_cast<std::size_t>(n), 0);
  std::size_t rank_lines = 0;
  for (std::size_t idx = 1; idx < lines.size(); ++idx) {
    const Line& line = lines[idx];
    const std::string& tag = line.words[0];
    if (tag == "b") {
      long long j = integer(line, 1);
      if (j < 1 || j > length) throw ParseError("bag index out of range", line.number);
      if (seen_bag[j - 1]) throw ParseError("bag given twice", line.number);
      seen_bag[j - 1] = 1;
      for (std::size_t w = 2; w < line.words.size(); ++w) {
        long long v = integer(line, w);
        if (v < 0 || v >= n) throw ParseError("bag vertex out of range", line.number);
        bags[j - 1].push_back(static_cast<Vertex>(v));
      }
    } else if (tag == "r") {
      expect_fields(line, 3);
      long long v = integer(line, 1), r = integer(line, 2);
      if (v < 0 || v >= n) throw ParseError("ranked vertex out of range", line.number);
      if (r < 0 || r > (1 << 20)) throw ParseError("rank out of range", line.number);
      if (seen_rank[v]) throw ParseError("rank given twice", line.number);
      seen_rank[v] = 1;
      ranks[v] = static_cast<int>(r);
      ++rank_lines;
    } else {
      throw ParseError("unknown line type '" + tag + "'", line.number);
    }
  }
  if (std::find(seen_bag.begin(), seen_bag.end(), 0) != seen_bag.end()) {
    throw ParseError("some bag has no 'b' line", header.number);
  }
  DecompositionFile file;
  file.decomposition = make_decomposition(static_cast<int>(n), std::move(bags));
  if (file.decomposition.max_bag_size() != max_bag) {
    throw ParseError("header announces bags of size " + std::to_string(max_bag) + ", largest is " +
                         std::to_string(file.decomposition.max_bag_size()),
                     header.number);
  }
  if (rank_lines > 0) {
    if (rank_lines != static_cast<std::size_t>(n)) throw ParseError("ranks must cover every vertex", header.number);
    file.ranks = std::move(ranks);
  }
  return file;
}

Formula read_formula(std::string_view text, int k) {
  std::istringstream in{std::string(text)};
  std::string raw, body;
  while (std::getline(in, raw)) {
    std::istringstream words(raw);
    std::string first;
    if (words >> first && first == "c") continue;
    body += raw + "\n";
  }
  return parse_formula(body, k);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path temp = target;
  temp += ".tmp" + std::to_string(static_cast<long long>(std::hash<std::string>{}(path) % 100000));
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + temp.string());
    out << contents;
    out.flush();
    if (!out) throw Error("cannot write " + temp.string());
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw Error("cannot replace " + path);
  }
}

}  // namespace fopw
