// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>

#include "fopw/errors.hpp"
#include "fopw/text_format.hpp"
#include "test_util.hpp"

namespace fopw {
namespace {

TEST(GraphFormat, WriteAndRead) {
  Graph g(4, {{0, 1}, {2, 3}}, {3, 3});
  std::string text = write_graph(g);
  EXPECT_EQ(text, "p fo 4 2 2\ne 0 1\ne 2 3\nt 1 3\nt 2 3\n");
  EXPECT_EQ(read_graph(text), g);
}

TEST(GraphFormat, CommentsAndBlankLines) {
  Graph g = read_graph("c triangle\np fo 3 3 1\n\ne 0 1\nc inner\ne 1 2\ne 0 2\nt 1 2\n");
  EXPECT_EQ(g, Graph(3, {{0, 1}, {1, 2}, {0, 2}}, {2}));
}

TEST(GraphFormat, Errors) {
  EXPECT_THROW(read_graph(""), ParseError);
  EXPECT_THROW(read_graph("p fo 2 1 0\n"), ParseError);
  EXPECT_THROW(read_graph("p fo 2 1 0\ne 0 2\n"), ParseError);
  EXPECT_THROW(read_graph("p fo 2 2 0\ne 0 1\ne 1 0\n"), ParseError);
  EXPECT_THROW(read_graph("p fo 2 0 1\n"), ParseError);
  EXPECT_THROW(read_graph("p fo 2 0 0\nx 1\n"), ParseError);
  try {
    read_graph("p fo 2 1 0\nc\ne 0 x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 3u);
  }
}

TEST(DecompositionFormat, RoundTrip) {
  RankedDecomposition rpd = testing::parity_ranked_path(5);
  DecompositionFile file = read_decomposition(write_ranked_decomposition(rpd));
  EXPECT_EQ(file.decomposition, rpd.decomposition());
  ASSERT_TRUE(file.ranks.has_value());
  EXPECT_EQ(*file.ranks, rpd.ranks());
  DecompositionFile plain = read_decomposition(write_decomposition(rpd.decomposition()));
  EXPECT_FALSE(plain.ranks.has_value());
}

TEST(DecompositionFormat, Errors) {
  EXPECT_THROW(read_decomposition("s td 2 2 3\nb 1 0 1\n"), ParseError);
  EXPECT_THROW(read_decomposition("s td 1 3 3\nb 1 0 1\n"), ParseError);
  EXPECT_THROW(read_decomposition("s td 1 2 3\nb 1 0 1\nr 0 1\n"), ParseError);
  EXPECT_THROW(read_decomposition("s td 1 2 3\nb 1 0 5\n"), ParseError);
}

TEST(FormulaFormat, CommentsSkipped) {
  Formula f = read_formula("c neighbours\nE x.\n  E y. (x ~ y)\n", 0);
  EXPECT_EQ(f, parse_formula("E x. E y. (x ~ y)", 0));
}

TEST(RoundTrip, RandomInstances) {
  Rng rng(107);
  for (int trial = 0; trial < 100; ++trial) {
    Family family = static_cast<Family>(rng.between(0, 4));
    Instance inst = generate(family, rng.between(3, 30), rng.next());
    Graph g = rng.coin() ? inst.graph : inst.graph.with_terminals({0, inst.graph.vertex_count() - 1});
    EXPECT_EQ(read_graph(write_graph(g)), g);
    EXPECT_EQ(read_decomposition(write_decomposition(inst.decomposition)).decomposition, inst.decomposition);
    testing::FormulaSampler sampler(rng, 1);
    Formula phi = parse_formula(sampler.sentence(2), 1);
    EXPECT_EQ(read_formula(to_string(phi), 1), phi);
  }
}

TEST(Files, AtomicWriteAndRead) {
  auto dir = std::filesystem::temp_directory_path() / "fopw_text_format_test";
  std::filesystem::create_directories(dir);
  std::string path = (dir / "g.fo").string();
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  EXPECT_EQ(read_file(path), "second");
  EXPECT_THROW(read_file((dir / "missing.fo").string()), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace fopw
