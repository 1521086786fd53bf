// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "fopw/ef_game.hpp"
#include "fopw/errors.hpp"
#include "fopw/pipeline.hpp"
#include "test_util.hpp"

namespace fopw {
namespace {

using testing::path_graph;

Thresholds star_thresholds() { return Thresholds::lab({1, 6}, 1, 13, 1000); }

// Bags {a, b, leaf_j}: leaves get rank 1, a rank 2, b rank 3.
std::pair<Graph, RankedDecomposition> double_hub(int leaves) {
  std::vector<Edge> edges{{0, 1}};
  std::vector<std::vector<Vertex>> bags;
  for (Vertex l = 2; l < leaves + 2; ++l) {
    edges.emplace_back(0, l);
    bags.push_back({0, 1, l});
  }
  PathDecomposition pd = make_decomposition(leaves + 2, std::move(bags));
  return {Graph(leaves + 2, edges), rank(pd)};
}

TEST(Thresholds, Validation) {
  EXPECT_NO_THROW(Thresholds::strict().validate());
  Thresholds strict_with_override = Thresholds::strict();
  strict_with_override.lhat = 3;
  EXPECT_THROW(strict_with_override.validate(), PreconditionError);
  EXPECT_THROW(Thresholds::lab({}, 1, 1, 1).validate(), PreconditionError);
  EXPECT_THROW(Thresholds::lab({2, 2}, 1, 1, 1).validate(), PreconditionError);
  EXPECT_THROW(Thresholds::lab({1, 2}, 1, 0, 1).validate(), PreconditionError);
  EXPECT_NO_THROW(star_thresholds().validate());
}

TEST(Offender, NoneWhenUnderThresholds) {
  Graph g = path_graph(20);
  EXPECT_FALSE(find_offender(g, rank(testing::path_bags(20)), 1, Thresholds::lab({1, 2}, 1, 1, 1)));
  EXPECT_FALSE(find_offender(g, rank(testing::path_bags(20)), 1, Thresholds::strict()));
}

TEST(Offender, SingleHub) {
  auto [g, pd] = testing::star(13);
  auto offender = find_offender(g, rank(pd), 1, Thresholds::lab({1, 2}, 1, 1, 1));
  ASSERT_TRUE(offender.has_value());
  EXPECT_EQ(offender->vertex, 0);
  EXPECT_EQ(offender->rank, 2);
  EXPECT_EQ(offender->occurrences, 13);
}

TEST(Offender, LowestRankWins) {
  auto [g, rpd] = double_hub(30);
  ASSERT_EQ(rpd.rank_of(0), 2);
  ASSERT_EQ(rpd.rank_of(1), 3);
  auto offender = find_offender(g, rpd, 1, Thresholds::lab({1, 2, 3}, 1, 1, 1));
  ASSERT_TRUE(offender.has_value());
  EXPECT_EQ(offender->vertex, 0);
}

TEST(Offender, LabTableMustCoverRanks) {
  auto [g, rpd] = double_hub(5);
  EXPECT_THROW(find_offender(g, rpd, 1, Thresholds::lab({100, 200}, 1, 1, 1)), PreconditionError);
}

TEST(Section, WholeSpan) {
  auto [g, pd] = testing::star(100);
  Section section = find_section(rank(pd), 0, 2, 1);
  EXPECT_EQ(section.a3, 1);
  EXPECT_EQ(section.a4, 100);
  EXPECT_EQ(section.terminals, (std::vector<Vertex>{1, 0, 100}));
}

TEST(Section, HigherRankEntrySplits) {
  std::vector<std::vector<Vertex>> bags;
  std::vector<Edge> edges;
  for (Vertex l = 2; l <= 101; ++l) {
    edges.emplace_back(0, l);
    if (l - 1 >= 50) {
      bags.push_back({0, 1, l});
    } else {
      bags.push_back({0, l});
    }
  }
  Graph g(102, edges);
  RankedDecomposition rpd = rank(make_decomposition(102, bags));
  ASSERT_EQ(rpd.rank_of(0), 2);
  ASSERT_EQ(rpd.rank_of(1), 3);
  Section section = find_section(rpd, 0, 2, 1);
  EXPECT_EQ(section.a3, 50);
  EXPECT_EQ(section.a4, 100);
  EXPECT_EQ(section.interesting_bags, 1);
  EXPECT_THROW(find_section(rpd, 0, 2, 60), LabStepError);
}

TEST(Section, FewInterestingBags) {
  Rng rng(89);
  for (int trial = 0; trial < 100; ++trial) {
    Instance inst = generate(Family::kRandom, rng.between(2, 40), rng.next());
    RankedDecomposition rpd = rank(remove_redundant_bags(inst.decomposition));
    for (Vertex v = 0; v < rpd.vertex_count(); ++v) {
      Section section = find_section(rpd, v, rpd.rank_of(v), 1);
      EXPECT_LE(section.interesting_bags, 2 * rpd.rank_count());
    }
  }
}

TEST(SimplifyStep, StarShrinksAndStaysEquivalent) {
  auto [g, pd] = testing::star(36);
  RankedDecomposition rpd = rank(pd);
  StepResult step = simplify_step(g, rpd, 1, star_thresholds(), StepOptions{true});
  EXPECT_LT(step.graph.vertex_count(), g.vertex_count());
  EXPECT_TRUE(ef_equivalent(g, step.graph, 1));
  EXPECT_TRUE(validate(step.graph, step.decomposition.decomposition()).ok());
  EXPECT_TRUE(check_ranking(step.decomposition).ranks_unique_per_bag);
  ASSERT_TRUE(step.trace.undo_isomorphic.has_value());
  EXPECT_TRUE(*step.trace.undo_isomorphic);
  EXPECT_EQ(step.trace.certificates.size(), 2u);
  EXPECT_FALSE(step.trace.lines().empty());
}

TEST(SimplifyStep, Refusals) {
  auto [g, pd] = testing::star(36);
  RankedDecomposition rpd = rank(pd);
  EXPECT_THROW(simplify_step(g.with_terminals({0}), rpd, 1, star_thresholds()), PreconditionError);
  EXPECT_THROW(simplify_step(g, rpd, 1, Thresholds::lab({1, 50}, 1, 13, 1000)), PreconditionError);
  EXPECT_THROW(simplify_step(g, rpd, 1, Thresholds::lab({1, 6}, 1, 40, 1000)), LabStepError);
}

TEST(ModelCheckPw, StrictTakesNoRounds) {
  Rng rng(97);
  for (int trial = 0; trial < 30; ++trial) {
    Instance inst = generate(Family::kRandom, rng.between(2, 12), rng.next());
    testing::FormulaSampler sampler(rng, 0);
    Formula phi = parse_formula(sampler.sentence(2), 0);
    ModelCheckReport report = model_check_pw(inst.graph, inst.decomposition, phi, Thresholds::strict());
    EXPECT_EQ(report.rounds, 0);
    EXPECT_EQ(report.answer, model_check(inst.graph, phi));
  }
}

TEST(ModelCheckPw, LabLongPath) {
  Graph g = path_graph(30);
  Formula phi = parse_formula("E x. A y. !(x ~ y)", 0);
  ModelCheckReport report = model_check_pw(g, testing::path_bags(30), phi, Thresholds::lab({1, 2}, 1, 5, 100));
  EXPECT_EQ(report.answer, model_check(g, phi));
}

TEST(ModelCheckPw, LabStarTakesARound) {
  auto [g, pd] = testing::star(37);
  Formula phi = parse_formula("E x. (x = x)", 0);
  ModelCheckReport report = model_check_pw(g, pd, phi, star_thresholds());
  EXPECT_GE(report.rounds, 1);
  EXPECT_LT(report.final_vertex_count, g.vertex_count());
  EXPECT_TRUE(report.answer);
  EXPECT_EQ(report.trace_lines().back(), "answer true");
}

TEST(ModelCheckPw, StrictAndLabAgree) {
  Rng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    Instance inst = generate(Family::kCaterpillar, rng.between(2, 12), rng.next());
    testing::FormulaSampler sampler(rng, 0);
    Formula phi = parse_formula(sampler.sentence(2), 0);
    auto strict = model_check_pw(inst.graph, inst.decomposition, phi, Thresholds::strict());
    auto lab = model_check_pw(inst.graph, inst.decomposition, phi, Thresholds::lab({100, 200, 300, 400, 500, 600, 700, 800, 900, 1000, 1100, 1200, 1300, 1400, 1500, 1600}, 1, 5, 100));
    EXPECT_EQ(strict.answer, lab.answer);
  }
}

TEST(DegreeBound, Examples) {
  Graph g = path_graph(10);
  EXPECT_EQ(certify_degree_bound(g, testing::parity_ranked_path(10)), 4);
  Graph triangle = testing::complete_graph(3);
  EXPECT_EQ(certify_degree_bound(triangle, rank(make_decomposition(3, {{0, 1, 2}}))), 3);
}

TEST(DegreeBound, AtLeastMaxDegree) {
  Rng rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    Family family = static_cast<Family>(rng.between(0, 4));
    Instance inst = generate(family, rng.between(3, 30), rng.next());
    RankedDecomposition rpd = rank(remove_redundant_bags(inst.decomposition));
    EXPECT_GE(certify_degree_bound(inst.graph, rpd), inst.graph.max_degree());
  }
}

TEST(StrictQuantities, Sizes) {
  StrictQuantities sq = strict_quantities(1, 1, 0, 2);
  EXPECT_EQ(sq.lhat.to_u64(), 9u);
  EXPECT_LT(sq.lhat, sq.rhat);
  EXPECT_LT(sq.rhat, sq.rstar);
  EXPECT_THROW(strict_quantities(1, 1, 0, 1), PreconditionError);
}

}  // namespace
}  // namespace fopw
