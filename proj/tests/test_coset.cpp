#include "fuzz.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace modelspace;

namespace {

std::pair<CosetTree, OdometerMap> coset_of(const GermGraph& g, std::size_t d) {
  return lambda_plus(positive_part(truncate(g, d)));
}

}  // namespace

TEST(VertexOrder, PathProducts) {
  auto t = truncate(oracle::load("two_loops_23"), 3);
  for (const auto& n : t.nodes) EXPECT_EQ(vertex_order(t, n.id), oracle::path_product(t, n.id));
  auto m = truncate(oracle::load("mixed_countable"), 2);
  for (const auto& n : m.nodes)
    if (!n.positive) { EXPECT_THROW(vertex_order(m, n.id), DomainError); }
}

TEST(LambdaPlus, TierCountsForSingleLoop) {
  auto [c, o] = coset_of(oracle::load("bs2"), 4);
  for (std::size_t i = 0; i <= 4; ++i) EXPECT_EQ(c.tier_count(i), std::size_t{1} << i);
  EXPECT_EQ(o.size(), c.size());
}

TEST(LambdaPlus, ParentIsResidueReduction) {
  auto [c, o] = coset_of(oracle::load("two_loops_23"), 3);
  for (const auto& v : c.vertices) {
    if (!v.parent) continue;
    const auto& p = c.vertices[*v.parent];
    EXPECT_EQ(p.tier + 1, v.tier);
    EXPECT_EQ(v.residue % BigInt(c.fibers[p.base].size), p.residue);
  }
}

TEST(LambdaPlus, CeilingRaisesSizeError) {
  EXPECT_THROW(lambda_plus(positive_part(truncate(oracle::load("bs3"), 12)), 1000), SizeError);
  EXPECT_THROW(lambda_plus(truncate(oracle::load("mixed_countable"), 2)), DomainError);
}

TEST(Odometer, CommutesWithParent) {
  for (const auto& name : oracle::corpus()) {
    auto [c, o] = coset_of(oracle::load(name), 4);
    for (const auto& v : c.vertices)
      if (v.parent) { EXPECT_EQ(*c.vertices[o.apply(v.id, 1)].parent, o.apply(*v.parent, 1)) << name; }
  }
}

TEST(Odometer, OrbitSizeIsVertexOrder) {
  for (const auto& name : oracle::corpus()) {
    auto [c, o] = coset_of(oracle::load(name), 3);
    for (const auto& v : c.vertices)
      EXPECT_EQ(BigInt(oracle::orbit_size(o, v.id)), vertex_order(c.base, v.base)) << name;
  }
}

TEST(Odometer, PowersCompose) {
  auto [c, o] = coset_of(oracle::load("two_loops_23"), 2);
  auto p2 = sigma_apply(o, 2);
  auto p5 = sigma_apply(o, 5);
  auto p7 = sigma_apply(o, 7);
  for (std::size_t v = 0; v < c.size(); ++v) EXPECT_EQ(p5[p2[v]], p7[v]);
  auto back = sigma_apply(o, -7);
  for (std::size_t v = 0; v < c.size(); ++v) EXPECT_EQ(back[p7[v]], v);
}

TEST(Wedge, MatchesCosetModelOnCorpus) {
  for (const auto& name : oracle::corpus()) {
    auto t = truncate(oracle::load(name), 4);
    auto [c, o] = lambda_plus(positive_part(t));
    auto wedge = wedge_expansion(t);
    auto coset = lambda_of_coset(c, null_forest(t), t);
    EXPECT_TRUE(isomorphic(wedge, coset)) << name;
    EXPECT_EQ(oracle::canonical_string(wedge), oracle::canonical_string(coset)) << name;
  }
}

TEST(Wedge, MatchesCosetModelOnFuzzedGerms) {
  std::mt19937 rng(61);
  for (int k = 0; k < 80; ++k) {
    auto g = fuzz::random_valid_germ(rng, 3, 5, 3);
    auto t = truncate(g, 3);
    auto [c, o] = lambda_plus(positive_part(t));
    auto a = wedge_expansion(t);
    auto b = lambda_of_coset(c, null_forest(t), t);
    EXPECT_EQ(oracle::canonical_string(a), oracle::canonical_string(b)) << render_germ(g);
  }
}

TEST(Wedge, EdgeColorCounts) {
  auto w = wedge_expansion(truncate(oracle::load("bs2"), 3));
  EXPECT_EQ(w.count(EdgeColor::Black), 3u);
  EXPECT_EQ(w.count(EdgeColor::Gray), 11u);
  EXPECT_EQ(w.size(), 15u);
  auto n = wedge_expansion(truncate(oracle::load("null_ray_root"), 3));
  EXPECT_EQ(n.count(EdgeColor::Dashed), 3u);
}

TEST(Isomorphic, DetectsDifferences) {
  auto a = wedge_expansion(truncate(oracle::load("bs2"), 2));
  auto b = wedge_expansion(truncate(oracle::load("bs3"), 2));
  EXPECT_FALSE(isomorphic(a, b));
  auto c = a;
  c.nodes.back().color = EdgeColor::Black;
  EXPECT_FALSE(isomorphic(a, c));
}

TEST(FrontierCount, MatchesTierAndEnumeration) {
  for (const auto& name : oracle::corpus()) {
    auto g = oracle::load(name);
    auto [c, o] = coset_of(g, 4);
    for (std::size_t i = 0; i <= 4; ++i) {
      EXPECT_EQ(frontier_count(g, i), BigInt(c.tier_count(i))) << name << " " << i;
      EXPECT_EQ(frontier_count(g, i), oracle::weighted_positive_paths(g, g.root, i)) << name << " " << i;
    }
  }
}

TEST(Collapse, SurjectiveExactlyWhenNextTierCoversThisOne) {
  auto [c, o] = coset_of(oracle::load("bs2"), 4);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_TRUE(collapse_is_surjective(c, i));
  auto [f, fo] = coset_of(oracle::load("finite_plus_uncountable"), 3);
  EXPECT_FALSE(collapse_is_surjective(f, 1));
}
