#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace modelspace;

namespace {

MultSequence seq(std::vector<int> prefix, std::vector<int> cycle) {
  MultSequence s;
  for (int v : prefix) s.prefix.emplace_back(v);
  for (int v : cycle) s.cycle.emplace_back(v);
  return s;
}

// Every sequence with prefix length <= 2 and cycle length 1..2 over {0,1,2}.
std::vector<MultSequence> small_family() {
  std::vector<std::vector<int>> words{{}};
  for (int a = 0; a < 3; ++a) words.push_back({a});
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) words.push_back({a, b});
  std::vector<MultSequence> out;
  for (const auto& p : words)
    for (const auto& c : words)
      if (!c.empty()) out.push_back(seq(p, c));
  return out;
}

IntMatrix scalar(std::size_t n, int k) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = k;
  return m;
}

}  // namespace

TEST(BondCompose, Examples) {
  EXPECT_EQ(bond_compose(seq({}, {2}), 1, 4), 16);
  EXPECT_EQ(bond_compose(seq({3}, {1}), 1, 10), 3);
  auto s = seq({5, 0}, {2, 7});
  for (std::size_t i = 1; i < 8; ++i) EXPECT_EQ(bond_compose(s, i, i), s.label(i));
  EXPECT_THROW(bond_compose(s, 3, 2), DomainError);
  EXPECT_THROW(bond_compose(s, 0, 2), DomainError);
}

TEST(BondCompose, LargeProductsAreExact) {
  EXPECT_EQ(bond_compose(seq({}, {2}), 1, 100), BigInt(1) << 100);
}

TEST(SequenceLiteral, RoundTrip) {
  for (const auto& s : small_family()) EXPECT_EQ(parse_sequence(render_sequence(s)), s);
  EXPECT_EQ(parse_sequence("prefix:3,0;cycle:2,1"), seq({3, 0}, {2, 1}));
  EXPECT_EQ(parse_sequence("cycle:2"), seq({}, {2}));
  EXPECT_THROW(parse_sequence("prefix:1"), ParseError);
  EXPECT_THROW(parse_sequence("cycle:"), ParseError);
  EXPECT_THROW(parse_sequence("cycle:-1"), ParseError);
  EXPECT_THROW(parse_sequence("cycle:1;cycle:2"), ParseError);
}

TEST(ClassifyMult, Examples) {
  EXPECT_EQ(classify_mult(seq({}, {1})), (SequenceClass{false, true, true, true}));
  auto two = classify_mult(seq({}, {2}));
  EXPECT_FALSE(two.semistable);
  EXPECT_TRUE(two.pro_mono);
  EXPECT_FALSE(two.stable);
  auto zero = classify_mult(seq({}, {0}));
  EXPECT_TRUE(zero.pro_trivial);
  EXPECT_TRUE(zero.stable);
}

TEST(ClassifyMult, FlagInvariants) {
  for (const auto& s : small_family()) {
    auto c = classify_mult(s);
    EXPECT_EQ(c.stable, c.semistable && c.pro_mono);
    if (c.pro_trivial) { EXPECT_TRUE(c.stable); }
  }
}

TEST(ClassifyMult, InvariantUnderBlockComposition) {
  for (const auto& s : small_family())
    for (std::size_t m = 1; m <= 3; ++m) {
      EXPECT_EQ(classify_mult(block_compose(s, m)), classify_mult(s)) << render_sequence(s) << " m=" << m;
      EXPECT_EQ(inverse_limit_mult(block_compose(s, m)), inverse_limit_mult(s));
    }
}

TEST(BlockCompose, LabelsAreBlockProducts) {
  auto s = seq({3, 0}, {2, 1, 5});
  for (std::size_t m = 1; m <= 4; ++m) {
    auto b = block_compose(s, m);
    for (std::size_t t = 1; t <= 12; ++t) EXPECT_EQ(b.label(t), bond_compose(s, (t - 1) * m + 1, t * m));
  }
}

TEST(Ladder, Examples) {
  auto zero = ladder_search(RankedSequence::of(seq({}, {0})), RankedSequence::trivial(), 3, 1);
  ASSERT_TRUE(zero);
  for (const auto& u : zero->up) EXPECT_EQ(u, 0);
  for (const auto& d : zero->down) EXPECT_EQ(d, 0);
  EXPECT_TRUE(verify_ladder(RankedSequence::of(seq({}, {0})), RankedSequence::trivial(), *zero));

  auto a = RankedSequence::of(seq({}, {1}));
  auto b = RankedSequence::of(seq({3}, {1}));
  auto shift = ladder_search(a, b, 3, 4);
  ASSERT_TRUE(shift);
  EXPECT_TRUE(verify_ladder(a, b, *shift));

  auto none = ladder_search(seq({}, {2}), seq({}, {1}), 3, 4);
  EXPECT_FALSE(none);
  EXPECT_FALSE(verify_ladder(RankedSequence::of(seq({}, {2})), RankedSequence::of(seq({}, {1})), none));
}

TEST(Ladder, RejectsBrokenCertificates) {
  auto a = RankedSequence::of(seq({}, {1}));
  auto b = RankedSequence::of(seq({3}, {1}));
  auto L = *ladder_search(a, b, 3, 4);
  auto bad = L;
  bad.down[0] += 1;
  EXPECT_FALSE(verify_ladder(a, b, bad));
  bad = L;
  bad.top.pop_back();
  EXPECT_THROW(verify_ladder(a, b, bad), DomainError);
  EXPECT_THROW(ladder_search(a, b, 1, 4), DomainError);
}

TEST(Ladder, ProTrivialMeansCertificateAgainstTrivial) {
  for (const auto& s : small_family()) {
    auto L = ladder_search(RankedSequence::of(s), RankedSequence::trivial(), 3, 1);
    EXPECT_EQ(L.has_value(), classify_mult(s).pro_trivial) << render_sequence(s);
    if (L) { EXPECT_TRUE(verify_ladder(RankedSequence::of(s), RankedSequence::trivial(), *L)); }
  }
}

TEST(Ladder, SemistableMeansCertificateAgainstEpiNormalForm) {
  for (const auto& s : small_family()) {
    auto a = RankedSequence::of(s);
    auto e = epi_normal_form(s);
    auto L = ladder_search(a, e, 4, 8);
    EXPECT_EQ(L.has_value(), classify_mult(s).semistable) << render_sequence(s);
    if (L) { EXPECT_TRUE(verify_ladder(a, e, *L)); }
  }
}

TEST(Ladder, InverseLimitIsConstantOnCertifiedPairs) {
  auto fam = small_family();
  for (const auto& s : fam)
    for (std::size_t m = 2; m <= 3; ++m) {
      auto t = block_compose(s, m);
      auto L = ladder_search(RankedSequence::of(s), RankedSequence::of(t), 3, 4);
      ASSERT_TRUE(L) << render_sequence(s) << " m=" << m;
      EXPECT_TRUE(verify_ladder(RankedSequence::of(s), RankedSequence::of(t), *L));
      EXPECT_EQ(inverse_limit_mult(s), inverse_limit_mult(t));
    }
}

TEST(InverseLimit, MatchesThreadSearch) {
  EXPECT_EQ(inverse_limit_mult(seq({}, {1})), InverseLimit::Z);
  EXPECT_EQ(inverse_limit_mult(seq({}, {2})), InverseLimit::Zero);
  EXPECT_EQ(inverse_limit_mult(seq({}, {0})), InverseLimit::Zero);
  for (const auto& s : small_family())
    EXPECT_EQ(inverse_limit_mult(s) == InverseLimit::Z, oracle::nonzero_thread(s))
        << render_sequence(s);
}

TEST(ImagesStabilize, Examples) {
  AbelianSequence ones{{1, 1}, {scalar(1, 1)}, {scalar(1, 1)}};
  auto r = images_stabilize(ones, 1, 6);
  EXPECT_TRUE(r.stabilized);
  EXPECT_EQ(r.at, 2u);

  AbelianSequence twos{{1, 1}, {scalar(1, 2)}, {scalar(1, 2)}};
  for (std::size_t h = 2; h <= 20; h += 3) EXPECT_FALSE(images_stabilize(twos, 1, h).stabilized);

  AbelianSequence ids{{2, 2}, {scalar(2, 1)}, {scalar(2, 1)}};
  auto q = images_stabilize(ids, 1, 5);
  EXPECT_TRUE(q.stabilized);
  EXPECT_EQ(q.at, 2u);
}

TEST(ImagesStabilize, AgreesWithSemistabilityOnFamily) {
  for (const auto& s : small_family()) {
    AbelianSequence a;
    a.ranks = {1};
    for (std::size_t i = 1; i <= s.prefix.size(); ++i) {
      a.ranks.push_back(1);
      a.bonds.push_back(scalar(1, static_cast<int>(s.label(i))));
    }
    for (const auto& k : s.cycle) a.tail.push_back(scalar(1, static_cast<int>(k)));
    bool every = true;
    for (std::size_t i = 1; i <= 4; ++i) every = every && images_stabilize(a, i, 14).stabilized;
    EXPECT_EQ(every, classify_mult(s).semistable) << render_sequence(s);
  }
}

TEST(ImagesStabilize, DimensionErrors) {
  AbelianSequence bad{{1, 2}, {scalar(1, 1)}, {}};
  EXPECT_THROW(images_stabilize(bad, 0, 1), DomainError);
  AbelianSequence ok{{1, 1}, {scalar(1, 1)}, {}};
  EXPECT_THROW(images_stabilize(ok, 0, 3), DomainError);
  EXPECT_THROW(images_stabilize(ok, 1, 1), DomainError);
}
