#include <gtest/gtest.h>

#include "poisson/duality.hpp"
#include "support.hpp"

using namespace poisson;
using support::make;
using support::plane;

TEST(Duality, SymplecticPlane) {
  const auto r = duality_check(plane("1"), Window::symmetric(6, 2));
  EXPECT_EQ(r.verdict, Verdict::pass) << r.message;
  ASSERT_TRUE(r.shift.has_value());
  EXPECT_EQ(*r.shift, -2);
  EXPECT_EQ(weight_shift(r), 2);
  EXPECT_TRUE(r.unimodular);
  EXPECT_EQ(r.twist, "none");
  EXPECT_EQ(r.homology.twist, "modular");
  // HP^0 is the constants, HP_2 is one class at label -2.
  EXPECT_EQ(r.cohomology.dim(0, 0), 1u);
  EXPECT_EQ(r.homology.dim(2, -2), 1u);
}

TEST(Duality, ZeroBracketShiftIsTotalWeight) {
  const auto r = duality_check(make({"x", "y"}, {1, 2}, {}), Window::symmetric(6, 2));
  EXPECT_EQ(r.verdict, Verdict::pass) << r.message;
  EXPECT_EQ(r.shift, 3);
  EXPECT_EQ(weight_shift(r), 3);
}

TEST(Duality, LogCanonicalNeedsModularTwist) {
  const auto L = plane("x*y");
  const auto r = duality_check(L, Window::symmetric(6, 2));
  EXPECT_EQ(r.verdict, Verdict::pass) << r.message;
  EXPECT_EQ(r.shift, 2);
  EXPECT_FALSE(r.untwisted_homology.has_value());

  // Pairing HP^* with untwisted homology breaks duality here.
  const Window w = Window::symmetric(6, 2);
  const auto coh = betti(L, PDerivation::zero(2, 0), Side::cohomology, w);
  const auto hom = betti(L, PDerivation::zero(2, 0), Side::homology, w);
  bool all_match = true;
  for (std::size_t i = 0; i <= 2; ++i) {
    for (std::int64_t u = -4; u <= 4; ++u) all_match &= coh.dim(i, u) == hom.dim(2 - i, u + 2);
  }
  EXPECT_FALSE(all_match);
}

TEST(Duality, UnimodularUntwistedComparison) {
  const auto r = duality_check(support::from_corpus("jacobian-xyz"), Window::symmetric(4, 3));
  EXPECT_EQ(r.verdict, Verdict::pass) << r.message;
  ASSERT_TRUE(r.untwisted_equal.has_value());
  EXPECT_TRUE(*r.untwisted_equal);
}

TEST(Duality, TwistedInput) {
  const auto L = plane("x*y");
  const PDerivation tau({L.parse("x"), L.parse("0")}, 0);
  const auto r = duality_check(L, tau, Window::symmetric(6, 2), "tau");
  EXPECT_EQ(r.verdict, Verdict::pass) << r.message;
  EXPECT_EQ(r.twist, "tau");
  EXPECT_EQ(r.homology.twist, "tau+modular");
}

TEST(Duality, InconclusiveWithoutNonzeroCells) {
  // Labels far below anything the cubic structure reaches.
  const auto P = support::from_corpus("cubic-1");
  const auto r = duality_check(P, modular_derivation(P) - modular_derivation(P),
                               Window{-20, -18, 0, 3});
  EXPECT_EQ(r.verdict, Verdict::inconclusive);
}

TEST(Duality, DefaultWindow) {
  EXPECT_EQ(default_duality_window(2), Window::symmetric(8, 2));
  EXPECT_EQ(default_duality_window(3), Window::symmetric(6, 3));
}

TEST(Duality, NamesRoundTrip) {
  for (auto v : {Verdict::pass, Verdict::fail, Verdict::inconclusive}) {
    EXPECT_EQ(verdict_from_string(to_string(v)), v);
  }
  for (auto f : {Family::diagonal, Family::jacobian, Family::random}) {
    EXPECT_EQ(family_from_string(to_string(f)), f);
  }
  EXPECT_THROW(family_from_string("spiral"), std::invalid_argument);
}

TEST(Sweep, EmptyCount) {
  SweepConfig c;
  c.count = 0;
  const auto r = sweep(c);
  EXPECT_EQ(r.attempted, 0u);
  EXPECT_TRUE(r.reports.empty());
}

TEST(Sweep, SeededRunsAreIdentical) {
  SweepConfig c;
  c.count = 4;
  c.seed = 99;
  c.max_label = 3;
  const auto a = sweep(c), b = sweep(c);
  EXPECT_EQ(a.reports, b.reports);
  c.seed = 100;
  const auto other = sweep(c);
  std::vector<std::string> ids_a, ids_o;
  for (const auto& r : a.reports) ids_a.push_back(r.structure_id);
  for (const auto& r : other.reports) ids_o.push_back(r.structure_id);
  EXPECT_NE(ids_a, ids_o);
}

struct FamilyCase {
  Family family;
  std::int64_t degree;
  std::vector<std::int64_t> weights;
};

class SweepFamilies : public ::testing::TestWithParam<FamilyCase> {};

TEST_P(SweepFamilies, EveryValidCandidatePasses) {
  SweepConfig c;
  c.family = GetParam().family;
  c.degree = GetParam().degree;
  c.weights = GetParam().weights;
  c.count = 6;
  c.seed = 7;
  c.max_label = 3;
  const auto r = sweep(c);
  EXPECT_EQ(r.attempted, 6u);
  EXPECT_EQ(r.rejected + r.reports.size(), 6u);
  for (const auto& rep : r.reports) {
    EXPECT_NE(rep.verdict, Verdict::fail) << rep.structure_id << ": " << rep.message;
  }
}

INSTANTIATE_TEST_SUITE_P(Families, SweepFamilies,
                         ::testing::Values(FamilyCase{Family::diagonal, 0, {}},
                                           FamilyCase{Family::jacobian, 3, {}},
                                           FamilyCase{Family::jacobian, 4, {1, 1, 2}},
                                           FamilyCase{Family::random, 0, {}},
                                           FamilyCase{Family::random, -1, {1, 1, 1}}));

class CorpusDuality : public ::testing::TestWithParam<std::string> {};

TEST_P(CorpusDuality, PassesOnSmallWindow) {
  const auto P = support::from_corpus(GetParam());
  const auto r = duality_check(P, Window::symmetric(P.nvars() <= 2 ? 6 : 3, P.nvars()));
  EXPECT_NE(r.verdict, Verdict::fail) << r.message;
  if (r.shift) {
    std::int64_t total = 0;
    for (auto w : P.weights()) total += w;
    EXPECT_EQ(weight_shift(r), total);
  }
}

INSTANTIATE_TEST_SUITE_P(Corpus, CorpusDuality,
                         ::testing::Values("symplectic-plane", "log-canonical", "diagonal-3",
                                           "jacobian-xyz", "cubic-0", "cubic-neg2", "zero-2"),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (auto& ch : s) ch = std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
                           return s;
                         });

TEST(Duality, NarrowWindowIsInconclusiveRatherThanFailing) {
  // With |u| <= 1 the partners of the nonzero cells under the true shift 3
  // fall outside the window, so nothing can be confirmed or refuted.
  const auto r = duality_check(support::from_corpus("zero-3"), Window::symmetric(1, 3));
  EXPECT_EQ(r.verdict, Verdict::inconclusive) << r.message;
}
