#include <gtest/gtest.h>

#include "poisson/betti.hpp"
#include "support.hpp"

using namespace poisson;
using support::plane;

namespace {

ChainElement chain(const PoissonStructure& P, std::size_t p,
                   std::vector<std::pair<std::string, Subset>> terms) {
  ChainElement c{p, {}};
  for (const auto& [f, S] : terms) c.add(P.parse(f), S);
  return c;
}

CochainElement cochain(const PoissonStructure& P, std::size_t p,
                       std::vector<std::pair<Subset, std::string>> comps) {
  CochainElement f{p, {}};
  for (const auto& [T, g] : comps) f.add(T, P.parse(g));
  return f;
}

PDerivation zero_twist(const PoissonStructure& P) { return PDerivation::zero(P.nvars(), P.degree()); }

std::vector<PDerivation> standard_twists(const PoissonStructure& P) {
  const auto d = modular_derivation(P);
  return {zero_twist(P), d, Rational(2) * d};
}

ChainElement random_chain(Rng& rng, std::size_t n, std::size_t p) {
  ChainElement c{p, {}};
  for (const auto& S : subsets_of_size(n, p)) c.add(random_polynomial(rng, n, 3, 5, 3), S);
  return c;
}

CochainElement random_cochain(Rng& rng, std::size_t n, std::size_t p) {
  CochainElement f{p, {}};
  for (const auto& T : subsets_of_size(n, p)) f.add(T, random_polynomial(rng, n, 3, 5, 3));
  return f;
}

}  // namespace

TEST(Subsets, LexOrderAndCounts) {
  EXPECT_EQ(subsets_of_size(3, 2), (std::vector<Subset>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(subsets_of_size(3, 0), (std::vector<Subset>{{}}));
  EXPECT_TRUE(subsets_of_size(2, 3).empty());
  EXPECT_EQ(subsets_of_size(5, 2).size(), 10u);
}

TEST(Boundary, Examples) {
  const auto S = plane("1");
  EXPECT_TRUE(homology_boundary(S, zero_twist(S), chain(S, 2, {{"1", {0, 1}}})).is_zero());
  EXPECT_EQ(homology_boundary(S, zero_twist(S), chain(S, 1, {{"x", {1}}})), chain(S, 0, {{"1", {}}}));
  const auto L = plane("x*y");
  EXPECT_TRUE(homology_boundary(L, modular_derivation(L), chain(L, 2, {{"1", {0, 1}}})).is_zero());
  EXPECT_TRUE(homology_boundary(S, zero_twist(S), chain(S, 0, {{"x", {}}})).is_zero());
}

TEST(Boundary, TwistEntersAsRightAction) {
  // d(m dx_i) = {m, x_i} + sigma(x_i) m
  const auto L = plane("x*y");
  const auto d = modular_derivation(L);
  // {y, x} + x*y = 0
  EXPECT_TRUE(homology_boundary(L, d, chain(L, 1, {{"y", {0}}})).is_zero());
  EXPECT_EQ(homology_boundary(L, d, chain(L, 1, {{"x", {0}}})), chain(L, 0, {{"x^2", {}}}));
}

TEST(Coboundary, Examples) {
  const auto S = plane("1");
  EXPECT_EQ(cohomology_coboundary(S, zero_twist(S), cochain(S, 0, {{{}, "x"}})),
            cochain(S, 1, {{{1}, "-1"}}));
  EXPECT_TRUE(cohomology_coboundary(S, zero_twist(S), cochain(S, 0, {{{}, "7"}})).is_zero());
  const auto L = plane("x*y");
  EXPECT_EQ(cohomology_coboundary(L, zero_twist(L), cochain(L, 0, {{{}, "x"}})),
            cochain(L, 1, {{{1}, "-x*y"}}));
  EXPECT_TRUE(cohomology_coboundary(L, zero_twist(L), cochain(L, 2, {{{0, 1}, "x"}})).is_zero());
}

TEST(Coboundary, DegreeZeroIsNegatedTwistedHamiltonian) {
  // The leading sign (-1)^{0+1} makes (d f)(a) = -{f, a}_sigma.
  static_assert(kCoboundaryLeadingSignIPlusOne);
  Rng rng(5);
  for (const auto& [name, P] : support::corpus_structures()) {
    for (const auto& sigma : standard_twists(P)) {
      for (int t = 0; t < 5; ++t) {
        const Polynomial f = random_polynomial(rng, P.nvars(), 3, 5);
        const auto df = cohomology_coboundary(P, sigma, CochainElement{0, {{Subset{}, f}}});
        for (std::uint32_t i = 0; i < P.nvars(); ++i) {
          const Polynomial want = -(bracket_with_generator(P, f, i) + sigma[i] * f);
          const Polynomial* got = df.component({i});
          ASSERT_EQ(got ? *got : P.zero(), want) << name;
        }
      }
    }
  }
}

TEST(Slices, Examples) {
  const auto S = plane("1");
  // Homology degree 2 at label -2 is spanned by 1 (x) dx^dy.
  const auto top = slice_basis(S, Side::homology, 2, -2);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top.elements[0], (BasisElement{Monomial{0, 0}, Subset{0, 1}}));
  EXPECT_EQ(slice_basis(S, Side::homology, 3, 0).size(), 0u);
  EXPECT_EQ(slice_basis(S, Side::cohomology, 3, 0).size(), 0u);

  const auto Z = support::make({"x", "y"}, {1, 1}, {});
  for (std::int64_t u = -3; u <= 5; ++u) {
    EXPECT_EQ(slice_basis(Z, Side::cohomology, 2, u).size(), support::monomial_count(2, u + 2));
  }
}

TEST(Slices, OrderIsGrlexThenSubset) {
  const auto Z = support::make({"x", "y", "z"}, {1, 1, 1}, {});
  const auto b = slice_basis(Z, Side::homology, 1, 2);
  for (std::size_t k = 1; k < b.size(); ++k) {
    const auto& a = b.elements[k - 1];
    const auto& c = b.elements[k];
    ASSERT_TRUE(GrlexGreater{}(c.monomial, a.monomial) ||
                (a.monomial == c.monomial && a.subset < c.subset));
  }
  EXPECT_EQ(b.index_of(b.elements[3]), 3);
  EXPECT_EQ(b.index_of({Monomial{5, 0, 0}, Subset{0}}), -1);
}

TEST(Assemble, ZeroBracketGivesZeroMatrices) {
  const auto Z = support::make({"x", "y"}, {1, 1}, {});
  for (std::int64_t u = 0; u <= 4; ++u) {
    for (std::size_t p = 0; p <= 2; ++p) {
      for (Side side : {Side::homology, Side::cohomology}) {
        const auto m = assemble_matrix(Z, zero_twist(Z), side, p, u);
        EXPECT_TRUE(m.is_zero());
        EXPECT_EQ(m.cols(), slice_basis(Z, side, p, u).size());
        const std::size_t q = side == Side::homology ? p - 1 : p + 1;
        const bool has_target = side == Side::homology ? p >= 1 : p + 1 <= 2;
        EXPECT_EQ(m.rows(), has_target ? slice_basis(Z, side, q, u).size() : 0u);
      }
    }
  }
}

TEST(Assemble, SymplecticEntry) {
  const auto S = plane("1");
  // x (x) dy sits in homology degree 1 at label 0 and maps to 1.
  const auto src = slice_basis(S, Side::homology, 1, 0);
  const auto tgt = slice_basis(S, Side::homology, 0, 0);
  const auto m = assemble_matrix(S, zero_twist(S), Side::homology, 1, 0);
  const auto col = src.index_of({Monomial{1, 0}, Subset{1}});
  const auto row = tgt.index_of({Monomial{0, 0}, Subset{}});
  ASSERT_GE(col, 0);
  ASSERT_GE(row, 0);
  EXPECT_EQ(m.at(static_cast<std::size_t>(row), static_cast<std::size_t>(col)), 1);
}

TEST(Assemble, RejectsInvalidInputs) {
  const auto vars = support::names(3);
  const auto bad = PoissonStructure::create_unchecked(
      vars, {1, 1, 1},
      {{0, 1, parse_polynomial("y", vars)}, {1, 2, parse_polynomial("z", vars)},
       {0, 2, parse_polynomial("-x", vars)}});
  EXPECT_THROW(assemble_matrix(bad, PDerivation::zero(3, -1), Side::homology, 1, 0),
               std::invalid_argument);
  const auto L = plane("x*y");
  EXPECT_THROW(assemble_matrix(L, PDerivation::zero(2, 1), Side::homology, 1, 0),
               std::invalid_argument);
}

// ---- d^2 = 0 -----------------------------------------------------------------

class SquareZero : public ::testing::Test {
 protected:
  static void expect_square_zero(const PoissonStructure& P, const PDerivation& sigma,
                                 std::int64_t max_label, const std::string& what) {
    const std::size_t n = P.nvars();
    for (std::int64_t u = -max_label; u <= max_label; ++u) {
      for (std::size_t p = 2; p <= n; ++p) {
        const auto a = assemble_matrix(P, sigma, Side::homology, p, u);
        const auto b = assemble_matrix(P, sigma, Side::homology, p - 1, u);
        ASSERT_TRUE((b * a).is_zero()) << what << " homology p=" << p << " u=" << u;
      }
      for (std::size_t p = 0; p + 2 <= n; ++p) {
        const auto a = assemble_matrix(P, sigma, Side::cohomology, p, u);
        const auto b = assemble_matrix(P, sigma, Side::cohomology, p + 1, u);
        ASSERT_TRUE((b * a).is_zero()) << what << " cohomology p=" << p << " u=" << u;
      }
    }
  }
};

TEST_F(SquareZero, CorpusSlicesWithStandardTwists) {
  for (const auto& [name, P] : support::corpus_structures()) {
    for (const auto& sigma : standard_twists(P)) expect_square_zero(P, sigma, 8, name);
  }
}

TEST_F(SquareZero, RandomStructuresSlices) {
  Rng rng(99);
  for (int s = 0; s < 25; ++s) {
    const auto P = support::random_valid_structure(rng);
    for (const auto& sigma : standard_twists(P)) expect_square_zero(P, sigma, 5, P.digest());
  }
}

TEST_F(SquareZero, RandomInhomogeneousElements) {
  // The element-level differentials square to zero without any slicing.
  Rng rng(123);
  for (int s = 0; s < 30; ++s) {
    const auto P = support::random_valid_structure(rng);
    const std::size_t n = P.nvars();
    for (const auto& sigma : standard_twists(P)) {
      for (std::size_t p = 2; p <= n; ++p) {
        const auto c = random_chain(rng, n, p);
        ASSERT_TRUE(homology_boundary(P, sigma, homology_boundary(P, sigma, c)).is_zero());
      }
      for (std::size_t p = 0; p + 2 <= n; ++p) {
        const auto f = random_cochain(rng, n, p);
        ASSERT_TRUE(cohomology_coboundary(P, sigma, cohomology_coboundary(P, sigma, f)).is_zero());
      }
    }
  }
}

TEST_F(SquareZero, NonPoissonTwistBreaksIt) {
  // Guards against a vacuous suite: twisting by a derivation that is not
  // Poisson gives d(d(1 dx^dy)) = -y^2 by hand.
  const auto L = plane("x*y");
  const PDerivation bad({L.parse("y"), L.parse("0")}, 0);
  ASSERT_FALSE(is_poisson_derivation(L, bad));
  const ChainElement c = chain(L, 2, {{"1", {0, 1}}});
  EXPECT_EQ(homology_boundary(L, bad, homology_boundary(L, bad, c)), chain(L, 0, {{"-y^2", {}}}));
}

// ---- Betti tables --------------------------------------------------------------

TEST(Betti, SymplecticPlaneOracle) {
  const auto S = plane("1");
  const auto hom = betti(S, zero_twist(S), Side::homology, Window::symmetric(8, 2));
  EXPECT_EQ(hom.total(0), 0u);
  EXPECT_EQ(hom.total(1), 0u);
  EXPECT_EQ(hom.total(2), 1u);
  EXPECT_EQ(hom.dim(2, -2), 1u);
  const auto coh = betti(S, zero_twist(S), Side::cohomology, Window::symmetric(8, 2));
  EXPECT_EQ(coh.total(0), 1u);
  EXPECT_EQ(coh.total(1), 0u);
  EXPECT_EQ(coh.total(2), 0u);
  EXPECT_EQ(coh.dim(0, 0), 1u);
}

TEST(Betti, ZeroBracketDimsAreSliceSizes) {
  const auto Z = support::make({"x", "y", "z"}, {1, 1, 1}, {});
  const auto hom = betti(Z, zero_twist(Z), Side::homology, Window::symmetric(5, 3));
  const auto coh = betti(Z, zero_twist(Z), Side::cohomology, Window::symmetric(5, 3));
  for (std::int64_t u = -5; u <= 5; ++u) {
    for (std::size_t p = 0; p <= 3; ++p) {
      // chains: weight(m) = u - |S|, cochains: weight(m) = u + |T|
      const auto k = static_cast<std::int64_t>(p);
      EXPECT_EQ(hom.dim(p, u), support::binomial(3, p) * support::monomial_count(3, u - k));
      EXPECT_EQ(coh.dim(p, u), support::binomial(3, p) * support::monomial_count(3, u + k));
    }
  }
}

TEST(Betti, LogCanonicalLowLabels) {
  // Hand computation for {x,y} = xy: Casimirs are the constants, and
  // HP^1 at label 0 is spanned by the Euler-type fields x d_x and y d_y.
  const auto L = plane("x*y");
  const auto coh = betti(L, zero_twist(L), Side::cohomology, Window::symmetric(3, 2));
  EXPECT_EQ(coh.dim(0, 0), 1u);
  EXPECT_EQ(coh.dim(0, 1), 0u);
  EXPECT_EQ(coh.dim(1, 0), 2u);
  EXPECT_EQ(coh.total(0), 1u);
}

TEST(Betti, EulerCharacteristicAccounting) {
  for (const auto& [name, P] : support::corpus_structures()) {
    for (const auto& sigma : standard_twists(P)) {
      for (Side side : {Side::homology, Side::cohomology}) {
        const auto t = betti(P, sigma, side, Window::symmetric(6, P.nvars()));
        EXPECT_FALSE(euler_mismatch(t, P.nvars()).has_value()) << name;
      }
    }
  }
}

TEST(Betti, RecordsMetadata) {
  const auto L = plane("x*y");
  const auto t = betti(L, modular_derivation(L), Side::homology, {-2, 3, 1, 2}, "modular");
  EXPECT_EQ(t.twist, "modular");
  EXPECT_EQ(t.structure_digest, L.digest());
  EXPECT_EQ(t.cells.size(), 12u);
  EXPECT_EQ(t.cells.count({0, 0}), 0u);
}
