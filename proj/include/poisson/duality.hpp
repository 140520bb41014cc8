#ifndef POISSON_DUALITY_HPP
#define POISSON_DUALITY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poisson/betti.hpp"
#include "poisson/random.hpp"

namespace poisson {

// Twisted Poincare duality for a polynomial Poisson algebra A in n variables
// with modular derivation delta:
//
//   HP^i(A^tau) = HP_{n-i}(A^{tau+delta}).
//
// The graded refinement pairs the cohomology cell (i, u) with the homology
// cell (n - i, u + W) for one integer label shift W. A cohomology cell has
// cochain weight u + i*d and its partner has chain weight u + W - (n - i)*d,
// so the two weights differ by W - n*d in every degree.
//
// W is found from the tables: every shift pairing some in-window cells is
// tried, and the one with no mismatches and the most nonzero matches wins.
// A window too narrow to confirm or refute the expected shift gives
// "inconclusive" rather than "fail".

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct DualityCell {
  std::size_t degree = 0;  // cohomological degree i
  std::int64_t label = 0;  // cohomology label u
  std::int64_t partner_label = 0;  // homology label, degree n - i
  std::size_t cohomology_dim = 0;
  std::size_t homology_dim = 0;
  bool match = true;
  friend bool operator==(const DualityCell&, const DualityCell&) = default;
};

struct DualityReport {
  std::string structure_id;
  std::size_t nvars = 0;
  std::int64_t degree = 0;
  bool unimodular = false;
  std::string twist = "none";
  BettiTable cohomology;  // of A^tau
  BettiTable homology;  // of A^{tau+delta}
  /// Uniform label shift W, or nullopt ("no uniform shift").
  std::optional<std::int64_t> shift;
  /// Pairs compared under `shift` (or under the closest candidate on failure).
  std::vector<DualityCell> cells;
  Verdict verdict = Verdict::inconclusive;
  std::string message;
  /// Unimodular, untwisted case only: the homology table of A itself, and
  /// whether it equals the table of A^delta.
  std::optional<BettiTable> untwisted_homology;
  std::optional<bool> untwisted_equal;

  friend bool operator==(const DualityReport&, const DualityReport&) = default;
};

/// Chain weight minus cochain weight of every matched pair: W - n*d.
std::optional<std::int64_t> weight_shift(const DualityReport& r);

/// Computes both tables over the window and matches them. The window's
/// degree range applies to the cohomology side; the homology side uses the
/// complementary degrees.
DualityReport duality_check(const PoissonStructure& P, const PDerivation& tau,
                            const Window& window, std::string twist_name = "none");
DualityReport duality_check(const PoissonStructure& P, const Window& window);

/// Default window: labels |u| <= 8 for n <= 2 and |u| <= 6 otherwise, all degrees.
Window default_duality_window(std::size_t nvars);

enum class Family { diagonal, jacobian, random };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct SweepConfig {
  Family family = Family::diagonal;
  std::size_t nvars = 3;
  /// Empty means all weights 1.
  std::vector<std::int64_t> weights;
  std::int64_t coeff_bound = 3;
  /// Bracket degree d for the random family; weighted degree of the
  /// potential for the jacobian family (n = 3). Ignored for diagonal.
  std::int64_t degree = 0;
  std::size_t count = 10;
  std::uint64_t seed = 1;
  std::int64_t max_label = 4;
};

struct SweepResult {
  std::size_t attempted = 0;
  std::size_t rejected = 0;
  std::vector<DualityReport> reports;
};

/// Generates `count` candidates, discards those failing Jacobi and runs
/// duality_check (tau = 0) on the rest, in generation order.
SweepResult sweep(const SweepConfig& config);

/// The candidate structure a sweep draws at the given generation step.
PoissonStructure sweep_candidate(const SweepConfig& config, Rng& rng);

}  // namespace poisson

#endif  // POISSON_DUALITY_HPP
