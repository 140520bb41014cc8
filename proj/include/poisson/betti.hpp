#ifndef POISSON_BETTI_HPP
#define POISSON_BETTI_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "poisson/complex.hpp"

namespace poisson {

/// Rectangle of (degree, label) cells to compute.
struct Window {
  std::int64_t min_label = -8;
  std::int64_t max_label = 8;
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;

  static Window symmetric(std::int64_t max_label, std::size_t nvars) {
    return {-max_label, max_label, 0, nvars};
  }
  friend bool operator==(const Window&, const Window&) = default;
};

struct BettiCell {
  std::size_t dim = 0;
  /// Size of the slice basis; kept for Euler-characteristic accounting.
  std::size_t chains = 0;
  friend bool operator==(const BettiCell&, const BettiCell&) = default;
};

/// Homology dimensions per (degree p, slice label u).
struct BettiTable {
  Side side = Side::homology;
  std::map<std::pair<std::size_t, std::int64_t>, BettiCell> cells;
  std::string structure_digest;
  std::string twist = "none";
  Window window;

  std::size_t dim(std::size_t p, std::int64_t u) const;
  /// Sum of dim over every label in the window.
  std::size_t total(std::size_t p) const;

  friend bool operator==(const BettiTable&, const BettiTable&) = default;
};

/// dim H at (p, u) = |slice(p, u)| - rank(out of p) - rank(into p), with all
/// three matrices taken in the same labelled slice, so nothing is truncated.
BettiTable betti(const PoissonStructure& P, const PDerivation& sigma, Side side,
                 const Window& window, std::string twist_name = "none");

/// sum_p (-1)^p |slice| == sum_p (-1)^p dim H for each label whose degrees
/// 0..n are all present in the table. Returns the first offending label.
std::optional<std::int64_t> euler_mismatch(const BettiTable& table, std::size_t nvars);

}  // namespace poisson

#endif  // POISSON_BETTI_HPP
