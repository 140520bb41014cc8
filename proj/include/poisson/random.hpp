#ifndef POISSON_RANDOM_HPP
#define POISSON_RANDOM_HPP

#include <cstdint>
#include <random>
#include <span>

#include "poisson/polynomial.hpp"

namespace poisson {

/// Seeded generator whose draws depend only on the seed (the standard
/// distributions are implementation-defined, so they are avoided here).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return (engine_() >> 11) & 1U; }
  /// Nonzero integer in [-bound, bound].
  std::int64_t nonzero(std::int64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Up to `max_terms` terms of total degree <= max_degree with integer
/// coefficients in [-coeff_bound, coeff_bound]. May be zero.
Polynomial random_polynomial(Rng& rng, std::size_t nvars, std::uint32_t max_degree,
                             std::int64_t coeff_bound, std::size_t max_terms = 4);

/// Random combination of the monomials of weighted degree w.
Polynomial random_homogeneous(Rng& rng, std::span<const std::int64_t> weights, std::int64_t w,
                              std::int64_t coeff_bound, double density = 0.5);

}  // namespace poisson

#endif  // POISSON_RANDOM_HPP
