#include "poisson/random.hpp"

#include "poisson/complex.hpp"

namespace poisson {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(engine_() % span);
}

std::int64_t Rng::nonzero(std::int64_t bound) {
  const std::int64_t v = uniform(1, bound);
  return coin() ? v : -v;
}

Polynomial random_polynomial(Rng& rng, std::size_t nvars, std::uint32_t max_degree,
                             std::int64_t coeff_bound, std::size_t max_terms) {
  Polynomial f(nvars);
  const auto terms = rng.uniform(0, static_cast<std::int64_t>(max_terms));
  for (std::int64_t t = 0; t < terms; ++t) {
    Monomial m(nvars);
    const auto deg = rng.uniform(0, max_degree);
    for (std::int64_t d = 0; d < deg; ++d) {
      m[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(nvars) - 1))] += 1;
    }
    f.add_term(m, Rational(rng.nonzero(coeff_bound)));
  }
  return f;
}

Polynomial random_homogeneous(Rng& rng, std::span<const std::int64_t> weights, std::int64_t w,
                              std::int64_t coeff_bound, double density) {
  Polynomial f(weights.size());
  const auto threshold = static_cast<std::uint64_t>(density * 1024.0);
  for (const auto& m : monomials_of_weight(weights, w)) {
    if (rng.next() % 1024 < threshold) f.add_term(m, Rational(rng.nonzero(coeff_bound)));
  }
  return f;
}

}  // namespace poisson
