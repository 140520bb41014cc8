#ifndef POISSON_TESTS_SUPPORT_HPP
#define POISSON_TESTS_SUPPORT_HPP

// Generators and independent oracles shared by the test binaries.

#include <string>
#include <tuple>
#include <vector>

#include "poisson/corpus.hpp"
#include "poisson/io.hpp"
#include "poisson/random.hpp"
#include "poisson/structure.hpp"

namespace support {

using namespace poisson;

inline std::vector<std::string> names(std::size_t n) {
  static const char* base[] = {"x", "y", "z", "w"};
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(base[i]);
  return v;
}

/// Entries as (i, j, text) with i < j.
inline PoissonStructure make(std::vector<std::string> vars, std::vector<std::int64_t> weights,
                             const std::vector<std::tuple<std::size_t, std::size_t, std::string>>& es,
                             std::optional<std::int64_t> degree = std::nullopt) {
  std::vector<BracketEntry> entries;
  for (const auto& [i, j, text] : es) entries.push_back({i, j, parse_polynomial(text, vars)});
  return PoissonStructure::create(std::move(vars), std::move(weights), entries, degree);
}

inline PoissonStructure plane(const std::string& bracket) {
  return make({"x", "y"}, {1, 1}, {{0, 1, bracket}});
}

inline PoissonStructure from_corpus(const std::string& name) {
  return build_structure(parse_structure_file(find_corpus(name)->text));
}

inline std::vector<std::pair<std::string, PoissonStructure>> corpus_structures() {
  std::vector<std::pair<std::string, PoissonStructure>> out;
  for (const auto& e : corpus()) out.emplace_back(e.name, from_corpus(e.name));
  return out;
}

/// Jacobian structure {x,y} = phi_z, {y,z} = phi_x, {z,x} = phi_y.
inline PoissonStructure jacobian(const Polynomial& phi, std::vector<std::int64_t> weights,
                                 std::int64_t phi_weight) {
  std::int64_t sum = 0;
  for (auto w : weights) sum += w;
  return PoissonStructure::create(names(3), std::move(weights),
                                  {{0, 1, differentiate(phi, 2)},
                                   {1, 2, differentiate(phi, 0)},
                                   {0, 2, -differentiate(phi, 1)}},
                                  phi_weight - sum);
}

/// A random structure that satisfies Jacobi by construction: a plane
/// bracket (any bracket on two variables), a diagonal quadratic bracket or
/// a Jacobian bracket on three variables.
inline PoissonStructure random_valid_structure(Rng& rng) {
  switch (rng.uniform(0, 2)) {
    case 0: {
      std::vector<std::int64_t> w{rng.uniform(1, 2), rng.uniform(1, 3)};
      const std::int64_t d = rng.uniform(-(w[0] + w[1]), 2);
      const Polynomial f = random_homogeneous(rng, w, w[0] + w[1] + d, 4, 0.7);
      return PoissonStructure::create(names(2), w, {{0, 1, f}}, d);
    }
    case 1: {
      std::vector<BracketEntry> es;
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
          Monomial m(3);
          m[i] = m[j] = 1;
          es.push_back({i, j, Polynomial::term(m, Rational(rng.uniform(-4, 4)))});
        }
      }
      std::vector<std::int64_t> w{rng.uniform(1, 2), rng.uniform(1, 2), rng.uniform(1, 2)};
      return PoissonStructure::create(names(3), w, es, 0);
    }
    default: {
      std::vector<std::int64_t> w{rng.uniform(1, 2), rng.uniform(1, 2), rng.uniform(1, 2)};
      const std::int64_t D = rng.uniform(2, 5);
      return jacobian(random_homogeneous(rng, w, D, 4, 0.6), w, D);
    }
  }
}

/// Independent evaluation of f at a rational point.
inline Rational evaluate(const Polynomial& f, const std::vector<Rational>& point) {
  Rational sum = 0;
  for (const auto& [m, c] : f.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      for (Exponent e = 0; e < m[i]; ++e) t *= point[i];
    }
    sum += t;
  }
  return sum;
}

inline std::vector<Rational> random_point(Rng& rng, std::size_t n) {
  std::vector<Rational> p;
  for (std::size_t i = 0; i < n; ++i) {
    p.emplace_back(rng.uniform(-9, 9), rng.uniform(1, 5));
    p.back().canonicalize();
  }
  return p;
}

/// Textbook dense Gaussian elimination over Q; the rank oracle.
inline std::size_t dense_rank(const SparseMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (const auto& [rc, v] : m.entries()) a[rc.first][rc.second] = v;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < m.cols(); ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

/// Number of monomials in n variables of total degree k (all weights 1).
inline std::size_t monomial_count(std::size_t n, std::int64_t k) {
  if (k < 0) return 0;
  // C(k + n - 1, n - 1)
  std::size_t num = 1, den = 1;
  for (std::size_t i = 1; i < n; ++i) {
    num *= static_cast<std::size_t>(k) + i;
    den *= i;
  }
  return num / den;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace support

#endif  // POISSON_TESTS_SUPPORT_HPP
