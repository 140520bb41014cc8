#include "poisson/complex.hpp"

#include <algorithm>

namespace poisson {
namespace {

void require_context(const PoissonStructure& P, const PDerivation& sigma) {
  if (sigma.nvars() != P.nvars()) throw std::invalid_argument("twist context mismatch");
}

Subset erase_at(const Subset& s, std::size_t pos) {
  Subset out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != pos) out.push_back(s[i]);
  }
  return out;
}

Subset erase_two(const Subset& s, std::size_t a, std::size_t b) {
  Subset out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != a && i != b) out.push_back(s[i]);
  }
  return out;
}

/// Inserts k into the sorted rest, returning the sign (-1)^{#rest below k},
/// or 0 when k is already present.
int insert_sorted(const Subset& rest, std::uint32_t k, Subset& out) {
  out.clear();
  int below = 0;
  bool placed = false;
  for (auto r : rest) {
    if (r == k) return 0;
    if (r < k) {
      ++below;
    } else if (!placed) {
      out.push_back(k);
      placed = true;
    }
    out.push_back(r);
  }
  if (!placed) out.push_back(k);
  return (below % 2 == 0) ? 1 : -1;
}

void enumerate_monomials(std::span<const std::int64_t> weights, std::size_t var,
                         std::int64_t remaining, Monomial& cur, std::vector<Monomial>& out) {
  if (var + 1 == weights.size()) {
    if (remaining % weights[var] == 0) {
      cur[var] = static_cast<Exponent>(remaining / weights[var]);
      out.push_back(cur);
      cur[var] = 0;
    }
    return;
  }
  for (std::int64_t e = 0; e * weights[var] <= remaining; ++e) {
    cur[var] = static_cast<Exponent>(e);
    enumerate_monomials(weights, var + 1, remaining - e * weights[var], cur, out);
  }
  cur[var] = 0;
}

std::int64_t subset_weight(const PoissonStructure& P, const Subset& s) {
  std::int64_t w = 0;
  for (auto i : s) w += P.weights()[i];
  return w;
}

}  // namespace

std::string to_string(Side side) { return side == Side::homology ? "hom" : "coh"; }

Side side_from_string(const std::string& s) {
  if (s == "hom" || s == "homology") return Side::homology;
  if (s == "coh" || s == "cohomology") return Side::cohomology;
  throw std::invalid_argument("side must be 'hom' or 'coh', got '" + s + "'");
}

std::vector<Subset> subsets_of_size(std::size_t n, std::size_t p) {
  std::vector<Subset> out;
  if (p > n) return out;
  Subset cur(p);
  for (std::size_t i = 0; i < p; ++i) cur[i] = static_cast<std::uint32_t>(i);
  for (;;) {
    out.push_back(cur);
    std::size_t i = p;
    while (i > 0 && cur[i - 1] == n - p + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < p; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

void ChainElement::add(const Monomial& m, const Subset& s, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms.try_emplace({m, s}, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms.erase(it);
  }
}

void ChainElement::add(const Polynomial& f, const Subset& s) {
  for (const auto& [m, c] : f.terms()) add(m, s, c);
}

void CochainElement::add(const Subset& t, const Polynomial& f) {
  if (f.is_zero()) return;
  auto [it, inserted] = components.try_emplace(t, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) components.erase(it);
  }
}

const Polynomial* CochainElement::component(const Subset& t) const {
  auto it = components.find(t);
  return it == components.end() ? nullptr : &it->second;
}

ChainElement homology_boundary(const PoissonStructure& P, const PDerivation& sigma,
                               const ChainElement& c) {
  require_context(P, sigma);
  const std::size_t n = P.nvars();
  ChainElement out;
  if (c.degree == 0) return out;
  out.degree = c.degree - 1;
  Subset scratch;
  for (const auto& [key, coeff] : c.terms) {
    const auto& [mono, S] = key;
    if (S.size() != c.degree) throw std::invalid_argument("chain term has the wrong degree");
    const Polynomial m = Polynomial::term(mono, coeff);
    const std::size_t p = S.size();
    // sum_t (-1)^{t+1} ({m, x_{i_t}} + sigma(x_{i_t}) m) (x) dx_{S \ i_t}, t 1-based
    for (std::size_t t = 0; t < p; ++t) {
      Polynomial v = bracket_with_generator(P, m, S[t]) + sigma[S[t]] * m;
      if (t % 2 == 1) v = -v;
      out.add(v, erase_at(S, t));
    }
    // sum_{s<t} (-1)^{s+t} m (x) d{x_{i_s}, x_{i_t}} ^ dx_{S \ {i_s, i_t}}
    for (std::size_t s = 0; s < p; ++s) {
      for (std::size_t t = s + 1; t < p; ++t) {
        const Subset rest = erase_two(S, s, t);
        const int outer = ((s + t) % 2 == 0) ? 1 : -1;
        for (std::uint32_t k = 0; k < n; ++k) {
          const Polynomial& a = P.dpi(S[s], S[t], k);
          if (a.is_zero()) continue;
          const int sign = insert_sorted(rest, k, scratch);
          if (sign == 0) continue;
          Polynomial v = a * m;
          if (outer * sign < 0) v = -v;
          out.add(v, scratch);
        }
      }
    }
  }
  return out;
}

CochainElement cohomology_coboundary(const PoissonStructure& P, const PDerivation& sigma,
                                     const CochainElement& f) {
  require_context(P, sigma);
  const std::size_t n = P.nvars();
  CochainElement out;
  out.degree = f.degree + 1;
  if (f.degree >= n) return out;
  Subset scratch;
  for (const Subset& T : subsets_of_size(n, f.degree + 1)) {
    Polynomial acc(n);
    const std::size_t q = T.size();
    // sum_r (-1)^{r+1} ({f_{T \ j_r}, x_{j_r}} + sigma(x_{j_r}) f_{T \ j_r}), r 0-based
    for (std::size_t r = 0; r < q; ++r) {
      const Polynomial* g = f.component(erase_at(T, r));
      if (!g) continue;
      Polynomial v = bracket_with_generator(P, *g, T[r]) + sigma[T[r]] * *g;
      if (r % 2 == 0) {
        acc -= v;
      } else {
        acc += v;
      }
    }
    // sum_{r<s} (-1)^{r+s} f({x_{j_r}, x_{j_s}} ^ x_{T \ {j_r, j_s}})
    for (std::size_t r = 0; r < q; ++r) {
      for (std::size_t s = r + 1; s < q; ++s) {
        const Subset rest = erase_two(T, r, s);
        const int outer = ((r + s) % 2 == 0) ? 1 : -1;
        for (std::uint32_t k = 0; k < n; ++k) {
          const Polynomial& a = P.dpi(T[r], T[s], k);
          if (a.is_zero()) continue;
          const int sign = insert_sorted(rest, k, scratch);
          if (sign == 0) continue;
          const Polynomial* g = f.component(scratch);
          if (!g) continue;
          if (outer * sign > 0) {
            acc += a * *g;
          } else {
            acc -= a * *g;
          }
        }
      }
    }
    out.add(T, acc);
  }
  return out;
}

std::ptrdiff_t SliceBasis::index_of(const BasisElement& e) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), e, [](const auto& a, const auto& b) {
    if (a.monomial != b.monomial) return GrlexGreater{}(b.monomial, a.monomial);
    return a.subset < b.subset;
  });
  if (it == elements.end() || *it != e) return -1;
  return it - elements.begin();
}

std::vector<Monomial> monomials_of_weight(std::span<const std::int64_t> weights, std::int64_t w) {
  std::vector<Monomial> out;
  if (w < 0 || weights.empty()) return out;
  Monomial cur(weights.size());
  enumerate_monomials(weights, 0, w, cur, out);
  return out;
}

SliceBasis slice_basis(const PoissonStructure& P, Side side, std::size_t p, std::int64_t label) {
  SliceBasis basis{side, p, label, {}};
  const std::size_t n = P.nvars();
  if (p > n) return basis;
  const std::int64_t shift = static_cast<std::int64_t>(p) * P.degree();
  for (const Subset& S : subsets_of_size(n, p)) {
    const std::int64_t target = side == Side::homology ? label - shift - subset_weight(P, S)
                                                       : label + shift + subset_weight(P, S);
    for (auto& m : monomials_of_weight(P.weights(), target)) {
      basis.elements.push_back({std::move(m), S});
    }
  }
  // ascending grlex on the monomial, then subset lex
  std::sort(basis.elements.begin(), basis.elements.end(), [](const auto& a, const auto& b) {
    if (a.monomial != b.monomial) return GrlexGreater{}(b.monomial, a.monomial);
    return a.subset < b.subset;
  });
  return basis;
}

SparseMatrix assemble_matrix(const PoissonStructure& P, const PDerivation& sigma, Side side,
                             std::size_t p, std::int64_t label) {
  require_context(P, sigma);
  if (!P.valid()) throw std::invalid_argument("Poisson structure failed the Jacobi check");
  require_compatible(P, sigma);
  const std::size_t n = P.nvars();
  const SliceBasis source = slice_basis(P, side, p, label);
  const bool has_target = side == Side::homology ? p >= 1 && p <= n : p < n;
  if (!has_target) return SparseMatrix(0, source.size());
  const std::size_t q = side == Side::homology ? p - 1 : p + 1;
  const SliceBasis target = slice_basis(P, side, q, label);
  SparseMatrix mat(target.size(), source.size());

  auto place = [&](std::size_t col, const Monomial& m, const Subset& s, const Rational& c) {
    const auto row = target.index_of({m, s});
    if (row < 0) {
      throw WeightBookkeepingError("differential left the slice: " + to_string(side) +
                                   " p=" + std::to_string(p) + " label=" + std::to_string(label));
    }
    mat.add(static_cast<std::size_t>(row), col, c);
  };

  for (std::size_t col = 0; col < source.size(); ++col) {
    const auto& e = source.elements[col];
    if (side == Side::homology) {
      ChainElement c;
      c.degree = p;
      c.add(e.monomial, e.subset, 1);
      for (const auto& [key, v] : homology_boundary(P, sigma, c).terms) {
        place(col, key.first, key.second, v);
      }
    } else {
      CochainElement f;
      f.degree = p;
      f.add(e.subset, Polynomial::term(e.monomial, 1));
      for (const auto& [T, g] : cohomology_coboundary(P, sigma, f).components) {
        for (const auto& [m, v] : g.terms()) place(col, m, T, v);
      }
    }
  }
  return mat;
}

}  // namespace poisson
