#include "poisson/structure.hpp"

#include <cstdio>
#include <set>
#include <sstream>

namespace poisson {

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

void validate_arguments(const std::vector<std::string>& vars,
                        const std::vector<std::int64_t>& weights) {
  const std::size_t n = vars.size();
  using Kind = StructureError::Kind;
  if (n == 0) throw StructureError(Kind::invalid_input, "at least one variable is required");
  if (weights.size() != n) {
    throw StructureError(Kind::invalid_input, "expected " + std::to_string(n) + " weights, got " +
                                                  std::to_string(weights.size()));
  }
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!seen.insert(v).second) throw StructureError(Kind::invalid_input, "duplicate variable '" + v + "'");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i] <= 0) {
      throw StructureError(Kind::invalid_input, "weight of '" + vars[i] + "' must be positive");
    }
  }
}

}  // namespace

PoissonStructure PoissonStructure::create_unchecked(std::vector<std::string> vars,
                                                    std::vector<std::int64_t> weights,
                                                    const std::vector<BracketEntry>& entries,
                                                    std::optional<std::int64_t> degree) {
  using Kind = StructureError::Kind;
  validate_arguments(vars, weights);
  const std::size_t n = vars.size();

  PoissonStructure P;
  P.vars_ = std::move(vars);
  P.weights_ = std::move(weights);
  P.pi_.assign(n * n, Polynomial(n));

  std::optional<std::int64_t> inferred;
  for (const auto& e : entries) {
    if (e.i >= n || e.j >= n || e.i >= e.j) {
      throw StructureError(Kind::invalid_input, "bracket entries must satisfy i < j < n");
    }
    if (e.value.nvars() != n) {
      throw StructureError(Kind::invalid_input, "bracket value has the wrong variable context");
    }
    if (!P.pi_[e.i * n + e.j].is_zero()) {
      throw StructureError(Kind::invalid_input, "duplicate bracket entry {" + P.vars_[e.i] + "," +
                                                    P.vars_[e.j] + "}");
    }
    const auto w = weight_of(e.value, P.weights_);
    if (w.kind == WeightKind::inhomogeneous) {
      throw StructureError(Kind::inhomogeneous, "{" + P.vars_[e.i] + "," + P.vars_[e.j] +
                                                    "} is not weight-homogeneous");
    }
    if (w.kind == WeightKind::zero) continue;
    const std::int64_t d = w.value - P.weights_[e.i] - P.weights_[e.j];
    if (inferred && *inferred != d) {
      throw StructureError(Kind::inconsistent_degree,
                           "{" + P.vars_[e.i] + "," + P.vars_[e.j] + "} has degree " +
                               std::to_string(d) + " but earlier entries have degree " +
                               std::to_string(*inferred));
    }
    inferred = d;
    P.pi_[e.i * n + e.j] = e.value;
    P.pi_[e.j * n + e.i] = -e.value;
  }
  if (inferred && degree && *inferred != *degree) {
    throw StructureError(Kind::inconsistent_degree,
                         "declared degree " + std::to_string(*degree) +
                             " disagrees with the bracket degree " + std::to_string(*inferred));
  }
  P.degree_ = inferred.value_or(degree.value_or(0));

  P.dpi_.reserve(n * n * n);
  for (std::size_t ij = 0; ij < n * n; ++ij) {
    for (std::size_t k = 0; k < n; ++k) P.dpi_.push_back(differentiate(P.pi_[ij], k));
  }
  P.valid_ = check_jacobi(P).empty();
  return P;
}

PoissonStructure PoissonStructure::create(std::vector<std::string> vars,
                                          std::vector<std::int64_t> weights,
                                          const std::vector<BracketEntry>& entries,
                                          std::optional<std::int64_t> degree) {
  PoissonStructure P = create_unchecked(std::move(vars), std::move(weights), entries, degree);
  if (!P.valid_) {
    auto violations = check_jacobi(P);
    const auto& v = violations.front();
    std::string msg = "Jacobi identity fails at (" + P.vars_[v.triple[0]] + "," +
                      P.vars_[v.triple[1]] + "," + P.vars_[v.triple[2]] +
                      "): Jacobiator = " + P.format(v.jacobiator);
    throw JacobiError(msg, std::move(violations));
  }
  return P;
}

std::vector<BracketEntry> PoissonStructure::entries() const {
  std::vector<BracketEntry> out;
  for (std::size_t i = 0; i < nvars(); ++i) {
    for (std::size_t j = i + 1; j < nvars(); ++j) {
      if (!pi(i, j).is_zero()) out.push_back({i, j, pi(i, j)});
    }
  }
  return out;
}

std::string PoissonStructure::digest() const {
  std::ostringstream s;
  for (std::size_t i = 0; i < nvars(); ++i) s << vars_[i] << ':' << weights_[i] << ';';
  s << "d=" << degree_ << ';';
  for (const auto& e : entries()) s << e.i << ',' << e.j << '=' << format(e.value) << ';';
  return fnv1a_hex(s.str());
}

PDerivation::PDerivation(std::vector<Polynomial> values, std::int64_t degree)
    : values_(std::move(values)), degree_(degree) {
  for (const auto& v : values_) {
    if (v.nvars() != values_.size()) {
      throw std::invalid_argument("derivation value has the wrong variable context");
    }
  }
}

PDerivation PDerivation::zero(std::size_t nvars, std::int64_t degree) {
  return PDerivation(std::vector<Polynomial>(nvars, Polynomial(nvars)), degree);
}

bool PDerivation::is_zero() const {
  for (const auto& v : values_) {
    if (!v.is_zero()) return false;
  }
  return true;
}

Polynomial PDerivation::apply(const Polynomial& f) const {
  if (f.nvars() != nvars()) throw std::invalid_argument("derivation context mismatch");
  Polynomial out(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (values_[i].is_zero()) continue;
    out += differentiate(f, i) * values_[i];
  }
  return out;
}

PDerivation& PDerivation::operator+=(const PDerivation& other) {
  if (other.nvars() != nvars()) throw std::invalid_argument("derivation context mismatch");
  for (std::size_t i = 0; i < nvars(); ++i) values_[i] += other.values_[i];
  return *this;
}

PDerivation operator-(const PDerivation& a) {
  PDerivation out = a;
  for (auto& v : out.values_) v = -v;
  return out;
}

PDerivation operator*(const Rational& c, PDerivation a) {
  for (auto& v : a.values_) v *= c;
  return a;
}

Polynomial bracket(const PoissonStructure& P, const Polynomial& f, const Polynomial& g) {
  const std::size_t n = P.nvars();
  if (f.nvars() != n || g.nvars() != n) throw std::invalid_argument("bracket context mismatch");
  std::vector<Polynomial> df, dg;
  for (std::size_t i = 0; i < n; ++i) {
    df.push_back(differentiate(f, i));
    dg.push_back(differentiate(g, i));
  }
  Polynomial out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (df[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || dg[j].is_zero() || P.pi(i, j).is_zero()) continue;
      out += P.pi(i, j) * df[i] * dg[j];
    }
  }
  return out;
}

Polynomial bracket_with_generator(const PoissonStructure& P, const Polynomial& f, std::size_t i) {
  const std::size_t n = P.nvars();
  if (f.nvars() != n) throw std::invalid_argument("bracket context mismatch");
  Polynomial out(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i || P.pi(j, i).is_zero()) continue;
    Polynomial dj = differentiate(f, j);
    if (!dj.is_zero()) out += P.pi(j, i) * dj;
  }
  return out;
}

std::vector<JacobiViolation> check_jacobi(const PoissonStructure& P) {
  std::vector<JacobiViolation> out;
  const std::size_t n = P.nvars();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        // {x_i,{x_j,x_k}} = -{{x_j,x_k}, x_i}, and cyclically.
        Polynomial jac = -(bracket_with_generator(P, P.pi(j, k), i) +
                           bracket_with_generator(P, P.pi(k, i), j) +
                           bracket_with_generator(P, P.pi(i, j), k));
        if (!jac.is_zero()) out.push_back({{i, j, k}, std::move(jac)});
      }
    }
  }
  return out;
}

PDerivation modular_derivation(const PoissonStructure& P) {
  const std::size_t n = P.nvars();
  std::vector<Polynomial> values(n, Polynomial(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) values[i] += P.dpi(i, j, j);
    }
  }
  return PDerivation(std::move(values), P.degree());
}

bool is_poisson_derivation(const PoissonStructure& P, const PDerivation& sigma) {
  const std::size_t n = P.nvars();
  if (sigma.nvars() != n) throw std::invalid_argument("derivation context mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Polynomial lhs = sigma.apply(P.pi(i, j));
      // {x_i, sigma x_j} = -{sigma x_j, x_i}
      Polynomial rhs =
          bracket_with_generator(P, sigma[i], j) - bracket_with_generator(P, sigma[j], i);
      if (lhs != rhs) return false;
    }
  }
  return true;
}

bool is_unimodular(const PoissonStructure& P) { return modular_derivation(P).is_zero(); }

PDerivation euler_derivation(const PoissonStructure& P) {
  const std::size_t n = P.nvars();
  std::vector<Polynomial> values;
  for (std::size_t i = 0; i < n; ++i) {
    values.push_back(Rational(P.weights()[i]) * P.generator(i));
  }
  return PDerivation(std::move(values), 0);
}

void require_compatible(const PoissonStructure& P, const PDerivation& sigma) {
  if (sigma.nvars() != P.nvars()) throw std::invalid_argument("twist has the wrong variable count");
  if (sigma.degree() != P.degree()) {
    throw std::invalid_argument("twist degree " + std::to_string(sigma.degree()) +
                                " differs from the bracket degree " + std::to_string(P.degree()));
  }
  for (std::size_t i = 0; i < P.nvars(); ++i) {
    const auto w = weight_of(sigma[i], P.weights());
    if (w.kind == WeightKind::zero) continue;
    if (!w.homogeneous() || w.value != P.weights()[i] + P.degree()) {
      throw std::invalid_argument("twist value on '" + P.vars()[i] +
                                  "' is not homogeneous of weight " +
                                  std::to_string(P.weights()[i] + P.degree()));
    }
  }
}

TwistClass add(const TwistClass& a, const TwistClass& b) { return {a.rep + b.rep}; }
TwistClass negate(const TwistClass& a) { return {-a.rep}; }
TwistClass trivial_class(const PoissonStructure& P) {
  return {PDerivation::zero(P.nvars(), P.degree())};
}
TwistClass omega_class(const PoissonStructure& P) { return {modular_derivation(P)}; }
TwistClass omega_dual_class(const PoissonStructure& P) { return negate(omega_class(P)); }
TwistClass l_class(const PoissonStructure& P) { return add(omega_class(P), omega_class(P)); }
TwistClass l_dual_class(const PoissonStructure& P) { return negate(l_class(P)); }

}  // namespace poisson
