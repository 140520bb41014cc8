#include "poisson/polynomial.hpp"

#include <numeric>
#include <sstream>

namespace poisson {

std::uint64_t Monomial::total_degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
}

bool Monomial::is_one() const {
  for (auto e : exps_) {
    if (e != 0) return false;
  }
  return true;
}

std::int64_t Monomial::weight(std::span<const std::int64_t> weights) const {
  std::int64_t w = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    w += static_cast<std::int64_t>(exps_[i]) * weights[i];
  }
  return w;
}

Monomial& Monomial::operator*=(const Monomial& other) {
  if (other.exps_.size() != exps_.size()) {
    throw std::invalid_argument("monomial variable count mismatch");
  }
  for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] += other.exps_[i];
  return *this;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = a.total_degree();
  const auto db = b.total_degree();
  if (da != db) return da > db;
  return b < a;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw std::out_of_range("variable index out of range");
  Polynomial p(nvars);
  p.add_term(Monomial::unit(nvars, i), 1);
  return p;
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p(m.nvars());
  p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint64_t Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.total_degree();
}

void Polynomial::add_term(const Monomial& m, const Rational& raw) {
  Rational scratch;
  const Rational& c = canonical(raw, scratch);
  if (m.nvars() != nvars_) throw std::invalid_argument("monomial variable count mismatch");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void Polynomial::require_same_context(const Polynomial& other) const {
  if (nvars_ != other.nvars_) {
    throw std::invalid_argument("polynomials live in different variable contexts (" +
                                std::to_string(nvars_) + " vs " +
                                std::to_string(other.nvars_) + " variables)");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_context(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_context(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  Rational scratch;
  const Rational& k = canonical(c, scratch);
  for (auto& [m, coeff] : terms_) coeff *= k;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_context(b);
  Polynomial out(a.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      out.add_term(ma * mb, ca * cb);
    }
  }
  return out;
}

Polynomial operator-(Polynomial a) {
  for (auto& [m, c] : a.terms_) c = -c;
  return a;
}

Polynomial differentiate(const Polynomial& f, std::size_t i) {
  if (i >= f.nvars()) throw std::out_of_range("differentiation index out of range");
  Polynomial out(f.nvars());
  for (const auto& [m, c] : f.terms()) {
    if (m[i] == 0) continue;
    Monomial d = m;
    d[i] -= 1;
    out.add_term(d, c * m[i]);
  }
  return out;
}

Polynomial shift(const Polynomial& f, const Monomial& m) {
  Polynomial out(f.nvars());
  for (const auto& [mf, c] : f.terms()) out.add_term(mf * m, c);
  return out;
}

Polynomial pow(const Polynomial& f, std::uint64_t e) {
  Polynomial result = Polynomial::constant(f.nvars(), 1);
  Polynomial base = f;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

WeightResult weight_of(const Polynomial& f, std::span<const std::int64_t> weights) {
  if (weights.size() != f.nvars()) throw std::invalid_argument("weight vector length mismatch");
  if (f.is_zero()) return {WeightKind::zero, 0};
  const std::int64_t w = f.terms().begin()->first.weight(weights);
  for (const auto& [m, c] : f.terms()) {
    if (m.weight(weights) != w) return {WeightKind::inhomogeneous, 0};
  }
  return {WeightKind::homogeneous, w};
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Polynomial& f, std::span<const std::string> vars) {
  if (vars.size() != f.nvars()) throw std::invalid_argument("variable name count mismatch");
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    Rational mag = abs(c);
    bool need_star = false;
    if (m.is_one() || mag != 1) {
      out << mag.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m[i] == 0) continue;
      if (need_star) out << '*';
      out << vars[i];
      if (m[i] > 1) out << '^' << m[i];
      need_star = true;
    }
  }
  return out.str();
}

}  // namespace poisson
