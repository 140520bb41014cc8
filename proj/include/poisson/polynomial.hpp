#ifndef POISSON_POLYNOMIAL_HPP
#define POISSON_POLYNOMIAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace poisson {

using Integer = mpz_class;
using Rational = mpq_class;

/// GMP requires canonical operands; values built from a numerator and a
/// denominator are not reduced automatically. Integers pass through untouched.
inline const Rational& canonical(const Rational& c, Rational& scratch) {
  if (mpz_cmp_ui(c.get_den_mpz_t(), 1) == 0) return c;
  scratch = c;
  scratch.canonicalize();
  return scratch;
}
using Exponent = std::uint32_t;

/// Exponent vector of a monomial. Comparison operators give plain
/// lexicographic order; use GrlexGreater for the printing order.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  Monomial(std::initializer_list<Exponent> exps) : exps_(exps) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

  static Monomial unit(std::size_t nvars, std::size_t i) {
    Monomial m(nvars);
    m.exps_.at(i) = 1;
    return m;
  }

  std::size_t nvars() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  Exponent& operator[](std::size_t i) { return exps_[i]; }
  std::span<const Exponent> exponents() const { return exps_; }

  std::uint64_t total_degree() const;
  bool is_one() const;

  /// Weighted degree sum_i exps[i] * weights[i].
  std::int64_t weight(std::span<const std::int64_t> weights) const;

  Monomial& operator*=(const Monomial& other);
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Exponent> exps_;
};

/// Graded lexicographic order, larger first: total degree, then the
/// exponent of the first variable, and so on.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse polynomial over Q in a fixed number of variables. Terms are kept
/// canonical: no zero coefficients, iteration in descending grlex order.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexGreater>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial term(const Monomial& m, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational coefficient(const Monomial& m) const;
  std::uint64_t total_degree() const;

  /// Adds c * m, dropping the term if it cancels.
  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator-(Polynomial a);

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void require_same_context(const Polynomial& other) const;

  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Formal partial derivative with respect to variable i.
Polynomial differentiate(const Polynomial& f, std::size_t i);

/// Multiplies f by a monomial without going through the general product.
Polynomial shift(const Polynomial& f, const Monomial& m);

Polynomial pow(const Polynomial& f, std::uint64_t e);

enum class WeightKind { homogeneous, zero, inhomogeneous };

struct WeightResult {
  WeightKind kind = WeightKind::zero;
  std::int64_t value = 0;

  bool homogeneous() const { return kind == WeightKind::homogeneous; }
  friend bool operator==(const WeightResult&, const WeightResult&) = default;
};

WeightResult weight_of(const Polynomial& f, std::span<const std::int64_t> weights);

/// Thrown by parse_polynomial; `position` is a 0-based byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        reason_(what),
        position_(position) {}
  /// The message without the position suffix.
  const std::string& reason() const { return reason_; }
  std::size_t position() const { return position_; }

 private:
  std::string reason_;
  std::size_t position_;
};

/// Parses the expression grammar
///   expr   := ('+'|'-')? term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' uint)?
///   base   := uint | uint '/' uint | ident | '(' expr ')'
/// Whitespace is insignificant and implicit multiplication is rejected.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> vars);

/// Canonical text form, parseable by parse_polynomial with the same names.
std::string to_string(const Polynomial& f, std::span<const std::string> vars);
std::string to_string(const Rational& q);

}  // namespace poisson

#endif  // POISSON_POLYNOMIAL_HPP
