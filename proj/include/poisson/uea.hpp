#ifndef POISSON_UEA_HPP
#define POISSON_UEA_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "poisson/random.hpp"
#include "poisson/structure.hpp"

namespace poisson {

// The Poisson enveloping algebra U(A) of A = k[x_1..x_n] is generated by
// x_i (the multiplication operators M_{x_i}) and y_i (the Hamiltonian
// operators H_{x_i}) subject to
//
//   x_j x_i = x_i x_j
//   y_i x_j = x_j y_i + {x_i, x_j}
//   y_j y_i = y_i y_j - sum_k (d{x_i, x_j}/dx_k) y_k      (j > i)
//
// where the last line uses H_f = sum_k (df/dx_k) H_{x_k}, which follows from
// H_{ab} = M_a H_b + M_b H_a and H_1 = 0. Elements are stored in PBW normal
// form sum c x^alpha y^beta, all x's left of all y's.

struct Letter {
  enum class Kind : std::uint8_t { x, y };
  Kind kind = Kind::x;
  std::uint32_t index = 0;

  static Letter X(std::uint32_t i) { return {Kind::x, i}; }
  static Letter Y(std::uint32_t i) { return {Kind::y, i}; }
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Parses "M(x) H(y) ..." (whitespace separated, left-to-right product).
/// "1" or an empty string is the empty word.
Word parse_word(std::string_view text, std::span<const std::string> vars);

class UEAElement {
 public:
  /// (x-exponents alpha, y-exponents beta).
  using Key = std::pair<Monomial, Monomial>;
  using Terms = std::map<Key, Rational>;

  UEAElement() = default;
  explicit UEAElement(std::size_t nvars) : nvars_(nvars) {}

  static UEAElement one(std::size_t nvars);
  static UEAElement from_polynomial(const Polynomial& f);
  static UEAElement y(std::size_t nvars, std::size_t i);
  static UEAElement term(const Monomial& alpha, const Monomial& beta, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest total y-degree (the filtration degree); 0 for zero.
  std::uint64_t y_degree() const;
  /// The y-free part, as a polynomial.
  Polynomial x_part() const;

  void add_term(const Monomial& alpha, const Monomial& beta, const Rational& c);

  UEAElement& operator+=(const UEAElement& other);
  UEAElement& operator-=(const UEAElement& other);
  UEAElement& operator*=(const Rational& c);
  friend UEAElement operator+(UEAElement a, const UEAElement& b) { return a += b; }
  friend UEAElement operator-(UEAElement a, const UEAElement& b) { return a -= b; }
  friend UEAElement operator*(const Rational& c, UEAElement a) { return a *= c; }
  /// Left multiplication by a polynomial; x's commute and sit on the left.
  friend UEAElement operator*(const Polynomial& f, const UEAElement& u);
  friend bool operator==(const UEAElement&, const UEAElement&) = default;

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

/// "c * x^a*y^b*h_x^c*h_y^d + ...", terms by decreasing total degree.
std::string to_string(const UEAElement& u, std::span<const std::string> vars);

enum class RewriteStrategy { leftmost, rightmost };

/// Rewrites the word to PBW normal form by applying the defining relations
/// at the leftmost (or rightmost) reducible position until none remain.
UEAElement normal_form(const PoissonStructure& P, const Word& w,
                       RewriteStrategy strategy = RewriteStrategy::leftmost);

/// Left multiplication of a normal form by one generator.
UEAElement left_multiply(const PoissonStructure& P, Letter letter, const UEAElement& u);

/// Product of normal forms, computed by left-multiplying v by the letters of
/// each PBW monomial of u.
UEAElement multiply(const PoissonStructure& P, const UEAElement& u, const UEAElement& v);

/// The PBW monomial x^alpha y^beta as a word.
Word to_word(const Monomial& alpha, const Monomial& beta);

struct RelationWitness {
  enum class Relation { y_x, y_y };
  Relation relation = Relation::y_x;
  std::size_t i = 0;
  std::size_t j = 0;
  /// Image of the relation under the map; nonzero.
  UEAElement residual;

  std::string describe(std::span<const std::string> vars) const;
};

/// The filtered automorphism x_i -> x_i, y_i -> y_i + sigma(x_i).
class UEAAutomorphism {
 public:
  const PDerivation& sigma() const { return sigma_; }
  bool is_identity() const { return sigma_.is_zero(); }

  UEAElement image_of_y(std::size_t i) const;
  UEAElement apply(const PoissonStructure& P, const UEAElement& u) const;

 private:
  friend UEAAutomorphism make_automorphism(const PoissonStructure& P, const PDerivation& sigma);
  explicit UEAAutomorphism(PDerivation sigma) : sigma_(std::move(sigma)) {}
  PDerivation sigma_;
};

class AutomorphismError : public std::runtime_error {
 public:
  explicit AutomorphismError(RelationWitness w, const std::string& what)
      : std::runtime_error(what), witness_(std::move(w)) {}
  const RelationWitness& witness() const { return witness_; }

 private:
  RelationWitness witness_;
};

/// First defining relation not preserved by y_i -> y_i + sigma(x_i), if any.
std::optional<RelationWitness> relation_witness(const PoissonStructure& P,
                                                const PDerivation& sigma);

/// Throws AutomorphismError with the witness unless every relation is
/// preserved, which happens exactly when sigma is a Poisson derivation.
UEAAutomorphism make_automorphism(const PoissonStructure& P, const PDerivation& sigma);

struct NakayamaReport {
  UEAAutomorphism automorphism;
  bool identity = false;
  /// U(A) is Calabi-Yau exactly when A is unimodular (polynomial units are scalars).
  bool calabi_yau = false;
};

/// The Nakayama automorphism of U(A), induced by twice the modular derivation.
NakayamaReport nakayama(const PoissonStructure& P);

/// Reduces u modulo the right ideal sum_i (y_i - delta(x_i)) U(A), returning
/// the polynomial representative of its class in U(A)/(y_i - delta(x_i)),
/// which is the top Ext group Ext^n_U(A)(A, U(A)).
Polynomial ext_top_reduce(const PoissonStructure& P, const UEAElement& u);
Polynomial ext_top_reduce(const PoissonStructure& P, const PDerivation& delta, const UEAElement& u);

struct ExtCheckOptions {
  std::uint64_t seed = 1;
  std::size_t image_witnesses = 200;
  std::size_t bracket_witnesses = 200;
  std::uint32_t max_degree = 3;
  std::int64_t coeff_bound = 5;
};

struct ExtCheckResult {
  bool pass = true;
  std::size_t image_checked = 0;
  std::size_t bracket_checked = 0;
  std::size_t action_checked = 0;
  std::string failure;
};

/// Checks that ext_top_reduce kills (y_i - delta_i) u for random u, and that
/// the induced right action of y_j on the class of f is f delta(x_j) + {f, x_j},
/// i.e. the cokernel is the twisted module A^delta.
ExtCheckResult ext_module_check(const PoissonStructure& P, const ExtCheckOptions& options = {});

/// Top filtration part of u as a polynomial in x_1..x_n, dx_1..dx_n (the
/// dx's occupy variables n..2n-1). Throws std::invalid_argument on zero.
Polynomial gr_leading(const UEAElement& u);

/// Random element built from up to `max_terms` PBW monomials.
UEAElement random_element(Rng& rng, std::size_t nvars, std::uint32_t max_x_degree,
                          std::uint32_t max_y_degree, std::int64_t coeff_bound,
                          std::size_t max_terms = 3);
Word random_word(Rng& rng, std::size_t nvars, std::size_t max_length);

}  // namespace poisson

#endif  // POISSON_UEA_HPP
