#ifndef POISSON_STRUCTURE_HPP
#define POISSON_STRUCTURE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "poisson/polynomial.hpp"

namespace poisson {

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

/// One bracket value {x_i, x_j} = value, with i < j.
struct BracketEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  Polynomial value;
};

struct JacobiViolation {
  std::array<std::size_t, 3> triple{};
  Polynomial jacobiator;
};

class StructureError : public std::runtime_error {
 public:
  enum class Kind { invalid_input, inhomogeneous, inconsistent_degree, jacobi };

  StructureError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class JacobiError : public StructureError {
 public:
  JacobiError(const std::string& what, std::vector<JacobiViolation> violations)
      : StructureError(Kind::jacobi, what), violations_(std::move(violations)) {}
  const std::vector<JacobiViolation>& violations() const { return violations_; }

 private:
  std::vector<JacobiViolation> violations_;
};

/// Weight-homogeneous polynomial Poisson bracket on k[x_1..x_n].
///
/// The full antisymmetric matrix pi(i, j) = {x_i, x_j} is stored together
/// with all first partials d pi(i, j) / d x_k, which every differential in
/// the library needs. Every nonzero entry has weight w_i + w_j + degree().
class PoissonStructure {
 public:
  /// Builds the structure, infers the degree and runs the Jacobi check.
  /// `degree` is only consulted when every entry is zero (or to cross-check).
  static PoissonStructure create(std::vector<std::string> vars, std::vector<std::int64_t> weights,
                                 const std::vector<BracketEntry>& entries,
                                 std::optional<std::int64_t> degree = std::nullopt);

  /// Same as create() but a Jacobi failure leaves valid() == false instead of throwing.
  static PoissonStructure create_unchecked(std::vector<std::string> vars,
                                           std::vector<std::int64_t> weights,
                                           const std::vector<BracketEntry>& entries,
                                           std::optional<std::int64_t> degree = std::nullopt);

  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<std::int64_t>& weights() const { return weights_; }
  std::int64_t degree() const { return degree_; }
  bool valid() const { return valid_; }

  const Polynomial& pi(std::size_t i, std::size_t j) const { return pi_[i * nvars() + j]; }
  const Polynomial& dpi(std::size_t i, std::size_t j, std::size_t k) const {
    return dpi_[(i * nvars() + j) * nvars() + k];
  }

  std::vector<BracketEntry> entries() const;
  Polynomial zero() const { return Polynomial(nvars()); }
  Polynomial generator(std::size_t i) const { return Polynomial::variable(nvars(), i); }
  Polynomial parse(std::string_view text) const { return parse_polynomial(text, vars_); }
  std::string format(const Polynomial& f) const { return to_string(f, vars_); }

  /// Stable digest of (vars, weights, brackets) as 16 hex digits.
  std::string digest() const;

 private:
  PoissonStructure() = default;

  std::vector<std::string> vars_;
  std::vector<std::int64_t> weights_;
  std::int64_t degree_ = 0;
  bool valid_ = false;
  std::vector<Polynomial> pi_;
  std::vector<Polynomial> dpi_;
};

/// Derivation of k[x_1..x_n] given by its values on generators, together
/// with its weight degree.
class PDerivation {
 public:
  PDerivation() = default;
  PDerivation(std::vector<Polynomial> values, std::int64_t degree);
  static PDerivation zero(std::size_t nvars, std::int64_t degree);

  std::size_t nvars() const { return values_.size(); }
  std::int64_t degree() const { return degree_; }
  const std::vector<Polynomial>& values() const { return values_; }
  const Polynomial& operator[](std::size_t i) const { return values_[i]; }
  bool is_zero() const;

  /// sigma(f) = sum_i (df/dx_i) sigma(x_i).
  Polynomial apply(const Polynomial& f) const;

  PDerivation& operator+=(const PDerivation& other);
  friend PDerivation operator+(PDerivation a, const PDerivation& b) { return a += b; }
  friend PDerivation operator-(const PDerivation& a);
  friend PDerivation operator-(const PDerivation& a, const PDerivation& b) { return a + (-b); }
  friend PDerivation operator*(const Rational& c, PDerivation a);
  friend bool operator==(const PDerivation&, const PDerivation&) = default;

 private:
  std::vector<Polynomial> values_;
  std::int64_t degree_ = 0;
};

/// {f, g} = sum_{i,j} pi(i, j) df/dx_i dg/dx_j.
Polynomial bracket(const PoissonStructure& P, const Polynomial& f, const Polynomial& g);

/// {f, x_i}, the common special case of bracket().
Polynomial bracket_with_generator(const PoissonStructure& P, const Polynomial& f, std::size_t i);

/// Jacobiators of all generator triples i < j < k that do not vanish.
std::vector<JacobiViolation> check_jacobi(const PoissonStructure& P);

/// delta(x_i) = sum_j d{x_i, x_j}/dx_j, the divergence of the bivector with
/// respect to dx_1 ^ ... ^ dx_n.
PDerivation modular_derivation(const PoissonStructure& P);

bool is_poisson_derivation(const PoissonStructure& P, const PDerivation& sigma);

/// For a polynomial ring the only log-Hamiltonian derivation is zero, so
/// unimodularity is exactly delta == 0.
bool is_unimodular(const PoissonStructure& P);

/// sigma(x_i) = w_i x_i.
PDerivation euler_derivation(const PoissonStructure& P);

/// Throws std::invalid_argument unless sigma lives in P's context with
/// degree P.degree() and homogeneous values of the right weight.
void require_compatible(const PoissonStructure& P, const PDerivation& sigma);

/// A class in the Poisson Picard group of a polynomial ring. Log-Hamiltonian
/// derivations vanish there, so a class is its representative.
struct TwistClass {
  PDerivation rep;

  friend bool operator==(const TwistClass&, const TwistClass&) = default;
};

TwistClass add(const TwistClass& a, const TwistClass& b);
TwistClass negate(const TwistClass& a);
TwistClass trivial_class(const PoissonStructure& P);
/// Class of omega_A, the top forms: the modular derivation.
TwistClass omega_class(const PoissonStructure& P);
TwistClass omega_dual_class(const PoissonStructure& P);
/// Class of omega_A tensor omega_A: twice the modular derivation.
TwistClass l_class(const PoissonStructure& P);
TwistClass l_dual_class(const PoissonStructure& P);

}  // namespace poisson

#endif  // POISSON_STRUCTURE_HPP
