#ifndef POISSON_COMPLEX_HPP
#define POISSON_COMPLEX_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "poisson/linalg.hpp"
#include "poisson/structure.hpp"

namespace poisson {

enum class Side { homology, cohomology };

std::string to_string(Side side);
Side side_from_string(const std::string& s);

/// Sorted list of distinct 0-based variable indices.
using Subset = std::vector<std::uint32_t>;

/// All subsets of {0..n-1} of size p, in lexicographic order.
std::vector<Subset> subsets_of_size(std::size_t n, std::size_t p);

/// Element of A^sigma (x) Omega^p: sum of c * m (x) dx_S.
struct ChainElement {
  std::size_t degree = 0;
  std::map<std::pair<Monomial, Subset>, Rational> terms;

  void add(const Monomial& m, const Subset& s, const Rational& c);
  void add(const Polynomial& f, const Subset& s);
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const ChainElement&, const ChainElement&) = default;
};

/// Skew multiderivation with values in A^sigma, stored by its generator
/// components f_T = f(x_{t_1} ^ ... ^ x_{t_p}).
struct CochainElement {
  std::size_t degree = 0;
  std::map<Subset, Polynomial> components;

  void add(const Subset& t, const Polynomial& f);
  const Polynomial* component(const Subset& t) const;
  bool is_zero() const { return components.empty(); }
  friend bool operator==(const CochainElement&, const CochainElement&) = default;
};

/// Poisson boundary on A^sigma (x) Omega^p with the right twisted bracket
/// {m, a}_sigma = {m, a} + sigma(a) m. Degree 0 maps to zero.
ChainElement homology_boundary(const PoissonStructure& P, const PDerivation& sigma,
                               const ChainElement& c);

/// Which leading sign the coboundary uses in its first sum: true means
/// (-1)^{i+1} for the 0-based position i of the removed argument, as the
/// formula is usually written with arguments a_0..a_n. That convention
/// squares to zero, so no global sign change was made; the d^2 = 0 tests
/// guard it.
inline constexpr bool kCoboundaryLeadingSignIPlusOne = true;

/// Lichnerowicz coboundary with values in A^sigma. Degree n maps to zero.
CochainElement cohomology_coboundary(const PoissonStructure& P, const PDerivation& sigma,
                                     const CochainElement& f);

struct BasisElement {
  Monomial monomial;
  Subset subset;
  friend bool operator==(const BasisElement&, const BasisElement&) = default;
  friend auto operator<=>(const BasisElement&, const BasisElement&) = default;
};

/// Basis of one labelled weight slice of a (co)chain space.
///
/// Homology: m (x) dx_S with weight(m) + w(S) = u - p*d. Each boundary step
/// raises the chain weight by d, so the slice reaches degree 0 at weight u.
/// Cohomology: components f_T = m with weight(m) = u + p*d + w(T), i.e.
/// cochain weight v = u + p*d.
/// Both differentials preserve the label u.
struct SliceBasis {
  Side side = Side::homology;
  std::size_t degree = 0;
  std::int64_t label = 0;
  std::vector<BasisElement> elements;

  std::size_t size() const { return elements.size(); }
  /// Position of e, or -1 if e is not in this slice.
  std::ptrdiff_t index_of(const BasisElement& e) const;
};

/// Monomials of exact weighted degree w (w < 0 gives none).
std::vector<Monomial> monomials_of_weight(std::span<const std::int64_t> weights, std::int64_t w);

SliceBasis slice_basis(const PoissonStructure& P, Side side, std::size_t p, std::int64_t label);

/// Raised when a differential leaves its labelled slice. This signals a
/// weight-bookkeeping bug and must never be ignored.
class WeightBookkeepingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Matrix of the differential leaving degree p at the given label: the
/// boundary C_p -> C_{p-1} for homology, the coboundary C^p -> C^{p+1} for
/// cohomology. Shape is (target size, source size); a target outside
/// [0, n] gives zero rows.
SparseMatrix assemble_matrix(const PoissonStructure& P, const PDerivation& sigma, Side side,
                             std::size_t p, std::int64_t label);

}  // namespace poisson

#endif  // POISSON_COMPLEX_HPP
