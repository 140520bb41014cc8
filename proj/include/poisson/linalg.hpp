#ifndef POISSON_LINALG_HPP
#define POISSON_LINALG_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "poisson/polynomial.hpp"

namespace poisson {

/// Sparse matrix over Q with (row, col) keyed storage; explicit zeros are
/// never stored.
class SparseMatrix {
 public:
  using Entries = std::map<std::pair<std::size_t, std::size_t>, Rational>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Entries& entries() const { return entries_; }
  std::size_t nonzeros() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& value);
  void add(std::size_t r, std::size_t c, const Rational& value);

  SparseMatrix transpose() const;
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  void check(std::size_t r, std::size_t c) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Entries entries_;
};

/// Exact rank over Q.
///
/// Rows are cleared of denominators and eliminated fraction-free over Z:
/// the pivot row is the sparsest live row, its pivot the entry of smallest
/// magnitude, and every other row r holding the pivot column becomes
/// p*r - a*pivot_row followed by division by the content of the row. The
/// content division keeps entries as small as Bareiss' exact division does.
std::size_t rank(const SparseMatrix& m);

inline std::size_t nullity(const SparseMatrix& m) { return m.cols() - rank(m); }

}  // namespace poisson

#endif  // POISSON_LINALG_HPP
