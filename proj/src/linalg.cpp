#include "poisson/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace poisson {
namespace {

struct Entry {
  std::size_t col;
  Integer value;
};
using Row = std::vector<Entry>;  // sorted by col, no zeros

const Integer* find_col(const Row& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const Entry& e, std::size_t c) { return e.col < c; });
  return (it != row.end() && it->col == col) ? &it->value : nullptr;
}

// row <- p*row - a*pivot, then divide by content.
void eliminate(Row& row, const Row& pivot, const Integer& p, const Integer& a) {
  Row out;
  out.reserve(row.size() + pivot.size());
  auto r = row.begin();
  auto q = pivot.begin();
  while (r != row.end() || q != pivot.end()) {
    if (q == pivot.end() || (r != row.end() && r->col < q->col)) {
      out.push_back({r->col, p * r->value});
      ++r;
    } else if (r == row.end() || q->col < r->col) {
      out.push_back({q->col, -a * q->value});
      ++q;
    } else {
      Integer v = p * r->value - a * q->value;
      if (v != 0) out.push_back({r->col, std::move(v)});
      ++r;
      ++q;
    }
  }
  Integer g = 0;
  for (const auto& e : out) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.value.get_mpz_t());
    if (g == 1) break;
  }
  if (g > 1) {
    for (auto& e : out) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
  }
  row = std::move(out);
}

}  // namespace

void SparseMatrix::check(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) {
    throw std::out_of_range("matrix index (" + std::to_string(r) + "," + std::to_string(c) +
                            ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  check(r, c);
  auto it = entries_.find({r, c});
  return it == entries_.end() ? Rational(0) : it->second;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& raw) {
  Rational scratch;
  const Rational& value = canonical(raw, scratch);
  check(r, c);
  if (sgn(value) == 0) {
    entries_.erase({r, c});
  } else {
    entries_[{r, c}] = value;
  }
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& raw) {
  Rational scratch;
  const Rational& value = canonical(raw, scratch);
  check(r, c);
  if (sgn(value) == 0) return;
  auto [it, inserted] = entries_.try_emplace({r, c}, value);
  if (!inserted) {
    it->second += value;
    if (sgn(it->second) == 0) entries_.erase(it);
  }
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (const auto& [rc, v] : entries_) t.entries_.emplace(std::make_pair(rc.second, rc.first), v);
  return t;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw std::invalid_argument("matrix product shape mismatch: " + std::to_string(a.rows_) + "x" +
                                std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                                std::to_string(b.cols_));
  }
  std::vector<std::vector<std::pair<std::size_t, const Rational*>>> brows(b.rows_);
  for (const auto& [rc, v] : b.entries_) brows[rc.first].emplace_back(rc.second, &v);
  SparseMatrix out(a.rows_, b.cols_);
  for (const auto& [rc, v] : a.entries_) {
    for (const auto& [col, w] : brows[rc.second]) out.add(rc.first, col, v * *w);
  }
  return out;
}

std::size_t rank(const SparseMatrix& m) {
  std::vector<Row> rows(m.rows());
  {
    std::vector<std::vector<std::pair<std::size_t, Rational>>> raw(m.rows());
    for (const auto& [rc, v] : m.entries()) raw[rc.first].emplace_back(rc.second, v);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Integer l = 1;
      for (const auto& [c, v] : raw[r]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
      for (const auto& [c, v] : raw[r]) {
        Integer scaled = l / v.get_den() * v.get_num();
        rows[r].push_back({c, std::move(scaled)});
      }
    }
  }
  std::vector<Row*> live;
  for (auto& r : rows) {
    if (!r.empty()) live.push_back(&r);
  }

  std::size_t rk = 0;
  while (!live.empty()) {
    auto best = std::min_element(live.begin(), live.end(),
                                 [](const Row* a, const Row* b) { return a->size() < b->size(); });
    Row* pivot_row = *best;
    std::swap(*best, live.back());
    live.pop_back();

    const Entry* pivot = &pivot_row->front();
    for (const auto& e : *pivot_row) {
      if (mpz_cmpabs(e.value.get_mpz_t(), pivot->value.get_mpz_t()) < 0) pivot = &e;
    }
    const std::size_t col = pivot->col;
    const Integer p = pivot->value;
    ++rk;

    for (std::size_t k = 0; k < live.size();) {
      Row& row = *live[k];
      if (const Integer* a = find_col(row, col)) {
        Integer g = gcd(p, *a);
        Integer pp = p / g;
        Integer aa = *a / g;
        eliminate(row, *pivot_row, pp, aa);
        if (row.empty()) {
          std::swap(live[k], live.back());
          live.pop_back();
          continue;
        }
      }
      ++k;
    }
  }
  return rk;
}

}  // namespace poisson
