#include <gtest/gtest.h>

#include "support.hpp"

using namespace poisson;

namespace {

SparseMatrix dense(std::vector<std::vector<long>> rows) {
  SparseMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, Rational(rows[r][c]));
  }
  return m;
}

SparseMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int fill_percent) {
  SparseMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (rng.uniform(0, 99) < fill_percent) {
        m.set(r, c, Rational(rng.nonzero(6), rng.uniform(1, 4)));
      }
    }
  }
  return m;
}

/// Low-rank matrix: product of random (rows x k) and (k x cols) factors.
SparseMatrix low_rank(Rng& rng, std::size_t rows, std::size_t cols, std::size_t k) {
  return random_matrix(rng, rows, k, 70) * random_matrix(rng, k, cols, 70);
}

}  // namespace

TEST(Rank, Examples) {
  EXPECT_EQ(rank(dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 3u);
  EXPECT_EQ(rank(SparseMatrix(4, 5)), 0u);
  EXPECT_EQ(rank(dense({{1, 2}, {2, 4}})), 1u);
  EXPECT_EQ(rank(SparseMatrix(0, 3)), 0u);
  EXPECT_EQ(nullity(dense({{1, 2}, {2, 4}})), 1u);
}

TEST(Rank, HandlesHugeEntries) {
  SparseMatrix m(2, 2);
  const Rational big(Integer("123456789012345678901234567890"), Integer("7"));
  m.set(0, 0, big);
  m.set(0, 1, big * 3);
  m.set(1, 0, Rational(1, 3));
  m.set(1, 1, Rational(1));
  EXPECT_EQ(rank(m), 1u);
}

TEST(SparseMatrixOps, StoresNoZerosAndChecksBounds) {
  SparseMatrix m(2, 2);
  m.set(0, 0, 5);
  m.add(0, 0, -5);
  EXPECT_TRUE(m.is_zero());
  m.set(1, 1, 0);
  EXPECT_EQ(m.nonzeros(), 0u);
  EXPECT_THROW(m.set(2, 0, 1), std::out_of_range);
  EXPECT_THROW(SparseMatrix(2, 3) * SparseMatrix(2, 3), std::invalid_argument);
}

TEST(SparseMatrixOps, ProductMatchesHandComputation) {
  const auto a = dense({{1, 2}, {3, 4}});
  const auto b = dense({{0, 1}, {1, 0}});
  EXPECT_EQ(a * b, dense({{2, 1}, {4, 3}}));
  EXPECT_EQ(a.transpose(), dense({{1, 3}, {2, 4}}));
}

class RankProperty : public ::testing::Test {
 protected:
  Rng rng{4242};
};

TEST_F(RankProperty, AgreesWithDenseOracle) {
  for (int t = 0; t < 300; ++t) {
    const auto rows = static_cast<std::size_t>(rng.uniform(0, 9));
    const auto cols = static_cast<std::size_t>(rng.uniform(0, 9));
    const SparseMatrix m = t % 2 ? random_matrix(rng, rows, cols, static_cast<int>(rng.uniform(5, 60)))
                                 : low_rank(rng, rows, cols, static_cast<std::size_t>(rng.uniform(0, 4)));
    ASSERT_EQ(rank(m), support::dense_rank(m)) << rows << "x" << cols;
  }
}

TEST_F(RankProperty, TransposeInvariance) {
  for (int t = 0; t < 200; ++t) {
    const SparseMatrix m = low_rank(rng, 8, 6, static_cast<std::size_t>(rng.uniform(0, 5)));
    ASSERT_EQ(rank(m), rank(m.transpose()));
  }
}

TEST_F(RankProperty, RowScalingAndSwapInvariance) {
  for (int t = 0; t < 200; ++t) {
    const SparseMatrix m = low_rank(rng, 7, 7, static_cast<std::size_t>(rng.uniform(0, 6)));
    // Left-multiply by a diagonal scaling composed with a random transposition.
    SparseMatrix e(7, 7);
    const auto a = static_cast<std::size_t>(rng.uniform(0, 6));
    const auto b = static_cast<std::size_t>(rng.uniform(0, 6));
    for (std::size_t i = 0; i < 7; ++i) {
      const std::size_t j = i == a ? b : (i == b ? a : i);
      e.set(i, j, Rational(rng.nonzero(9), rng.uniform(1, 9)));
    }
    ASSERT_EQ(rank(e * m), rank(m));
  }
}
