#include <catch2/catch_amalgamated.hpp>

#include "ffb/basis_ref.hpp"
#include "ffb/diffops.hpp"
#include "ffb/grid.hpp"
#include "test_support.hpp"

using ffb::InputGrid;
using ffb::Matrix;

namespace {

InputGrid iota_grid(std::size_t n) {
  std::vector<double> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<double>(i + 1);
  return InputGrid::from_values(std::move(pts));
}

}  // namespace

TEST_CASE("knot selection drops boundary points") {
  const InputGrid g6 = iota_grid(6);
  const auto k0 = ffb::knots(g6, 0);
  REQUIRE(k0.size() == 5);
  CHECK(k0 == std::vector<double>{2, 3, 4, 5, 6});

  const auto k1 = ffb::knots(g6, 1);
  REQUIRE(k1.size() == 4);
  CHECK(k1 == std::vector<double>{2, 3, 4, 5});

  CHECK_THROWS_AS(ffb::knots(iota_grid(3), 2), ffb::TooFewPointsError);
}

TEST_CASE("dense falling factorial small cases") {
  const auto h = ffb::dense_falling_factorial(iota_grid(3), 1).entries;
  const double want[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(h(i, j) == want[i][j]);
}

TEST_CASE("order zero falling factorial is the lower triangle of ones") {
  std::mt19937_64 rng(17);
  const InputGrid g = test_support::random_unit_grid(rng, 12);
  const auto h = ffb::dense_falling_factorial(g, 0).entries;
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) CHECK(h(i, j) == (j <= i ? 1.0 : 0.0));
}

TEST_CASE("knot column entries are gap products") {
  // H(4,3) on the grid 1..4 with k=1: third basis function is the hinge
  // (x - x_2) 1{x >= x_2}, so the entry is x_4 - x_2 = 2.
  const auto h = ffb::dense_falling_factorial(iota_grid(4), 1).entries;
  CHECK(h(3, 2) == 2.0);
  CHECK(h(3, 3) == 1.0);  // (x_4 - x_3)
  CHECK(h(2, 2) == 1.0);  // (x_3 - x_2)
}

TEST_CASE("dense truncated power small cases") {
  const auto g = ffb::dense_truncated_power(iota_grid(3), 1).entries;
  const double want[3][3] = {{1, 1, 0}, {1, 2, 0}, {1, 3, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(g(i, j) == want[i][j]);

  std::mt19937_64 rng(19);
  const InputGrid rg = test_support::random_unit_grid(rng, 10);
  const auto g0 = ffb::dense_truncated_power(rg, 0).entries;
  const auto h0 = ffb::dense_falling_factorial(rg, 0).entries;
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) CHECK(g0(i, j) == h0(i, j));
}

TEST_CASE("column one of both bases is all ones") {
  std::mt19937_64 rng(23);
  for (int k = 0; k <= 5; ++k) {
    const InputGrid g = test_support::random_unit_grid(rng, 32);
    const auto h = ffb::dense_falling_factorial(g, k).entries;
    const auto gp = ffb::dense_truncated_power(g, k).entries;
    for (std::size_t i = 0; i < 32; ++i) {
      CHECK(h(i, 0) == 1.0);
      CHECK(gp(i, 0) == 1.0);
    }
  }
}

TEST_CASE("elementwise definition matches the product recursion") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 8 + rng() % 56;
    for (int k = 0; k <= 5; ++k) {
      if (n < static_cast<std::size_t>(k) + 2) continue;
      const InputGrid g = test_support::random_unit_grid(rng, n);
      const Matrix direct = ffb::dense_falling_factorial(g, k).entries;
      const Matrix recur = test_support::dense_h_by_recursion(g, k);
      double rel = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const double denom = std::max(1.0, std::abs(recur(i, j)));
          rel = std::max(rel, std::abs(direct(i, j) - recur(i, j)) / denom);
        }
      CHECK(rel < 1e-10);
    }
  }
}

TEST_CASE("proximity bound between the two bases") {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int rep = 0; rep < 120; ++rep) {
    const int k = static_cast<int>(rng() % 6);
    const std::size_t n = std::max<std::size_t>(k + 2, 8 + rng() % 120);
    const InputGrid g = test_support::random_unit_grid(rng, n);
    const double delta = ffb::max_gap(g, 0.0).max_gap;
    const Matrix h = ffb::dense_falling_factorial(g, k).entries;
    const Matrix gp = ffb::dense_truncated_power(g, k).entries;
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        dev = std::max(dev, std::abs(gp(i, j) - h(i, j)));
    CHECK(dev <= k * k * delta + 1e-12);
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("inverse blocks at order zero") {
  std::mt19937_64 rng(37);
  const InputGrid g = test_support::random_unit_grid(rng, 9);
  const auto blocks = ffb::dense_h_inverse_blocks(g, 0);
  REQUIRE(blocks.c_block.rows() == 1);
  CHECK(blocks.c_block(0, 0) == 1.0);
  for (std::size_t j = 1; j < 9; ++j) CHECK(blocks.c_block(0, j) == 0.0);
  for (std::size_t i = 0; i + 1 < 9; ++i) {
    CHECK(blocks.diff_block(i, i) == -1.0);
    CHECK(blocks.diff_block(i, i + 1) == 1.0);
  }
}

TEST_CASE("stacked blocks invert the dense basis") {
  const InputGrid g3 = InputGrid::from_values({1.0, 2.0, 3.0});
  const Matrix stacked = ffb::dense_h_inverse_blocks(g3, 1).stacked();
  const Matrix h = ffb::dense_falling_factorial(g3, 1).entries;
  const Matrix prod = ffb::matmul(stacked, h);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("identity residual over random grids") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 8; ++rep) {
    const std::size_t n = 8 + rng() % 56;
    for (int k = 0; k <= 3; ++k) {
      if (n < static_cast<std::size_t>(k) + 2) continue;
      const InputGrid g = test_support::random_unit_grid(rng, n);
      const Matrix stacked = ffb::dense_h_inverse_blocks(g, k).stacked();
      const Matrix h = ffb::dense_falling_factorial(g, k).entries;
      const Matrix prod = ffb::matmul(stacked, h);
      double dev = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          dev = std::max(dev, std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)));
      CHECK(dev <= 1e-8 * static_cast<double>(n));
    }
  }
}

TEST_CASE("diff block agrees with the banded operator") {
  std::mt19937_64 rng(43);
  for (int k = 0; k <= 4; ++k) {
    const std::size_t n = 24;
    const InputGrid g = test_support::random_unit_grid(rng, n);
    const auto blocks = ffb::dense_h_inverse_blocks(g, k);
    const ffb::BandedDiffOp op = ffb::build_diff_op(g, k + 1);
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    const Matrix dense_op = op.to_dense();
    double rel = 0.0;
    for (std::size_t i = 0; i < dense_op.rows(); ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double want = dense_op(i, j) / kfact;
        const double denom = std::max(1.0, std::abs(want));
        rel = std::max(rel, std::abs(blocks.diff_block(i, j) - want) / denom);
      }
    CHECK(rel < 1e-12);
  }
}

TEST_CASE("leading columns of G and H span the same space") {
  std::mt19937_64 rng(47);
  for (int k = 1; k <= 5; ++k) {
    const std::size_t n = 64;
    const InputGrid g = test_support::random_unit_grid(rng, n);
    const Matrix h = ffb::dense_falling_factorial(g, k).entries;
    const Matrix gp = ffb::dense_truncated_power(g, k).entries;

    // Orthonormalize the first k+1 columns of G, then project each leading
    // column of H onto that span and check the residual.
    std::vector<std::vector<double>> q;
    for (int j = 0; j <= k; ++j) {
      std::vector<double> col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = gp(i, j);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& prev : q) {
          double dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += col[i] * prev[i];
          for (std::size_t i = 0; i < n; ++i) col[i] -= dot * prev[i];
        }
      double nrm = 0.0;
      for (double v : col) nrm += v * v;
      nrm = std::sqrt(nrm);
      for (double& v : col) v /= nrm;
      q.push_back(std::move(col));
    }
    for (int j = 0; j <= k; ++j) {
      std::vector<double> col(n), resid(n);
      for (std::size_t i = 0; i < n; ++i) resid[i] = col[i] = h(i, j);
      for (const auto& prev : q) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += col[i] * prev[i];
        for (std::size_t i = 0; i < n; ++i) resid[i] -= dot * prev[i];
      }
      double rn = 0.0, cn = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        rn += resid[i] * resid[i];
        cn += col[i] * col[i];
      }
      CHECK(std::sqrt(rn) <= 1e-8 * std::max(1.0, std::sqrt(cn)));
    }
  }
}

TEST_CASE("dense constructions reject undersized and oversized input") {
  CHECK_THROWS_AS(ffb::dense_falling_factorial(iota_grid(3), 2), ffb::TooFewPointsError);
  CHECK_THROWS_AS(ffb::dense_truncated_power(iota_grid(3), 5), ffb::TooFewPointsError);
  CHECK_THROWS_AS(ffb::dense_h_inverse_blocks(iota_grid(4), 3), ffb::TooFewPointsError);
  CHECK_THROWS_AS(ffb::dense_falling_factorial(iota_grid(ffb::kMaxDenseSize + 1), 1),
                  ffb::SizeCapError);
}
