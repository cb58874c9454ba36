#pragma once

#include <cstddef>
#include <vector>

#include "ffb/dense.hpp"
#include "ffb/errors.hpp"
#include "ffb/grid.hpp"

namespace ffb {

// Dense reference constructions.  These exist as correctness oracles for the
// fast transforms and the banded operators; they are O(n^2) in memory and are
// capped at kMaxDenseSize points by contract.
inline constexpr std::size_t kMaxDenseSize = 4096;

enum class BasisKind { truncated_power, falling_factorial };

struct DenseBasis {
  BasisKind kind;
  int order;
  Matrix entries;  // entries(i, j) = value of basis function j at point i
};

namespace detail {

inline void check_dense_inputs(const InputGrid& grid, int k, const char* where) {
  if (k < 0) throw InvalidOrderError(std::string(where) + ": negative order");
  if (grid.size() > kMaxDenseSize) throw SizeCapError(std::string(where) + ": dense cap exceeded");
  if (grid.size() < static_cast<std::size_t>(k) + 2)
    throw TooFewPointsError(std::string(where) + ": need n >= k+2");
}

}  // namespace detail

// Interior knots t_1 < ... < t_{n-k-1}: the grid points that remain after
// dropping k/2+1 at the left and k/2 at the right boundary for even k, and
// (k+1)/2 on both sides for odd k.
inline std::vector<double> knots(const InputGrid& grid, int k) {
  detail::check_dense_inputs(grid, k, "knots");
  const std::size_t n = grid.size();
  std::size_t first, last;  // 0-based inclusive range
  if (k % 2 == 0) {
    first = static_cast<std::size_t>(k / 2) + 1;
    last = n - static_cast<std::size_t>(k / 2) - 1;
  } else {
    first = static_cast<std::size_t>((k + 1) / 2);
    last = n - static_cast<std::size_t>((k + 1) / 2) - 1;
  }
  std::vector<double> t;
  t.reserve(n - k - 1);
  for (std::size_t i = first; i <= last; ++i) t.push_back(grid[i]);
  return t;
}

// Falling factorial basis matrix H.  Column j <= k+1 is the product
// prod_{l<j} (x - x_l); column k+1+j is prod_{l=1..k} (x - x_{j+l}) gated by
// the indicator x >= x_{j+k}.  Empty products are 1, so column 1 is all ones.
inline DenseBasis dense_falling_factorial(const InputGrid& grid, int k) {
  detail::check_dense_inputs(grid, k, "dense_falling_factorial");
  const std::size_t n = grid.size();
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid[i];
    double prod = 1.0;
    h(i, 0) = 1.0;
    for (std::size_t j = 1; j <= static_cast<std::size_t>(k); ++j) {
      prod *= (x - grid[j - 1]);
      h(i, j) = prod;  // h_{j+1}(x), product of the first j gaps to x
    }
  }
  for (std::size_t jj = 0; jj + k + 1 < n; ++jj) {
    // 0-based column k+1+jj.  Rows at or before jj+k are zero: the product
    // vanishes at grid[jj+k] and the indicator kills everything earlier, so
    // the first (possibly) nonzero row is jj+k+1 and H is lower triangular.
    for (std::size_t i = jj + static_cast<std::size_t>(k) + 1; i < n; ++i) {
      const double x = grid[i];
      double prod = 1.0;
      for (int l = 1; l <= k; ++l) prod *= (x - grid[jj + l]);
      h(i, static_cast<std::size_t>(k) + 1 + jj) = prod;
    }
  }
  return DenseBasis{BasisKind::falling_factorial, k, std::move(h)};
}

// Truncated power basis matrix G: monomials 1, x, ..., x^k followed by hinge
// powers (x - t_j)_+^k at the interior knots.
inline DenseBasis dense_truncated_power(const InputGrid& grid, int k) {
  detail::check_dense_inputs(grid, k, "dense_truncated_power");
  const std::size_t n = grid.size();
  const std::vector<double> t = knots(grid, k);
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid[i];
    double pow = 1.0;
    for (std::size_t j = 0; j <= static_cast<std::size_t>(k); ++j) {
      g(i, j) = pow;
      pow *= x;
    }
    for (std::size_t jj = 0; jj < t.size(); ++jj) {
      if (x < t[jj]) break;  // knots ascend, so later columns stay zero
      double hinge = 1.0;
      for (int l = 0; l < k; ++l) hinge *= (x - t[jj]);
      g(i, static_cast<std::size_t>(k) + 1 + jj) = hinge;
    }
  }
  return DenseBasis{BasisKind::truncated_power, k, std::move(g)};
}

// Dense difference operator of order m over the grid, built by the product
// recursion: D^(1) is the (n-1) x n first-difference matrix and
// D^(m+1) = D^(1) * m * inv(Delta^(m)) * D^(m), with Delta^(m) the diagonal
// of m-hop gaps.  Reference path; the banded module computes the same object
// without dense intermediates.
inline Matrix dense_difference_op(const InputGrid& grid, int m) {
  if (m < 1) throw InvalidOrderError("dense_difference_op: order must be >= 1");
  if (grid.size() > kMaxDenseSize) throw SizeCapError("dense_difference_op: dense cap exceeded");
  const std::size_t n = grid.size();
  if (n < static_cast<std::size_t>(m) + 1)
    throw TooFewPointsError("dense_difference_op: need n >= m+1");
  Matrix d(n - 1, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d(i, i) = -1.0;
    d(i, i + 1) = 1.0;
  }
  for (int mm = 1; mm < m; ++mm) {
    // scaled = mm * inv(Delta^(mm)) * D^(mm), then difference adjacent rows
    const std::size_t rows = d.rows();
    Matrix next(rows - 1, n);
    for (std::size_t i = 0; i + 1 < rows; ++i) {
      const double g0 = grid[i + mm] - grid[i];
      const double g1 = grid[i + 1 + mm] - grid[i + 1];
      for (std::size_t j = 0; j < n; ++j) {
        next(i, j) = mm * (d(i + 1, j) / g1 - d(i, j) / g0);
      }
    }
    d = std::move(next);
  }
  return d;
}

// The two blocks whose vertical stack is the inverse of H: a (k+1) x n block
// C and the scaled difference operator D^(k+1) / k!.
struct InverseBlocks {
  Matrix c_block;
  Matrix diff_block;

  Matrix stacked() const {
    Matrix s(c_block.rows() + diff_block.rows(), c_block.cols());
    for (std::size_t i = 0; i < c_block.rows(); ++i)
      for (std::size_t j = 0; j < c_block.cols(); ++j) s(i, j) = c_block(i, j);
    for (std::size_t i = 0; i < diff_block.rows(); ++i)
      for (std::size_t j = 0; j < diff_block.cols(); ++j)
        s(c_block.rows() + i, j) = diff_block(i, j);
    return s;
  }
};

// C row 1 is e_1; row i+1 is the first row of inv(Delta^(i)) * D^(i) scaled
// by 1/(i-1)!.  Stacking [C; D^(k+1)/k!] inverts dense_falling_factorial.
inline InverseBlocks dense_h_inverse_blocks(const InputGrid& grid, int k) {
  detail::check_dense_inputs(grid, k, "dense_h_inverse_blocks");
  const std::size_t n = grid.size();
  Matrix c(static_cast<std::size_t>(k) + 1, n);
  c(0, 0) = 1.0;
  double fact = 1.0;  // (i-1)! as i advances
  for (int i = 1; i <= k; ++i) {
    if (i > 1) fact *= (i - 1);
    Matrix di = dense_difference_op(grid, i);
    const double hop = grid[i] - grid[0];  // first diagonal entry of Delta^(i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = di(0, j) / (hop * fact);
  }
  double kfact = 1.0;
  for (int i = 2; i <= k; ++i) kfact *= i;
  Matrix diff = dense_difference_op(grid, k + 1);
  for (std::size_t i = 0; i < diff.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) diff(i, j) /= kfact;
  return InverseBlocks{std::move(c), std::move(diff)};
}

}  // namespace ffb
