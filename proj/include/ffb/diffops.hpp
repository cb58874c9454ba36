#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ffb/dense.hpp"
#include "ffb/errors.hpp"
#include "ffb/grid.hpp"

namespace ffb {

// Diagonal of Delta^(k): the k-hop gaps x_{k+i} - x_i, i = 1..n-k.
inline std::vector<double> gap_scale(const InputGrid& grid, int k) {
  if (k < 1) throw InvalidOrderError("gap_scale: hop must be >= 1");
  const std::size_t n = grid.size();
  if (n < static_cast<std::size_t>(k) + 1) throw TooFewPointsError("gap_scale: need n >= k+1");
  std::vector<double> d(n - k);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = grid[i + k] - grid[i];
  return d;
}

// Banded discrete difference operator of order m over an arbitrary grid:
// an (n-m) x n matrix whose row i is supported on columns i..i+m.  Acts as a
// gap-adjusted m-th divided difference (times m!) on sequences over the grid.
class BandedDiffOp {
 public:
  BandedDiffOp(int order, std::size_t rows, std::size_t cols, std::vector<double> coeff)
      : order_(order), rows_(rows), cols_(cols), coeff_(std::move(coeff)) {}

  int order() const { return order_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t bandwidth() const { return static_cast<std::size_t>(order_) + 1; }

  std::size_t row_start(std::size_t i) const { return i; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(coeff_.data() + i * (order_ + 1), order_ + 1);
  }

  // Banded product D v, length rows().
  std::vector<double> apply(std::span<const double> v) const {
    if (v.size() != cols_) throw LengthMismatchError("BandedDiffOp::apply: length mismatch");
    std::vector<double> out(rows_);
    const std::size_t w = bandwidth();
    for (std::size_t i = 0; i < rows_; ++i) {
      const double* c = coeff_.data() + i * w;
      double s = 0.0;
      for (std::size_t t = 0; t < w; ++t) s += c[t] * v[i + t];
      out[i] = s;
    }
    return out;
  }

  // Banded product D^T u, length cols().  Adjoint of apply.
  std::vector<double> apply_transpose(std::span<const double> u) const {
    if (u.size() != rows_)
      throw LengthMismatchError("BandedDiffOp::apply_transpose: length mismatch");
    std::vector<double> out(cols_, 0.0);
    const std::size_t w = bandwidth();
    for (std::size_t i = 0; i < rows_; ++i) {
      const double ui = u[i];
      if (ui == 0.0) continue;
      const double* c = coeff_.data() + i * w;
      for (std::size_t t = 0; t < w; ++t) out[i + t] += c[t] * ui;
    }
    return out;
  }

  Matrix to_dense() const {
    Matrix d(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      auto r = row(i);
      for (std::size_t t = 0; t < r.size(); ++t) d(i, i + t) = r[t];
    }
    return d;
  }

 private:
  int order_;
  std::size_t rows_, cols_;
  std::vector<double> coeff_;  // rows_ x (order_+1), row i spans columns i..i+order_
};

// Builds D^(m) band-wise: D^(1) has rows (-1, 1), and each step composes
// D^(m+1) = D^(1) * m * inv(Delta^(m)) * D^(m) on the coefficient windows,
// never forming a dense intermediate.
inline BandedDiffOp build_diff_op(const InputGrid& grid, int m) {
  if (m < 1) throw InvalidOrderError("build_diff_op: order must be >= 1");
  const std::size_t n = grid.size();
  if (n < static_cast<std::size_t>(m) + 1) throw TooFewPointsError("build_diff_op: need n >= m+1");

  std::vector<double> coeff((n - 1) * 2);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    coeff[2 * i] = -1.0;
    coeff[2 * i + 1] = 1.0;
  }
  std::size_t rows = n - 1;
  std::size_t width = 2;

  for (int mm = 1; mm < m; ++mm) {
    const std::size_t new_rows = rows - 1;
    const std::size_t new_width = width + 1;
    std::vector<double> next(new_rows * new_width, 0.0);
    for (std::size_t i = 0; i < new_rows; ++i) {
      const double g0 = grid[i + mm] - grid[i];
      const double g1 = grid[i + 1 + mm] - grid[i + 1];
      const double* r0 = coeff.data() + i * width;
      const double* r1 = coeff.data() + (i + 1) * width;
      double* out = next.data() + i * new_width;
      // row i spans cols i..i+mm, row i+1 spans i+1..i+1+mm; the combined
      // window is cols i..i+mm+1
      for (std::size_t t = 0; t < width; ++t) out[t] -= mm * r0[t] / g0;
      for (std::size_t t = 0; t < width; ++t) out[t + 1] += mm * r1[t] / g1;
    }
    coeff = std::move(next);
    rows = new_rows;
    width = new_width;
  }
  return BandedDiffOp(m, rows, n, std::move(coeff));
}

// Copy of the operator with row i multiplied by factors[i].
inline BandedDiffOp scale_rows(const BandedDiffOp& op, std::span<const double> factors) {
  if (factors.size() != op.rows())
    throw LengthMismatchError("scale_rows: factor count mismatch");
  const std::size_t w = op.bandwidth();
  std::vector<double> coeff(op.rows() * w);
  for (std::size_t i = 0; i < op.rows(); ++i) {
    auto r = op.row(i);
    for (std::size_t t = 0; t < w; ++t) coeff[i * w + t] = r[t] * factors[i];
  }
  return BandedDiffOp(op.order(), op.rows(), op.cols(), std::move(coeff));
}

inline std::vector<double> apply_diff(const BandedDiffOp& op, std::span<const double> v) {
  return op.apply(v);
}

inline std::vector<double> apply_diff_transpose(const BandedDiffOp& op,
                                                std::span<const double> u) {
  return op.apply_transpose(u);
}

}  // namespace ffb
