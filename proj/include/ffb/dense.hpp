#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ffb/errors.hpp"

namespace ffb {

// Row-major dense matrix.  Used by the reference constructions and the
// quadratic-cost comparison arms; production paths never form matrices.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_.data() + i * cols_, cols_);
  }
  std::span<double> row(std::size_t i) {
    return std::span<double>(data_.data() + i * cols_, cols_);
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  // Max row sum of absolute values (the infinity operator norm).
  double norm_inf() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
      m = std::max(m, s);
    }
    return m;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

inline std::vector<double> matvec(const Matrix& a, std::span<const double> x) {
  if (x.size() != a.cols()) throw DimensionMismatchError("matvec: size mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatchError("matmul: size mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double ail = a(i, l);
      if (ail == 0.0) continue;
      auto br = b.row(l);
      auto cr = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) cr[j] += ail * br[j];
    }
  }
  return c;
}

// LU factorization with partial pivoting.
class LuFactor {
 public:
  explicit LuFactor(Matrix a) : lu_(std::move(a)), piv_(lu_.rows()) {
    if (lu_.rows() != lu_.cols()) throw DimensionMismatchError("LuFactor: matrix not square");
    const std::size_t n = lu_.rows();
    for (std::size_t i = 0; i < n; ++i) piv_[i] = i;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      double best = std::abs(lu_(c, c));
      for (std::size_t r = c + 1; r < n; ++r) {
        double v = std::abs(lu_(r, c));
        if (v > best) { best = v; p = r; }
      }
      if (best == 0.0) throw SingularMatrixError("LuFactor: singular matrix");
      if (p != c) {
        std::swap(piv_[p], piv_[c]);
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(p, j), lu_(c, j));
      }
      const double d = lu_(c, c);
      for (std::size_t r = c + 1; r < n; ++r) {
        const double f = lu_(r, c) / d;
        lu_(r, c) = f;
        if (f == 0.0) continue;
        auto src = lu_.row(c);
        auto dst = lu_.row(r);
        for (std::size_t j = c + 1; j < n; ++j) dst[j] -= f * src[j];
      }
    }
  }

  std::vector<double> solve(std::span<const double> b) const {
    const std::size_t n = lu_.rows();
    if (b.size() != n) throw DimensionMismatchError("LuFactor::solve: size mismatch");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[piv_[i]];
    for (std::size_t i = 1; i < n; ++i) {
      double s = x[i];
      auto r = lu_.row(i);
      for (std::size_t j = 0; j < i; ++j) s -= r[j] * x[j];
      x[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = x[ii];
      auto r = lu_.row(ii);
      for (std::size_t j = ii + 1; j < n; ++j) s -= r[j] * x[j];
      x[ii] = s / r[ii];
    }
    return x;
  }

  // Columns of the full inverse, assembled one solve at a time.
  Matrix inverse() const {
    const std::size_t n = lu_.rows();
    Matrix inv(n, n);
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      e[j] = 1.0;
      std::vector<double> col = solve(e);
      for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
      e[j] = 0.0;
    }
    return inv;
  }

 private:
  Matrix lu_;
  std::vector<std::size_t> piv_;
};

}  // namespace ffb
