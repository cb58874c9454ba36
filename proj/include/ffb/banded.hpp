#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ffb/diffops.hpp"
#include "ffb/errors.hpp"

namespace ffb {

// Symmetric positive definite matrix with lower half-bandwidth p, stored by
// rows: entry(i, d) holds A(i, i-d) for d = 0..min(i, p).
class BandedSpd {
 public:
  BandedSpd(std::size_t n, std::size_t half_bandwidth)
      : n_(n), p_(half_bandwidth), a_(n * (half_bandwidth + 1), 0.0) {}

  std::size_t size() const { return n_; }
  std::size_t half_bandwidth() const { return p_; }

  double& at(std::size_t i, std::size_t d) { return a_[i * (p_ + 1) + d]; }
  double at(std::size_t i, std::size_t d) const { return a_[i * (p_ + 1) + d]; }

  // A x, exploiting symmetry.
  std::vector<double> multiply(std::span<const double> x) const {
    if (x.size() != n_) throw DimensionMismatchError("BandedSpd::multiply: size mismatch");
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      y[i] += at(i, 0) * x[i];
      const std::size_t dmax = std::min(i, p_);
      for (std::size_t d = 1; d <= dmax; ++d) {
        const double v = at(i, d);
        y[i] += v * x[i - d];
        y[i - d] += v * x[i];
      }
    }
    return y;
  }

 private:
  std::size_t n_, p_;
  std::vector<double> a_;
};

// shift * I + rho * D^T D for a banded difference operator D; half-bandwidth
// equals the operator order.
inline BandedSpd gram_dtd(const BandedDiffOp& op, double rho, double shift) {
  const std::size_t w = op.bandwidth();
  BandedSpd a(op.cols(), w - 1);
  for (std::size_t i = 0; i < op.cols(); ++i) a.at(i, 0) = shift;
  for (std::size_t r = 0; r < op.rows(); ++r) {
    auto c = op.row(r);
    for (std::size_t t1 = 0; t1 < w; ++t1) {
      for (std::size_t t2 = 0; t2 <= t1; ++t2) {
        a.at(r + t1, t1 - t2) += rho * c[t1] * c[t2];
      }
    }
  }
  return a;
}

// shift * I + rho * D^T diag(weights) D.
inline BandedSpd gram_dtd_weighted(const BandedDiffOp& op, std::span<const double> weights,
                                   double rho, double shift) {
  if (weights.size() != op.rows())
    throw DimensionMismatchError("gram_dtd_weighted: weight count mismatch");
  const std::size_t w = op.bandwidth();
  BandedSpd a(op.cols(), w - 1);
  for (std::size_t i = 0; i < op.cols(); ++i) a.at(i, 0) = shift;
  for (std::size_t r = 0; r < op.rows(); ++r) {
    auto c = op.row(r);
    const double f = rho * weights[r];
    for (std::size_t t1 = 0; t1 < w; ++t1) {
      for (std::size_t t2 = 0; t2 <= t1; ++t2) {
        a.at(r + t1, t1 - t2) += f * c[t1] * c[t2];
      }
    }
  }
  return a;
}

// D D^T; rows r and s overlap only when |r - s| <= order.
inline BandedSpd gram_ddt(const BandedDiffOp& op) {
  const std::size_t w = op.bandwidth();
  const std::size_t m = op.rows();
  BandedSpd a(m, w - 1);
  for (std::size_t r = 0; r < m; ++r) {
    auto cr = op.row(r);
    const std::size_t dmax = std::min(r, w - 1);
    for (std::size_t d = 0; d <= dmax; ++d) {
      auto cs = op.row(r - d);  // starts d columns to the left of row r
      double s = 0.0;
      for (std::size_t t = 0; t + d < w; ++t) s += cr[t] * cs[t + d];
      a.at(r, d) = s;
    }
  }
  return a;
}

// Banded Cholesky factorization with symmetric diagonal equilibration:
// factors S A S = L L^T with S = diag(1/sqrt(A_ii)), which keeps the
// factorization well-behaved when rows of A span many orders of magnitude.
class BandedCholesky {
 public:
  explicit BandedCholesky(const BandedSpd& a)
      : n_(a.size()), p_(a.half_bandwidth()), l_(n_ * (p_ + 1), 0.0), scale_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      const double d = a.at(i, 0);
      if (!(d > 0.0)) throw NotSpdError("BandedCholesky: nonpositive diagonal");
      scale_[i] = 1.0 / std::sqrt(d);
    }
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t dmax = std::min(i, p_);
      for (std::size_t d = dmax + 1; d-- > 0;) {
        const std::size_t j = i - d;  // column
        double s = a.at(i, d) * scale_[i] * scale_[j];
        const std::size_t lo = (i >= p_) ? i - p_ : 0;
        for (std::size_t t = lo; t < j; ++t) {
          s -= lat(i, i - t) * lat(j, j - t);  // t >= i-p keeps both in band
        }
        if (d == 0) {
          if (!(s > 0.0)) throw NotSpdError("BandedCholesky: matrix not positive definite");
          lat(i, 0) = std::sqrt(s);
        } else {
          lat(i, d) = s / lat(j, 0);
        }
      }
    }
  }

  // Solves A x = b in place.
  void solve_in_place(std::span<double> b) const {
    if (b.size() != n_) throw DimensionMismatchError("BandedCholesky::solve: size mismatch");
    for (std::size_t i = 0; i < n_; ++i) b[i] *= scale_[i];
    for (std::size_t i = 0; i < n_; ++i) {
      double s = b[i];
      const std::size_t dmax = std::min(i, p_);
      for (std::size_t d = 1; d <= dmax; ++d) s -= lat(i, d) * b[i - d];
      b[i] = s / lat(i, 0);
    }
    for (std::size_t i = n_; i-- > 0;) {
      double s = b[i];
      const std::size_t dmax = std::min(n_ - 1 - i, p_);
      for (std::size_t d = 1; d <= dmax; ++d) s -= lat(i + d, d) * b[i + d];
      b[i] = s / lat(i, 0);
    }
    for (std::size_t i = 0; i < n_; ++i) b[i] *= scale_[i];
  }

  std::vector<double> solve(std::span<const double> b) const {
    std::vector<double> x(b.begin(), b.end());
    solve_in_place(x);
    return x;
  }

 private:
  double& lat(std::size_t i, std::size_t d) { return l_[i * (p_ + 1) + d]; }
  double lat(std::size_t i, std::size_t d) const { return l_[i * (p_ + 1) + d]; }

  std::size_t n_, p_;
  std::vector<double> l_;      // L(i, i-d) at (i, d), for the equilibrated matrix
  std::vector<double> scale_;  // S diagonal
};

// Solve with iterative refinement, keeping the iterate with the smallest
// residual.  Refinement usually pushes the residual b - A x to the rounding
// floor; the rollback guards the extreme conditioning regime where a
// correction step would diverge instead.
inline std::vector<double> solve_refined(const BandedSpd& a, const BandedCholesky& chol,
                                         std::span<const double> b, int steps = 2) {
  auto residual = [&](const std::vector<double>& x) {
    std::vector<double> r = a.multiply(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    return r;
  };
  auto norm_inf = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };
  std::vector<double> best = chol.solve(b);
  std::vector<double> r = residual(best);
  double best_norm = norm_inf(r);
  std::vector<double> x = best;
  for (int s = 0; s < steps; ++s) {
    chol.solve_in_place(r);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += r[i];
    r = residual(x);
    const double rn = norm_inf(r);
    if (rn < best_norm) {
      best = x;
      best_norm = rn;
    }
  }
  return best;
}

}  // namespace ffb
