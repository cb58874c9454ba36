#pragma once

#include <cstdint>
#include <span>

#include "ffb/errors.hpp"
#include "ffb/grid.hpp"

namespace ffb {

// In-place multiplication by the falling factorial basis matrix H, its
// inverse, its transpose, and its inverse transpose.  Each routine makes
// k+1 passes over the tail of the buffer, costing O(n(k+1)) additions and
// multiplications and O(1) auxiliary storage; no matrix is ever formed.
//
// Every pass is one of four primitive sweeps: cumulative sum, adjacent
// difference, or an entrywise scale by the i-hop gaps x_j - x_{j-i} (forward
// direction multiplies, inverse direction divides).  The transpose variants
// run the sums from the right.
//
// Numerical behaviour: the sweeps are exact mutual inverses in exact
// arithmetic, but intermediate magnitudes grow like n^k, so roundtrip error
// is of order n^k * machine epsilon.  Callers that need high-order
// roundtrips should keep n^k well below 1/epsilon.

// Orders beyond this are numerically meaningless in double precision.
inline constexpr int kMaxTransformOrder = 12;

// Optional operation counters, filled when a caller passes a non-null
// pointer.  adds counts additions/subtractions, muls multiplications and
// divisions, including the gap evaluations.
struct TransformStats {
  std::uint64_t adds = 0;
  std::uint64_t muls = 0;
  std::uint64_t total() const { return adds + muls; }
};

namespace detail {

inline void check_transform_args(std::span<double> y, const InputGrid& grid, int k,
                                 const char* where) {
  if (k < 0 || k > kMaxTransformOrder)
    throw InvalidOrderError(std::string(where) + ": order out of range");
  if (y.size() != grid.size())
    throw LengthMismatchError(std::string(where) + ": vector/grid length mismatch");
  if (grid.size() < static_cast<std::size_t>(k) + 2)
    throw TooFewPointsError(std::string(where) + ": need n >= k+2");
}

}  // namespace detail

// y <- H y.  For i = k down to 0: cumulative sum of y[i..n), then for i != 0
// scale y[i..n) entrywise by the i-hop gaps.
inline void apply_h(std::span<double> y, const InputGrid& grid, int k,
                    TransformStats* stats = nullptr) {
  detail::check_transform_args(y, grid, k, "apply_h");
  const std::size_t n = y.size();
  const double* x = grid.points().data();
  for (int i = k; i >= 0; --i) {
    const std::size_t s = static_cast<std::size_t>(i);
    for (std::size_t j = s + 1; j < n; ++j) y[j] += y[j - 1];
    if (i != 0) {
      for (std::size_t j = s; j < n; ++j) y[j] *= (x[j] - x[j - s]);
    }
    if (stats) {
      stats->adds += (n - s - 1) + (i != 0 ? n - s : 0);  // sums + gap subtractions
      if (i != 0) stats->muls += n - s;
    }
  }
}

// y <- H^{-1} y.  Divides out the gap scalings and takes adjacent
// differences, unwinding apply_h pass by pass.
inline void apply_h_inverse(std::span<double> y, const InputGrid& grid, int k,
                            TransformStats* stats = nullptr) {
  detail::check_transform_args(y, grid, k, "apply_h_inverse");
  const std::size_t n = y.size();
  const double* x = grid.points().data();
  for (int i = 0; i <= k; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    if (i != 0) {
      for (std::size_t j = s; j < n; ++j) y[j] /= (x[j] - x[j - s]);
    }
    for (std::size_t j = n; j-- > s + 1;) y[j] -= y[j - 1];
    if (stats) {
      stats->adds += (n - s - 1) + (i != 0 ? n - s : 0);
      if (i != 0) stats->muls += n - s;
    }
  }
}

// y <- H^T y.  Same gap scalings as apply_h, with the cumulative sums taken
// from the right.
inline void apply_h_transpose(std::span<double> y, const InputGrid& grid, int k,
                              TransformStats* stats = nullptr) {
  detail::check_transform_args(y, grid, k, "apply_h_transpose");
  const std::size_t n = y.size();
  const double* x = grid.points().data();
  for (int i = 0; i <= k; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    if (i != 0) {
      for (std::size_t j = s; j < n; ++j) y[j] *= (x[j] - x[j - s]);
    }
    for (std::size_t j = n - 1; j-- > s;) y[j] += y[j + 1];
    if (stats) {
      stats->adds += (n - s - 1) + (i != 0 ? n - s : 0);
      if (i != 0) stats->muls += n - s;
    }
  }
}

// y <- (H^T)^{-1} y.  Right-to-left differences followed by gap divisions.
inline void apply_h_transpose_inverse(std::span<double> y, const InputGrid& grid, int k,
                                      TransformStats* stats = nullptr) {
  detail::check_transform_args(y, grid, k, "apply_h_transpose_inverse");
  const std::size_t n = y.size();
  const double* x = grid.points().data();
  for (int i = k; i >= 0; --i) {
    const std::size_t s = static_cast<std::size_t>(i);
    for (std::size_t j = s; j + 1 < n; ++j) y[j] -= y[j + 1];
    if (i != 0) {
      for (std::size_t j = s; j < n; ++j) y[j] /= (x[j] - x[j - s]);
    }
    if (stats) {
      stats->adds += (n - s - 1) + (i != 0 ? n - s : 0);
      if (i != 0) stats->muls += n - s;
    }
  }
}

}  // namespace ffb
