#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "ffb/errors.hpp"

namespace ffb {

// How duplicate sample locations are handled on construction.
struct TiePolicy {
  enum class Kind { reject, jitter };
  Kind kind = Kind::reject;
  double epsilon = 0.0;
  std::uint64_t seed = 0;

  static TiePolicy reject() { return TiePolicy{}; }
  static TiePolicy jitter(double epsilon, std::uint64_t seed) {
    return TiePolicy{Kind::jitter, epsilon, seed};
  }
};

// Strictly increasing sample locations x_1 < ... < x_n.  Immutable after
// construction; every other component consumes one of these.
class InputGrid {
 public:
  // Sorts and validates.  Under TiePolicy::jitter, exact duplicates receive
  // a seeded perturbation of magnitude < epsilon and the result is re-sorted.
  static InputGrid from_values(std::vector<double> raw,
                               const TiePolicy& policy = TiePolicy::reject()) {
    if (raw.empty()) throw EmptyInputError("from_values: empty input");
    for (double v : raw) {
      if (!std::isfinite(v)) throw NonFiniteError("from_values: non-finite value");
    }
    std::sort(raw.begin(), raw.end());
    if (policy.kind == TiePolicy::Kind::jitter) {
      std::mt19937_64 rng(policy.seed);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (int round = 0; round < 8 && has_ties(raw); ++round) {
        std::size_t i = 0;
        while (i < raw.size()) {
          std::size_t j = i + 1;
          while (j < raw.size() && raw[j] == raw[i]) ++j;
          if (j - i > 1) {
            for (std::size_t t = i; t < j; ++t) raw[t] += policy.epsilon * unit(rng);
          }
          i = j;
        }
        std::sort(raw.begin(), raw.end());
      }
    }
    if (has_ties(raw)) throw TiesPresentError("from_values: duplicate sample locations");
    return InputGrid(std::move(raw));
  }

  // Accepts an already strictly increasing sequence without re-sorting.
  static InputGrid from_sorted(std::vector<double> pts) {
    if (pts.empty()) throw EmptyInputError("from_sorted: empty input");
    for (double v : pts) {
      if (!std::isfinite(v)) throw NonFiniteError("from_sorted: non-finite value");
    }
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (!(pts[i - 1] < pts[i]))
        throw TiesPresentError("from_sorted: points not strictly increasing");
    }
    return InputGrid(std::move(pts));
  }

  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  std::span<const double> points() const { return points_; }

 private:
  explicit InputGrid(std::vector<double> pts) : points_(std::move(pts)) {}

  static bool has_ties(const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end()) != v.end();
  }

  std::vector<double> points_;
};

// Largest gap between consecutive points, with the convention x_0 = origin.
// argmax_index is 1-based: gap i is x_i - x_{i-1}.
struct GapReport {
  double max_gap = 0.0;
  std::size_t argmax_index = 0;
};

inline GapReport max_gap(const InputGrid& grid, double origin) {
  if (origin > grid.front())
    throw OriginAboveFirstPointError("max_gap: origin exceeds first point");
  GapReport report{grid.front() - origin, 1};
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double gap = grid[i] - grid[i - 1];
    if (gap > report.max_gap) {
      report.max_gap = gap;
      report.argmax_index = i + 1;
    }
  }
  return report;
}

// Affine map sending min -> 0 and max -> 1.
inline InputGrid rescale_unit(const InputGrid& grid) {
  if (grid.size() < 2) throw DegenerateRangeError("rescale_unit: need at least two points");
  const double lo = grid.front();
  const double span = grid.back() - grid.front();
  std::vector<double> pts(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) pts[i] = (grid[i] - lo) / span;
  pts.front() = 0.0;
  pts.back() = 1.0;
  return InputGrid::from_sorted(std::move(pts));
}

}  // namespace ffb
