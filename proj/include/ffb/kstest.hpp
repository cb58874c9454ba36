#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffb/basis_ref.hpp"
#include "ffb/errors.hpp"
#include "ffb/grid.hpp"
#include "ffb/random.hpp"
#include "ffb/transforms.hpp"

namespace ffb {

// Two-sample Kolmogorov-Smirnov statistics of order k.  The order-0 case is
// the classic max ECDF discrepancy; for k >= 1 the step test functions are
// replaced by the order-k basis columns over the joined sample, which makes
// the test sensitive to higher order (tail) differences.

// Joined sorted samples with membership indicators.
struct TwoSample {
  std::vector<double> z;          // strictly increasing join of both samples
  std::vector<std::uint8_t> is_x; // 1 where z came from X; the complement is Y
  std::size_t m = 0;              // |X|
  std::size_t n = 0;              // |Y|

  std::size_t size() const { return z.size(); }
};

enum class KsMethod { h, g };

inline std::string method_name(KsMethod m) { return m == KsMethod::h ? "h" : "g"; }

struct KsResult {
  double statistic = 0.0;
  int order = 0;
  KsMethod method = KsMethod::h;
  std::optional<double> pvalue;
  std::optional<int> permutations;
  std::optional<std::uint64_t> seed;
};

struct KsOptions {
  // Jointly rescale the joined sample to [0, 1] before computing order
  // k >= 1 statistics.  Raw-scale higher order statistics are
  // scale-dependent; the order-0 statistic never depends on scale.
  bool rescale_unit = true;
};

inline TwoSample join_samples(std::span<const double> x, std::span<const double> y,
                              const TiePolicy& policy = TiePolicy::reject()) {
  if (x.empty() || y.empty()) throw EmptyInputError("join_samples: empty sample");
  std::vector<std::pair<double, std::uint8_t>> zipped;
  zipped.reserve(x.size() + y.size());
  for (double v : x) {
    if (!std::isfinite(v)) throw NonFiniteError("join_samples: non-finite value");
    zipped.emplace_back(v, std::uint8_t{1});
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw NonFiniteError("join_samples: non-finite value");
    zipped.emplace_back(v, std::uint8_t{0});
  }
  std::stable_sort(zipped.begin(), zipped.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  auto tied = [&]() {
    for (std::size_t i = 1; i < zipped.size(); ++i)
      if (zipped[i].first == zipped[i - 1].first) return true;
    return false;
  };
  if (tied()) {
    if (policy.kind == TiePolicy::Kind::reject)
      throw TiesPresentError("join_samples: tied values in joined sample");
    std::mt19937_64 rng(policy.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int round = 0; round < 8 && tied(); ++round) {
      std::size_t i = 0;
      while (i < zipped.size()) {
        std::size_t j = i + 1;
        while (j < zipped.size() && zipped[j].first == zipped[i].first) ++j;
        if (j - i > 1) {
          for (std::size_t t = i; t < j; ++t) zipped[t].first += policy.epsilon * unit(rng);
        }
        i = j;
      }
      std::stable_sort(zipped.begin(), zipped.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    if (tied()) throw TiesPresentError("join_samples: ties survived jitter");
  }

  TwoSample s;
  s.m = x.size();
  s.n = y.size();
  s.z.reserve(zipped.size());
  s.is_x.reserve(zipped.size());
  for (const auto& [v, fx] : zipped) {
    s.z.push_back(v);
    s.is_x.push_back(fx);
  }
  return s;
}

namespace detail {

// +1/m on X members, -1/n on Y members.
inline std::vector<double> signed_indicator(const TwoSample& s) {
  std::vector<double> u(s.size());
  const double am = 1.0 / static_cast<double>(s.m);
  const double an = 1.0 / static_cast<double>(s.n);
  for (std::size_t i = 0; i < s.size(); ++i) u[i] = s.is_x[i] ? am : -an;
  return u;
}

inline InputGrid ks_grid(const TwoSample& s, int k, const KsOptions& opt) {
  InputGrid grid = InputGrid::from_sorted(s.z);
  if (k >= 1 && opt.rescale_unit) grid = rescale_unit(grid);
  return grid;
}

}  // namespace detail

// ||(H_2)^T (1_X/m - 1_Y/n)||_inf via the in-place transpose transform:
// O(k(m+n)) time, no matrix formed.  The first k+1 coordinates of the
// transformed vector correspond to the unpenalized polynomial columns and
// are excluded from the max.
inline KsResult ks_statistic_h(const TwoSample& s, int k, const KsOptions& opt = {}) {
  const std::size_t total = s.size();
  if (total < static_cast<std::size_t>(k) + 2)
    throw TooFewPointsError("ks_statistic_h: need m+n >= k+2");
  const InputGrid grid = detail::ks_grid(s, k, opt);
  std::vector<double> u = detail::signed_indicator(s);
  apply_h_transpose(u, grid, k);
  double stat = 0.0;
  for (std::size_t i = static_cast<std::size_t>(k) + 1; i < total; ++i)
    stat = std::max(stat, std::abs(u[i]));
  return KsResult{stat, k, KsMethod::h, std::nullopt, std::nullopt, std::nullopt};
}

// ||(G_2)^T (1_X/m - 1_Y/n)||_inf through the dense truncated power matrix;
// quadratic-cost reference, capped at the dense size limit.
inline KsResult ks_statistic_g(const TwoSample& s, int k, const KsOptions& opt = {}) {
  const std::size_t total = s.size();
  if (total < static_cast<std::size_t>(k) + 2)
    throw TooFewPointsError("ks_statistic_g: need m+n >= k+2");
  if (total > kMaxDenseSize) throw SizeCapError("ks_statistic_g: dense cap exceeded");
  const InputGrid grid = detail::ks_grid(s, k, opt);
  const std::vector<double> u = detail::signed_indicator(s);
  const DenseBasis g = dense_truncated_power(grid, k);
  double stat = 0.0;
  for (std::size_t j = static_cast<std::size_t>(k) + 1; j < total; ++j) {
    double dot = 0.0;
    for (std::size_t i = 0; i < total; ++i) dot += g.entries(i, j) * u[i];
    stat = std::max(stat, std::abs(dot));
  }
  return KsResult{stat, k, KsMethod::g, std::nullopt, std::nullopt, std::nullopt};
}

inline KsResult ks_statistic(const TwoSample& s, int k, KsMethod method,
                             const KsOptions& opt = {}) {
  return method == KsMethod::h ? ks_statistic_h(s, k, opt) : ks_statistic_g(s, k, opt);
}

// Permutation calibration: B random relabelings of the joined sample that
// preserve the group sizes, p = (1 + #{T_b >= T_obs}) / (B + 1).  Replicate
// b draws its generator from derive_seed(seed, b), so the result does not
// depend on evaluation order.
inline KsResult permutation_pvalue(const TwoSample& s, int k, KsMethod method, int b_count,
                                   std::uint64_t seed, const KsOptions& opt = {}) {
  if (b_count < 1) throw InvalidOrderError("permutation_pvalue: need B >= 1");
  const KsResult observed = ks_statistic(s, k, method, opt);
  std::size_t exceed = 0;
  TwoSample perm = s;
  for (int b = 0; b < b_count; ++b) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
    perm.is_x = s.is_x;
    // Fisher-Yates on the membership flags
    for (std::size_t i = perm.is_x.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng.below(i));
      std::swap(perm.is_x[i - 1], perm.is_x[j]);
    }
    const KsResult rep = ks_statistic(perm, k, method, opt);
    if (rep.statistic >= observed.statistic) ++exceed;
  }
  KsResult out = observed;
  out.pvalue = static_cast<double>(1 + exceed) / static_cast<double>(b_count + 1);
  out.permutations = b_count;
  out.seed = seed;
  return out;
}

}  // namespace ffb
