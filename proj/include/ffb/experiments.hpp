#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ffb/basis_ref.hpp"
#include "ffb/dense.hpp"
#include "ffb/errors.hpp"
#include "ffb/grid.hpp"
#include "ffb/io.hpp"
#include "ffb/kstest.hpp"
#include "ffb/random.hpp"
#include "ffb/transforms.hpp"
#include "ffb/trendfilter.hpp"

namespace ffb {

// Monte Carlo harness.  Every repetition draws its generator from
// derive_seed(seed, index), and per-repetition results are written into
// index-addressed slots before any aggregation, so outputs are identical at
// any thread count.

inline unsigned harness_threads() {
  if (const char* env = std::getenv("FALLFACT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(std::min(v, 256L));
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

template <typename F>
void parallel_for_index(std::size_t count, F&& body) {
  const std::size_t nt = std::min<std::size_t>(harness_threads(), count);
  if (nt <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Named sampling distributions

struct Distribution {
  enum class Kind { normal, student_t, laplace, uniform };
  Kind kind = Kind::normal;
  double a = 0.0;  // mu or lower bound
  double b = 1.0;  // sigma, scale, or upper bound
  int df = 3;

  double sample(Rng& rng) const {
    switch (kind) {
      case Kind::normal: return rng.normal(a, b);
      case Kind::student_t: return rng.student_t(df);
      case Kind::laplace: return rng.laplace(a, b);
      case Kind::uniform: return rng.uniform(a, b);
    }
    return 0.0;
  }

  std::string name() const {
    switch (kind) {
      case Kind::normal: return "normal(" + fmt_g17(a) + "," + fmt_g17(b) + ")";
      case Kind::student_t: return "t(" + std::to_string(df) + ")";
      case Kind::laplace: return "laplace(" + fmt_g17(a) + "," + fmt_g17(b) + ")";
      case Kind::uniform: return "uniform(" + fmt_g17(a) + "," + fmt_g17(b) + ")";
    }
    return "?";
  }

  static Distribution normal(double mu, double sigma) {
    return Distribution{Kind::normal, mu, sigma, 0};
  }
  static Distribution student_t(int df) { return Distribution{Kind::student_t, 0, 1, df}; }
  static Distribution laplace(double mu, double scale) {
    return Distribution{Kind::laplace, mu, scale, 0};
  }
  static Distribution uniform(double a, double b) {
    return Distribution{Kind::uniform, a, b, 0};
  }
};

// ---------------------------------------------------------------------------
// Maximum gap of sorted uniform draws vs the high-probability bound

struct MaxGapResult {
  int n = 0;
  double density_floor = 1.0;
  int trials = 0;
  std::uint64_t seed = 0;
  double bound = 0.0;          // 22 log(n) / (p0 n)
  int violations = 0;
  double violation_rate = 0.0;
  double max_delta_seen = 0.0;
  std::vector<double> deltas;  // one per trial
};

inline MaxGapResult simulate_max_gap(int n, double density_floor, int trials,
                                     std::uint64_t seed) {
  if (n < 2) throw InvalidOrderError("simulate_max_gap: need n >= 2");
  if (trials < 1) throw InvalidOrderError("simulate_max_gap: need trials >= 1");
  MaxGapResult out;
  out.n = n;
  out.density_floor = density_floor;
  out.trials = trials;
  out.seed = seed;
  out.bound = 22.0 * std::log(static_cast<double>(n)) / (density_floor * n);
  out.deltas.assign(trials, 0.0);
  parallel_for_index(static_cast<std::size_t>(trials), [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    std::vector<double> x = sorted_uniform(rng, static_cast<std::size_t>(n));
    double delta = x[0];  // gap from the origin x_0 = 0
    for (std::size_t i = 1; i < x.size(); ++i) delta = std::max(delta, x[i] - x[i - 1]);
    out.deltas[t] = delta;
  });
  for (double d : out.deltas) {
    out.max_delta_seen = std::max(out.max_delta_seen, d);
    if (d > out.bound) ++out.violations;
  }
  out.violation_rate = static_cast<double>(out.violations) / trials;
  return out;
}

// ---------------------------------------------------------------------------
// Trend filtering convergence rate

// Fixed simulation truth: an order-k piecewise polynomial with three interior
// knots at 0.25, 0.5, 0.75, rescaled so max |f0| = 1 on [0, 1].  The total
// variation of its k-th derivative is bounded for every k.
inline double rate_truth_raw(double x, int k) {
  static constexpr double kKnots[3] = {0.25, 0.5, 0.75};
  static constexpr double kCoef[3] = {2.5, -5.0, 3.8};
  double f = 0.0;
  for (int j = 0; j < 3; ++j) {
    if (x < kKnots[j]) break;
    double hinge = 1.0;
    for (int l = 0; l < k; ++l) hinge *= (x - kKnots[j]);
    f += kCoef[j] * hinge;
  }
  return f;
}

inline double rate_truth(double x, int k) {
  static thread_local int cached_k = -1;
  static thread_local double cached_scale = 1.0;
  if (cached_k != k) {
    double m = 0.0;
    for (int i = 0; i <= 4096; ++i) m = std::max(m, std::abs(rate_truth_raw(i / 4096.0, k)));
    cached_scale = 1.0 / m;
    cached_k = k;
  }
  return rate_truth_raw(x, k) * cached_scale;
}

struct TfRateSpec {
  int k = 0;
  std::vector<int> n_list;
  int reps = 20;
  double sigma = 0.25;
  std::uint64_t seed = 1;
  int calib_points = 13;       // lambda grid size for the one-time calibration
  double lambda_constant = 0;  // > 0 skips calibration and uses this c
  SolverConfig solver{0.0, 1e-5, 1e-9, 8000, true};
};

struct TfRateRow {
  int n = 0;
  int rep = 0;
  double lambda = 0.0;
  double mse = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct TfRateResult {
  TfRateSpec spec;
  double lambda_constant = 0.0;  // calibrated c in lambda = c * n^{1/(2k+3)}
  double slope = 0.0;            // least-squares slope of log MSE vs log n
  double theory_slope = 0.0;     // -(2k+2)/(2k+3)
  std::vector<double> mean_mse;  // aligned with spec.n_list
  std::vector<TfRateRow> rows;
};

namespace detail {

struct RateDraw {
  InputGrid grid;
  std::vector<double> y;
  std::vector<double> truth;
};

inline RateDraw make_rate_draw(int n, int k, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = rng.uniform();
  InputGrid grid = InputGrid::from_values(std::move(x), TiePolicy::jitter(1e-13, seed));
  std::vector<double> truth(n), y(n);
  for (int i = 0; i < n; ++i) {
    truth[i] = rate_truth(grid[i], k);
    y[i] = truth[i] + sigma * rng.normal();
  }
  return RateDraw{std::move(grid), std::move(y), std::move(truth)};
}

inline double mse_against(const std::vector<double>& beta, const std::vector<double>& truth) {
  double s = 0.0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const double d = beta[i] - truth[i];
    s += d * d;
  }
  return s / static_cast<double>(beta.size());
}

}  // namespace detail

inline TfRateResult simulate_tf_rate(const TfRateSpec& spec) {
  if (spec.n_list.empty()) throw InvalidOrderError("simulate_tf_rate: empty n list");
  for (std::size_t i = 0; i < spec.n_list.size(); ++i) {
    if (spec.n_list[i] < spec.k + 2)
      throw TooFewPointsError("simulate_tf_rate: n below k+2");
    if (i > 0 && spec.n_list[i] <= spec.n_list[i - 1])
      throw InvalidOrderError("simulate_tf_rate: n list must ascend");
  }
  const double rate_exp = 1.0 / (2.0 * spec.k + 3.0);
  TfRateResult out;
  out.spec = spec;
  out.theory_slope = -(2.0 * spec.k + 2.0) / (2.0 * spec.k + 3.0);

  auto draw_seed = [&](int n, int rep) {
    return derive_seed(spec.seed, (static_cast<std::uint64_t>(n) << 20) ^
                                      static_cast<std::uint64_t>(rep));
  };

  // One-time constant calibration at the smallest n: evaluate a descending
  // lambda grid anchored at the median lambda_max and keep the minimizer of
  // the mean MSE.
  double c = spec.lambda_constant;
  const int n0 = spec.n_list.front();
  if (c <= 0.0) {
    std::vector<detail::RateDraw> draws;
    draws.reserve(spec.reps);
    for (int r = 0; r < spec.reps; ++r)
      draws.push_back(detail::make_rate_draw(n0, spec.k, spec.sigma, draw_seed(n0, r)));
    std::vector<double> lmaxes(spec.reps);
    for (int r = 0; r < spec.reps; ++r)
      lmaxes[r] = lambda_max(draws[r].y, draws[r].grid, spec.k);
    std::vector<double> sorted_lmax = lmaxes;
    std::sort(sorted_lmax.begin(), sorted_lmax.end());
    const double anchor = sorted_lmax[sorted_lmax.size() / 2];

    const int g = std::max(spec.calib_points, 2);
    std::vector<double> grid_lambda(g);
    for (int i = 0; i < g; ++i) {
      const double t = static_cast<double>(i) / (g - 1);
      grid_lambda[i] = anchor * std::pow(1e-4, t);  // anchor down to 1e-4 * anchor
    }
    std::vector<double> calib_mse(static_cast<std::size_t>(g) * spec.reps, 0.0);
    parallel_for_index(calib_mse.size(), [&](std::size_t idx) {
      const int gi = static_cast<int>(idx) / spec.reps;
      const int r = static_cast<int>(idx) % spec.reps;
      TrendFilterProblem p{draws[r].y, draws[r].grid, spec.k, grid_lambda[gi]};
      const TrendFilterFit f = fit(p, spec.solver);
      calib_mse[idx] = detail::mse_against(f.beta, draws[r].truth);
    });
    std::vector<double> mean_mse(g, 0.0);
    for (int gi = 0; gi < g; ++gi) {
      for (int r = 0; r < spec.reps; ++r)
        mean_mse[gi] += calib_mse[static_cast<std::size_t>(gi) * spec.reps + r];
      mean_mse[gi] /= spec.reps;
    }
    int best = 0;
    for (int i = 1; i < g; ++i)
      if (mean_mse[i] < mean_mse[best]) best = i;
    c = grid_lambda[best] / std::pow(static_cast<double>(n0), rate_exp);
  }
  out.lambda_constant = c;

  // Main sweep
  const std::size_t total = spec.n_list.size() * spec.reps;
  out.rows.assign(total, TfRateRow{});
  parallel_for_index(total, [&](std::size_t idx) {
    const std::size_t ni = idx / spec.reps;
    const int rep = static_cast<int>(idx % spec.reps);
    const int n = spec.n_list[ni];
    const double lam = c * std::pow(static_cast<double>(n), rate_exp);
    detail::RateDraw draw = detail::make_rate_draw(n, spec.k, spec.sigma, draw_seed(n, rep));
    TrendFilterProblem p{draw.y, draw.grid, spec.k, lam};
    const TrendFilterFit f = fit(p, spec.solver);
    if (!f.converged)
      throw NotConvergedError("simulate_tf_rate: solver did not converge at n=" +
                              std::to_string(n) + " rep=" + std::to_string(rep));
    TfRateRow row;
    row.n = n;
    row.rep = rep;
    row.lambda = lam;
    row.mse = detail::mse_against(f.beta, draw.truth);
    row.iterations = f.iterations;
    row.converged = f.converged;
    out.rows[idx] = row;
  });

  out.mean_mse.assign(spec.n_list.size(), 0.0);
  for (std::size_t ni = 0; ni < spec.n_list.size(); ++ni) {
    for (int r = 0; r < spec.reps; ++r) out.mean_mse[ni] += out.rows[ni * spec.reps + r].mse;
    out.mean_mse[ni] /= spec.reps;
  }

  // log-log slope by least squares
  const std::size_t m = spec.n_list.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double lx = std::log(static_cast<double>(spec.n_list[i]));
    const double ly = std::log(out.mean_mse[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

// ---------------------------------------------------------------------------
// ROC curves for the higher order KS tests

struct RocSpec {
  std::string name = "roc";
  Distribution p = Distribution::normal(0, 1);
  Distribution q = Distribution::normal(0, 1);
  int n = 100;            // per-sample size
  int reps = 200;         // total draws; half null, half alternative
  std::vector<int> k_list{0, 1, 2, 3};
  std::vector<KsMethod> methods{KsMethod::h};
  std::uint64_t seed = 1;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  int k = 0;
  KsMethod method = KsMethod::h;
  double auc = 0.0;
  std::vector<RocPoint> points;
};

struct RocTable {
  RocSpec spec;
  // statistics[rep * arms + arm_index] per (k, method); see stat_index
  std::vector<std::vector<double>> statistics;  // [curve][rep]
  std::vector<std::uint8_t> is_alternative;     // [rep]
  std::vector<RocCurve> curves;
};

namespace detail {

inline RocCurve roc_from_stats(const std::vector<double>& null_stats,
                               const std::vector<double>& alt_stats) {
  std::vector<double> pooled = null_stats;
  pooled.insert(pooled.end(), alt_stats.begin(), alt_stats.end());
  std::sort(pooled.begin(), pooled.end());
  pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  // sweep threshold from high to low; at threshold t the test rejects when
  // the statistic is >= t
  for (std::size_t i = pooled.size(); i-- > 0;) {
    const double t = pooled[i];
    double fp = 0, tp = 0;
    for (double v : null_stats) fp += (v >= t) ? 1.0 : 0.0;
    for (double v : alt_stats) tp += (v >= t) ? 1.0 : 0.0;
    curve.points.push_back({fp / null_stats.size(), tp / alt_stats.size()});
  }
  if (curve.points.back().fpr != 1.0 || curve.points.back().tpr != 1.0)
    curve.points.push_back({1.0, 1.0});
  double auc = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    auc += (b.fpr - a.fpr) * 0.5 * (a.tpr + b.tpr);
  }
  curve.auc = auc;
  return curve;
}

}  // namespace detail

inline RocTable simulate_roc(const RocSpec& spec) {
  if (spec.reps < 2 || spec.reps % 2 != 0)
    throw InvalidOrderError("simulate_roc: reps must be even and >= 2");
  for (int k : spec.k_list) {
    if (2 * spec.n < k + 2) throw TooFewPointsError("simulate_roc: n too small for k");
  }
  const std::size_t curves = spec.k_list.size() * spec.methods.size();
  RocTable table;
  table.spec = spec;
  table.statistics.assign(curves, std::vector<double>(spec.reps, 0.0));
  table.is_alternative.assign(spec.reps, 0);
  for (int r = spec.reps / 2; r < spec.reps; ++r) table.is_alternative[r] = 1;

  parallel_for_index(static_cast<std::size_t>(spec.reps), [&](std::size_t rep) {
    Rng rng(derive_seed(spec.seed, rep));
    const bool alt = table.is_alternative[rep] != 0;
    std::vector<double> xs(spec.n), ys(spec.n);
    for (auto& v : xs) v = spec.p.sample(rng);
    for (auto& v : ys) v = alt ? spec.q.sample(rng) : spec.p.sample(rng);
    const TwoSample joined = join_samples(
        xs, ys, TiePolicy::jitter(1e-12, derive_seed(spec.seed, rep + spec.reps)));
    std::size_t ci = 0;
    for (int k : spec.k_list) {
      for (KsMethod method : spec.methods) {
        table.statistics[ci][rep] = ks_statistic(joined, k, method).statistic;
        ++ci;
      }
    }
  });

  std::size_t ci = 0;
  for (int k : spec.k_list) {
    for (KsMethod method : spec.methods) {
      std::vector<double> null_stats, alt_stats;
      for (int r = 0; r < spec.reps; ++r) {
        (table.is_alternative[r] ? alt_stats : null_stats).push_back(table.statistics[ci][r]);
      }
      RocCurve curve = detail::roc_from_stats(null_stats, alt_stats);
      curve.k = k;
      curve.method = method;
      table.curves.push_back(std::move(curve));
      ++ci;
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Transform runtime comparison

struct BenchRow {
  int n = 0;
  int k = 0;
  double h_cycle_seconds = 0.0;
  double g_cycle_seconds = 0.0;  // 0 when the dense arm was skipped
  bool has_g = false;
};

// Median wall time of one forward+inverse cycle: the in-place transforms on
// one arm, dense basis multiply + prefactored solve on the other.  The dense
// factorization happens once per size, outside the timed region.
inline std::vector<BenchRow> bench_transforms(const std::vector<int>& n_list, int k,
                                              int reps) {
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  for (int n : n_list) {
    if (n < k + 2) throw TooFewPointsError("bench_transforms: n below k+2");
    BenchRow row;
    row.n = n;
    row.k = k;

    Rng rng(derive_seed(0x9e3779b9, static_cast<std::uint64_t>(n)));
    std::vector<double> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = i + 0.4 * rng.uniform(-1.0, 1.0);
    const InputGrid grid = InputGrid::from_values(std::move(pts));

    // values stay exactly zero through every sweep, so repeated cycles cost
    // identical work with no drift
    std::vector<double> buf(static_cast<std::size_t>(n), 0.0);
    const int inner = std::max(1, (1 << 21) / n);
    std::vector<double> samples;
    samples.reserve(reps);
    for (int r = 0; r < std::max(1, reps); ++r) {
      const auto t0 = clock::now();
      for (int it = 0; it < inner; ++it) {
        apply_h(buf, grid, k);
        apply_h_inverse(buf, grid, k);
      }
      const auto t1 = clock::now();
      samples.push_back(std::chrono::duration<double>(t1 - t0).count() / inner);
    }
    std::sort(samples.begin(), samples.end());
    row.h_cycle_seconds = samples[samples.size() / 2];

    if (static_cast<std::size_t>(n) <= kMaxDenseSize) {
      const InputGrid unit = rescale_unit(grid);
      const DenseBasis g = dense_truncated_power(unit, k);
      const LuFactor lu{g.entries};
      std::vector<double> y(static_cast<std::size_t>(n));
      for (auto& v : y) v = rng.uniform(-1.0, 1.0);
      samples.clear();
      volatile double sink = 0.0;
      for (int r = 0; r < std::max(1, reps); ++r) {
        const auto t0 = clock::now();
        const std::vector<double> gy = matvec(g.entries, y);
        const std::vector<double> back = lu.solve(gy);
        const auto t1 = clock::now();
        samples.push_back(std::chrono::duration<double>(t1 - t0).count());
        sink = sink + back[0];
      }
      (void)sink;
      std::sort(samples.begin(), samples.end());
      row.g_cycle_seconds = samples[samples.size() / 2];
      row.has_g = true;
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Serialization: one CSV row per measurement plus a JSON summary

inline std::string maxgap_csv(const std::vector<MaxGapResult>& results) {
  std::string out = "n,trial,delta,bound,violation\n";
  for (const auto& r : results) {
    for (int t = 0; t < r.trials; ++t) {
      out += std::to_string(r.n) + "," + std::to_string(t) + "," + fmt_g17(r.deltas[t]) +
             "," + fmt_g17(r.bound) + "," + (r.deltas[t] > r.bound ? "1" : "0") + "\n";
    }
  }
  return out;
}

inline std::string maxgap_json(const std::vector<MaxGapResult>& results) {
  JsonWriter w;
  w.begin_object();
  w.field("experiment", "maxgap");
  if (!results.empty()) {
    w.field("seed", results.front().seed);
    w.field("density_floor", results.front().density_floor);
  }
  w.begin_array("results");
  for (const auto& r : results) {
    w.begin_object();
    w.field("n", r.n);
    w.field("trials", r.trials);
    w.field("bound", r.bound);
    w.field("violations", r.violations);
    w.field("violation_rate", r.violation_rate);
    w.field("max_delta", r.max_delta_seen);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

inline std::string tfrate_csv(const TfRateResult& r) {
  std::string out = "k,n,rep,lambda,mse,iterations,converged\n";
  for (const auto& row : r.rows) {
    out += std::to_string(r.spec.k) + "," + std::to_string(row.n) + "," +
           std::to_string(row.rep) + "," + fmt_g17(row.lambda) + "," + fmt_g17(row.mse) +
           "," + std::to_string(row.iterations) + "," + (row.converged ? "1" : "0") + "\n";
  }
  return out;
}

inline std::string tfrate_json(const TfRateResult& r) {
  JsonWriter w;
  w.begin_object();
  w.field("experiment", "tfrate");
  w.field("k", r.spec.k);
  w.field("sigma", r.spec.sigma);
  w.field("reps", r.spec.reps);
  w.field("seed", r.spec.seed);
  w.field("lambda_constant", r.lambda_constant);
  w.field("slope", r.slope);
  w.field("theory_slope", r.theory_slope);
  w.begin_array("n");
  for (int n : r.spec.n_list) w.element(n);
  w.end_array();
  w.begin_array("mean_mse");
  for (double m : r.mean_mse) w.element(m);
  w.end_array();
  w.end_object();
  return w.str();
}

inline std::string roc_stats_csv(const RocTable& t) {
  std::string out = "name,k,method,rep,arm,statistic\n";
  std::size_t ci = 0;
  for (int k : t.spec.k_list) {
    for (KsMethod method : t.spec.methods) {
      for (int r = 0; r < t.spec.reps; ++r) {
        out += t.spec.name + "," + std::to_string(k) + "," + method_name(method) + "," +
               std::to_string(r) + "," + (t.is_alternative[r] ? "alt" : "null") + "," +
               fmt_g17(t.statistics[ci][r]) + "\n";
      }
      ++ci;
    }
  }
  return out;
}

inline std::string roc_curve_csv(const RocTable& t) {
  std::string out = "name,k,method,fpr,tpr\n";
  for (const auto& c : t.curves) {
    for (const auto& pt : c.points) {
      out += t.spec.name + "," + std::to_string(c.k) + "," + method_name(c.method) + "," +
             fmt_g17(pt.fpr) + "," + fmt_g17(pt.tpr) + "\n";
    }
  }
  return out;
}

inline std::string roc_json(const RocTable& t) {
  JsonWriter w;
  w.begin_object();
  w.field("experiment", "roc");
  w.field("name", t.spec.name);
  w.field("p", t.spec.p.name());
  w.field("q", t.spec.q.name());
  w.field("n", t.spec.n);
  w.field("reps", t.spec.reps);
  w.field("seed", t.spec.seed);
  w.begin_array("curves");
  for (const auto& c : t.curves) {
    w.begin_object();
    w.field("k", c.k);
    w.field("method", method_name(c.method));
    w.field("auc", c.auc);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "n,k,h_cycle_seconds,g_cycle_seconds\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.k) + "," +
           fmt_g17(r.h_cycle_seconds) + ",";
    if (r.has_g) out += fmt_g17(r.g_cycle_seconds);
    out += "\n";
  }
  return out;
}

}  // namespace ffb
