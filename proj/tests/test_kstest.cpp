#include <catch2/catch_amalgamated.hpp>

#include "ffb/kstest.hpp"
#include "ffb/random.hpp"
#include "test_support.hpp"

using ffb::KsMethod;
using ffb::KsResult;
using ffb::TwoSample;

TEST_CASE("join interleaves and tracks membership") {
  const TwoSample s = ffb::join_samples(std::vector<double>{1.0, 3.0},
                                        std::vector<double>{2.0, 4.0});
  CHECK(s.z == std::vector<double>{1, 2, 3, 4});
  CHECK(s.is_x == std::vector<std::uint8_t>{1, 0, 1, 0});
  CHECK(s.m == 2);
  CHECK(s.n == 2);
}

TEST_CASE("join rejects ties under the default policy") {
  CHECK_THROWS_AS(
      ffb::join_samples(std::vector<double>{1.0}, std::vector<double>{1.0}),
      ffb::TiesPresentError);
}

TEST_CASE("join preserves sizes for any input") {
  std::mt19937_64 rng(193);
  for (int rep = 0; rep < 10; ++rep) {
    const auto x = test_support::random_vector(rng, 5 + rng() % 40);
    const auto y = test_support::random_vector(rng, 5 + rng() % 40);
    const TwoSample s = ffb::join_samples(x, y, ffb::TiePolicy::jitter(1e-12, rep));
    CHECK(s.m == x.size());
    CHECK(s.n == y.size());
    CHECK(s.z.size() == x.size() + y.size());
    std::size_t count_x = 0;
    for (auto f : s.is_x) count_x += f;
    CHECK(count_x == s.m);
    for (std::size_t i = 1; i < s.z.size(); ++i) CHECK(s.z[i - 1] < s.z[i]);
  }
}

TEST_CASE("order zero statistic on the interleaved example") {
  const TwoSample s = ffb::join_samples(std::vector<double>{1.0, 3.0},
                                        std::vector<double>{2.0, 4.0});
  const KsResult h = ffb::ks_statistic_h(s, 0);
  CHECK(h.statistic == Catch::Approx(0.5).margin(1e-15));
  const KsResult g = ffb::ks_statistic_g(s, 0);
  CHECK(g.statistic == Catch::Approx(h.statistic).margin(1e-15));
}

TEST_CASE("identical samples give a near-zero statistic") {
  std::mt19937_64 rng(197);
  const auto x = test_support::random_vector(rng, 40);
  const TwoSample s = ffb::join_samples(x, x, ffb::TiePolicy::jitter(1e-11, 3));
  // At order zero the ECDFs of two identical 40-point samples still differ by
  // exactly 1/40 between the members of each jittered pair; for k >= 1 the
  // test functions are continuous and only the jitter magnitude survives.
  CHECK(ffb::ks_statistic_h(s, 0).statistic <= 1.0 / 40.0 + 1e-12);
  for (int k = 1; k <= 3; ++k) {
    const KsResult r = ffb::ks_statistic_h(s, k);
    CHECK(r.statistic <= 1e-8);
  }
}

TEST_CASE("order zero reduces to the ECDF statistic") {
  std::mt19937_64 rng(199);
  for (int rep = 0; rep < 100; ++rep) {
    ffb::Rng gen(rng());
    const std::size_t m = 20 + rng() % 100, n = 20 + rng() % 100;
    std::vector<double> x(m), y(n);
    for (auto& v : x) v = gen.normal();
    for (auto& v : y) v = gen.normal(0.3, 1.2);
    const TwoSample s = ffb::join_samples(x, y);
    const double direct = test_support::classic_ks_ecdf(x, y);
    CHECK(std::abs(ffb::ks_statistic_h(s, 0).statistic - direct) <= 1e-12);
    CHECK(std::abs(ffb::ks_statistic_g(s, 0).statistic - direct) <= 1e-12);
  }
}

TEST_CASE("order zero statistic is invariant under monotone transforms") {
  std::mt19937_64 rng(211);
  ffb::Rng gen(17);
  std::vector<double> x(30), y(25);
  for (auto& v : x) v = gen.normal();
  for (auto& v : y) v = gen.normal(0.5, 1.0);
  const double base =
      ffb::ks_statistic_h(ffb::join_samples(x, y), 0).statistic;
  for (auto& v : x) v = std::exp(v);
  for (auto& v : y) v = std::exp(v);
  const double mapped =
      ffb::ks_statistic_h(ffb::join_samples(x, y), 0).statistic;
  CHECK(mapped == Catch::Approx(base).margin(1e-14));
}

TEST_CASE("h and g forms stay within the gap bound") {
  std::mt19937_64 rng(223);
  int checked = 0;
  for (int rep = 0; rep < 40; ++rep) {
    ffb::Rng gen(rng());
    std::vector<double> x(50), y(50);
    for (auto& v : x) v = gen.normal();
    for (auto& v : y) v = gen.normal(0.0, 1.5);
    const TwoSample s = ffb::join_samples(x, y, ffb::TiePolicy::jitter(1e-12, rep));
    const ffb::InputGrid unit = ffb::rescale_unit(ffb::InputGrid::from_sorted(s.z));
    const double delta = ffb::max_gap(unit, 0.0).max_gap;
    for (int k = 1; k <= 3; ++k) {
      const double h = ffb::ks_statistic_h(s, k).statistic;
      const double g = ffb::ks_statistic_g(s, k).statistic;
      CHECK(std::abs(g - h) <= 2.0 * k * k * delta + 1e-12);
      ++checked;
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("permutation p-value formula edges") {
  std::mt19937_64 rng(227);
  ffb::Rng gen(5);
  std::vector<double> x(30), y(30);
  for (auto& v : x) v = gen.normal(3.0, 0.5);  // far separated: observed max
  for (auto& v : y) v = gen.normal(-3.0, 0.5);
  const TwoSample s = ffb::join_samples(x, y);
  const KsResult r = ffb::permutation_pvalue(s, 0, KsMethod::h, 99, 42);
  REQUIRE(r.pvalue.has_value());
  CHECK(*r.pvalue == Catch::Approx(1.0 / 100.0));
  CHECK(*r.permutations == 99);

  const KsResult r2 = ffb::permutation_pvalue(s, 0, KsMethod::h, 99, 42);
  CHECK(*r2.pvalue == *r.pvalue);  // determinism

  ffb::Rng gen2(9);
  std::vector<double> a(25), b(25);
  for (auto& v : a) v = gen2.uniform();
  for (auto& v : b) v = gen2.uniform();
  const KsResult rnull = ffb::permutation_pvalue(
      ffb::join_samples(a, b, ffb::TiePolicy::jitter(1e-12, 1)), 1, KsMethod::h, 199, 7);
  CHECK(*rnull.pvalue > 0.0);
  CHECK(*rnull.pvalue <= 1.0);
}

TEST_CASE("transform work for the statistic grows linearly") {
  ffb::Rng gen(31);
  for (int k : {0, 3}) {
    std::uint64_t ops[2];
    int idx = 0;
    for (const std::size_t half : {100u, 200u}) {
      std::vector<double> x(half), y(half);
      for (auto& v : x) v = gen.normal();
      for (auto& v : y) v = gen.normal();
      const TwoSample s = ffb::join_samples(x, y, ffb::TiePolicy::jitter(1e-12, idx));
      const ffb::InputGrid grid = ffb::rescale_unit(ffb::InputGrid::from_sorted(s.z));
      std::vector<double> u(s.size());
      for (std::size_t i = 0; i < s.size(); ++i)
        u[i] = s.is_x[i] ? 1.0 / s.m : -1.0 / s.n;
      ffb::TransformStats stats;
      ffb::apply_h_transpose(u, grid, k, &stats);
      ops[idx++] = stats.total();
    }
    CHECK(static_cast<double>(ops[1]) / ops[0] < 2.5);
  }
}

TEST_CASE("statistic argument validation") {
  const TwoSample s = ffb::join_samples(std::vector<double>{1.0, 3.0},
                                        std::vector<double>{2.0, 4.0});
  CHECK_THROWS_AS(ffb::ks_statistic_h(s, 3), ffb::TooFewPointsError);
  CHECK_THROWS_AS(
      ffb::join_samples(std::vector<double>{}, std::vector<double>{1.0}),
      ffb::EmptyInputError);
  CHECK_THROWS_AS(ffb::permutation_pvalue(s, 0, KsMethod::h, 0, 1),
                  ffb::InvalidOrderError);
}
