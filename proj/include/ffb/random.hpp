#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace ffb {

// splitmix64 mixing; used to derive independent per-task seeds from a
// user-facing seed so results do not depend on execution order.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s = seed ^ (0xd1342543de82ef95ULL * (stream + 1));
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x165667b19e3779f9ULL + (a << 6) + (a >> 2));
}

// mt19937_64 core with explicit, portable samplers on top: the engine output
// is pinned by the standard, and every distribution below is a fixed
// function of that stream, so sequences are reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Standard normal via Box-Muller; the spare draw is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  double normal(double mu, double sigma) { return mu + sigma * normal(); }

  // Laplace via inverse CDF.
  double laplace(double mu, double b) {
    const double u = uniform() - 0.5;
    return mu - b * (u < 0.0 ? -1.0 : 1.0) * std::log(1.0 - 2.0 * std::abs(u));
  }

  // Student t with integer df, as normal / sqrt(chi2/df).
  double student_t(int df) {
    const double z = normal();
    double chi2 = 0.0;
    for (int i = 0; i < df; ++i) {
      const double g = normal();
      chi2 += g * g;
    }
    return z / std::sqrt(chi2 / df);
  }

  std::uint64_t bits() { return eng_(); }

  // Index uniform on [0, bound), by rejection to avoid modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v = eng_();
    while (v >= limit) v = eng_();
    return v % bound;
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline std::vector<double> sorted_uniform(Rng& rng, std::size_t n, double a = 0.0,
                                          double b = 1.0) {
  std::vector<double> x(n);
  for (auto& v : x) v = rng.uniform(a, b);
  std::sort(x.begin(), x.end());
  return x;
}

}  // namespace ffb
