#ifndef MOVEPRINT_RNG_HPP
#define MOVEPRINT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace moveprint {

// splitmix64 mixing step; used to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Stream-splitting rule: (seed, a) and (seed, a, b) map to substream seeds.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t a) {
  return splitmix64(splitmix64(seed) ^ splitmix64(a));
}

inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(split_seed(seed, a) ^ splitmix64(~b));
}

// Deterministic sampler over std::mt19937_64. The engine's bit stream is
// pinned by the standard, but the <random> distributions are not, so every
// transform here is spelled out explicitly. Seeded runs reproduce bit-exactly
// on any conforming implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0,1) with 53 random mantissa bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0,n). Modulo bias is below 2^-53 for any n this project uses.
  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(engine_() % n);
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1)));
  }

  // Box-Muller, caching the second variate.
  double normal(double mean = 0.0, double sigma = 1.0) {
    if (have_spare_) {
      have_spare_ = false;
      return mean + sigma * spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return mean + sigma * r * std::cos(theta);
  }

  // Marsaglia-Tsang; alpha < 1 is boosted through gamma(alpha+1) * u^(1/alpha).
  double gamma(double alpha) {
    if (alpha < 1.0) {
      double u = uniform01();
      while (u <= 0.0) u = uniform01();
      return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
    }
    const double d = alpha - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      const double u = uniform01();
      if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Dirichlet via normalized gamma draws. alpha and out must be equally sized.
  void dirichlet(std::span<const double> alpha, std::span<double> out) {
    double total = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      out[i] = gamma(alpha[i]);
      total += out[i];
    }
    if (total <= 0.0) {
      const double uniform = 1.0 / static_cast<double>(alpha.size());
      for (auto& w : out) w = uniform;
      return;
    }
    for (auto& w : out) w /= total;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace moveprint

#endif  // MOVEPRINT_RNG_HPP
