// Test-only oracles, independent of the library implementation paths they
// check.
#pragma once

#include <cmath>
#include <random>
#include <vector>

namespace oracle {

// Marsaglia-Tsang Gamma(shape, rate) sampler.
inline double gamma_draw(std::mt19937_64& rng, double shape, double rate) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double boost = 1.0;
  double a = shape;
  if (a < 1.0) {
    const double u = unif(rng);
    boost = std::pow(u, 1.0 / a);
    a += 1.0;
  }
  const double d = a - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = unif(rng);
    if (u < 1.0 - 0.0331 * x * x * x * x ||
        std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return boost * d * v / rate;
  }
}

inline std::vector<double> gamma_sample(std::uint64_t seed, std::size_t n,
                                        double shape, double rate) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = gamma_draw(rng, shape, rate);
  return out;
}

// Euler-Mascheroni constant from the defining limit with the Euler-
// Maclaurin correction terms.
inline double euler_gamma_series(std::size_t n = 1000000) {
  double sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) sum += 1.0 / static_cast<double>(k);
  const double nn = static_cast<double>(n);
  return sum - std::log(nn) - 0.5 / nn + 1.0 / (12.0 * nn * nn);
}

// Scalar root find by bisection; f(lo) and f(hi) must bracket.
template <typename F>
double bisect(const F& f, double lo, double hi, int iters = 200) {
  double flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double mean(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

inline double variance(const std::vector<double>& x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

// Composite Simpson integration, deliberately unrelated to the library's
// adaptive Gauss-Kronrod path.
template <typename F>
double simpson(const F& f, double a, double b, int n = 2000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle
