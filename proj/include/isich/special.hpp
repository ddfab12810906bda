#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "isich/errors.hpp"

namespace isich {

// Digamma psi(x) for x > 0: recurrence up the axis, then the asymptotic
// series in 1/x^2. Good to ~1e-13 relative.
inline double digamma(double x) {
  if (!(x > 0.0))
    throw data_error("digamma: argument must be positive, got " +
                     std::to_string(x));
  double result = 0.0;
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Bernoulli-number coefficients B_2n / 2n.
  const double series =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 -
                                      inv2 * (1.0 / 132.0 -
                                              inv2 * 691.0 / 32760.0)))));
  return result + std::log(x) - 0.5 * inv - series;
}

// Trigamma psi'(x) for x > 0; same recurrence + asymptotic scheme.
inline double trigamma(double x) {
  if (!(x > 0.0))
    throw data_error("trigamma: argument must be positive, got " +
                     std::to_string(x));
  double result = 0.0;
  while (x < 10.0) {
    result += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series =
      inv * (1.0 + inv * (0.5 +
                          inv * (1.0 / 6.0 -
                                 inv2 * (1.0 / 30.0 -
                                         inv2 * (1.0 / 42.0 -
                                                 inv2 / 30.0)))));
  return result + series;
}

inline double log_gamma(double x) {
  if (!(x > 0.0))
    throw data_error("log_gamma: argument must be positive, got " +
                     std::to_string(x));
  return std::lgamma(x);
}

// Regularized lower incomplete gamma P(a, x): series for x < a+1,
// Lentz continued fraction for the complement otherwise.
inline double gamma_p(double a, double x) {
  if (!(a > 0.0)) throw data_error("gamma_p: shape must be positive");
  if (x <= 0.0) return 0.0;
  const double lg = log_gamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-16)
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    throw numerical_error("gamma_p: series did not converge");
  }
  // Continued fraction for Q(a, x).
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) {
      const double q = std::exp(-x + a * std::log(x) - lg) * h;
      return 1.0 - q;
    }
  }
  throw numerical_error("gamma_p: continued fraction did not converge");
}

// Gamma(shape, rate) density, log-density and CDF on t > 0.
inline double gamma_log_pdf(double t, double shape, double rate) {
  if (t <= 0.0) return -std::numeric_limits<double>::infinity();
  return shape * std::log(rate) + (shape - 1.0) * std::log(t) - rate * t -
         log_gamma(shape);
}

inline double gamma_pdf(double t, double shape, double rate) {
  if (t <= 0.0) return 0.0;
  return std::exp(gamma_log_pdf(t, shape, rate));
}

inline double gamma_cdf(double t, double shape, double rate) {
  if (t <= 0.0) return 0.0;
  return gamma_p(shape, rate * t);
}

// Differential entropy of Gamma(shape, rate) in nats.
inline double gamma_entropy_nats(double shape, double rate) {
  return shape - std::log(rate) + log_gamma(shape) +
         (1.0 - shape) * digamma(shape);
}

}  // namespace isich
