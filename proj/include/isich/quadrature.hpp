#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "isich/errors.hpp"

namespace isich {

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct GkEstimate {
  double value;
  double error;
};

template <typename F>
GkEstimate gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double kronrod = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double x = h * kronrod_nodes[i];
    double fsum;
    if (i == 7) {
      fsum = f(c);
    } else {
      fsum = f(c - x) + f(c + x);
    }
    kronrod += kronrod_weights[i] * fsum;
    if (i % 2 == 1) gauss += gauss_weights[i / 2] * fsum;
  }
  return {kronrod * h, std::fabs(kronrod - gauss) * h};
}

// Globally adaptive: keep a worklist of segments and always split the one
// with the largest error estimate. This focuses effort near endpoint
// singularities instead of deepening uniformly.
template <typename F>
double adapt(const F& f, double a, double b, double tol) {
  struct Seg {
    double a, b, value, error;
  };
  auto make = [&](double lo, double hi) {
    const auto est = gk15(f, lo, hi);
    if (!std::isfinite(est.value))
      throw numerical_error("quadrature: non-finite integrand on [" +
                            std::to_string(lo) + ", " + std::to_string(hi) +
                            "]");
    return Seg{lo, hi, est.value, est.error};
  };
  const double min_width = 1e-14 * (std::fabs(a) + std::fabs(b) + 1.0);
  std::vector<Seg> segs{make(a, b)};
  for (int iter = 0; iter < 4000; ++iter) {
    double total_err = 0.0;
    std::size_t worst = segs.size();
    double worst_err = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total_err += segs[i].error;
      if (segs[i].error > worst_err && segs[i].b - segs[i].a > min_width) {
        worst_err = segs[i].error;
        worst = i;
      }
    }
    if (total_err <= tol || worst == segs.size()) break;
    const double mid = 0.5 * (segs[worst].a + segs[worst].b);
    const Seg right = make(mid, segs[worst].b);
    segs[worst] = make(segs[worst].a, mid);
    segs.push_back(right);
  }
  double value = 0.0, error = 0.0;
  for (const auto& s : segs) {
    value += s.value;
    error += s.error;
  }
  if (error > std::max(1e3 * tol, 1e-8 * std::fabs(value)))
    throw numerical_error("quadrature: failed to converge, error estimate " +
                          std::to_string(error));
  return value;
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration over a finite interval to absolute
// tolerance abs_tol.
template <typename F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-9) {
  if (a == b) return 0.0;
  return detail::adapt(f, a, b, abs_tol);
}

// Integral over [a, inf) via the map x = a + (t/(1-t))^2, which keeps
// algebraic tails x^(-q-1) integrable down to q > 1/2 without an endpoint
// blow-up after the change of variables.
template <typename F>
double integrate_to_inf(const F& f, double a, double abs_tol = 1e-9) {
  auto g = [&](double t) {
    const double om = 1.0 - t;
    const double r = t / om;
    const double x = a + r * r;
    return f(x) * 2.0 * r / (om * om);
  };
  return detail::adapt(g, 0.0, 1.0, abs_tol);
}

// Integral of w(x) * f(x) over [a, b] where w has an integrable power
// singularity (x - a)^(p - 1) at the left endpoint, 0 < p <= 1. The
// substitution x = a + u^(1/p) removes the singularity; the caller passes
// the full integrand (including the singular factor).
template <typename F>
double integrate_left_singular(const F& f, double a, double b, double p,
                               double abs_tol = 1e-9) {
  if (p >= 1.0) return integrate(f, a, b, abs_tol);
  const double width = b - a;
  auto g = [&](double u) {
    const double x = a + std::pow(u, 1.0 / p);
    const double jac = std::pow(u, 1.0 / p - 1.0) / p;
    return f(x) * jac;
  };
  return detail::adapt(g, 0.0, std::pow(width, p), abs_tol);
}

}  // namespace isich
