#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "isich/errors.hpp"
#include "isich/neuron.hpp"
#include "isich/special.hpp"

namespace isich {

struct GammaFit {
  double m_gam = 0.0;  // shape
  double b_gam = 0.0;  // rate, 1/s
  std::size_t n_samples = 0;
  double log_likelihood = 0.0;  // nats
  bool small_sample = false;    // fewer than 30 samples
};

struct KsResult {
  double statistic = 0.0;
  double critical_value = 0.0;
  bool passed = false;
};

struct SurfaceCoefficients {
  double s = 0.0;
  // b_gam ~ d1_b * lambda + d0_b
  double d1_b = 0.0, d0_b = 0.0;
  // m_gam ~ d2_m * lambda^2 + d1_m * lambda + d0_m
  double d2_m = 0.0, d1_m = 0.0, d0_m = 0.0;
  double resid_b = 0.0, resid_m = 0.0;  // residual sums of squares
  bool slope_positive = true;           // d1_b > 0, required downstream

  double rate_at(double lambda) const { return d1_b * lambda + d0_b; }
  double shape_at(double lambda) const {
    return (d2_m * lambda + d1_m) * lambda + d0_m;
  }
};

// Maximum-likelihood Gamma fit via the shape score equation
//   log(m) - psi(m) = log(mean) - mean(log),  b = m / mean.
// Minka's closed-form start, safeguarded Newton, bisection fallback.
inline GammaFit fit_gamma_mle(const IsiSample& sample) {
  const auto& x = sample.isis;
  if (x.empty()) throw data_error("fit_gamma_mle: empty sample");
  double sum = 0.0, sum_log = 0.0;
  for (double v : x) {
    if (!(v > 0.0))
      throw data_error("fit_gamma_mle: nonpositive sample value " +
                       std::to_string(v));
    sum += v;
    sum_log += std::log(v);
  }
  const auto n = static_cast<double>(x.size());
  const double mean = sum / n;
  const double mean_log = sum_log / n;
  const double d = std::log(mean) - mean_log;  // >= 0 by Jensen
  if (d < 1e-12)
    throw data_error("fit_gamma_mle: degenerate sample (zero log-variance)");

  double m = (3.0 - d + std::sqrt((d - 3.0) * (d - 3.0) + 24.0 * d)) /
             (12.0 * d);
  double lo = 1e-8, hi = 1e8;
  for (int it = 0; it < 100; ++it) {
    const double f = std::log(m) - digamma(m) - d;
    if (std::fabs(f) < 1e-13) break;
    if (f > 0.0) lo = m; else hi = m;  // f is decreasing in m
    const double fp = 1.0 / m - trigamma(m);
    double next = m - f / fp;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    m = next;
  }
  GammaFit fit;
  fit.m_gam = m;
  fit.b_gam = m / mean;
  fit.n_samples = x.size();
  fit.small_sample = x.size() < 30;
  fit.log_likelihood =
      n * (m * std::log(fit.b_gam) - log_gamma(m)) + (m - 1.0) * sum_log -
      fit.b_gam * sum;
  return fit;
}

// One-sample KS test of the sample against the fitted Gamma CDF with the
// standard (asymptotic) critical value c(alpha)/sqrt(n). With estimated
// parameters this is conservative; no Lilliefors correction is applied.
inline KsResult ks_test_gamma(const IsiSample& sample, const GammaFit& fit,
                              double alpha = 0.05) {
  if (!(fit.m_gam > 0.0 && fit.b_gam > 0.0))
    throw data_error("ks_test_gamma: invalid fit");
  if (sample.isis.empty()) throw data_error("ks_test_gamma: empty sample");
  std::vector<double> sorted = sample.isis;
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double stat = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = gamma_cdf(sorted[i], fit.m_gam, fit.b_gam);
    stat = std::max(stat, std::fabs(cdf - (i + 1.0) / n));
    stat = std::max(stat, std::fabs(cdf - i / n));
  }
  double c;
  if (alpha >= 0.10) c = 1.224;
  else if (alpha >= 0.05) c = 1.358;
  else if (alpha >= 0.025) c = 1.480;
  else c = 1.628;
  KsResult res;
  res.statistic = stat;
  res.critical_value = c / std::sqrt(n);
  res.passed = stat < res.critical_value;
  return res;
}

namespace detail {

// Ordinary least squares for a polynomial of given degree (<= 2) via the
// normal equations.
inline std::vector<double> polyfit(const std::vector<double>& x,
                                   const std::vector<double>& y, int degree,
                                   double* rss_out) {
  const int k = degree + 1;
  double a[3][4] = {};
  for (std::size_t i = 0; i < x.size(); ++i) {
    double pw[3] = {1.0, x[i], x[i] * x[i]};
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) a[r][c] += pw[r] * pw[c];
      a[r][k] += pw[r] * y[i];
    }
  }
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (std::fabs(a[piv][col]) < 1e-12)
      throw data_error("polyfit: rank-deficient design matrix");
    if (piv != col) std::swap(a[piv], a[col]);
    for (int r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> coef(k);
  for (int r = 0; r < k; ++r) coef[r] = a[r][k] / a[r][r];
  if (rss_out) {
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double pred = 0.0, pw = 1.0;
      for (int r = 0; r < k; ++r) {
        pred += coef[r] * pw;
        pw *= x[i];
      }
      rss += (y[i] - pred) * (y[i] - pred);
    }
    *rss_out = rss;
  }
  return coef;
}

}  // namespace detail

// Fits the per-synchrony surfaces: b_gam linear in lambda, m_gam
// quadratic in lambda.
inline SurfaceCoefficients fit_surfaces(
    const std::vector<std::pair<double, GammaFit>>& fits, double s) {
  std::vector<double> lam, bs, ms;
  for (const auto& [l, f] : fits) {
    lam.push_back(l);
    bs.push_back(f.b_gam);
    ms.push_back(f.m_gam);
  }
  std::vector<double> distinct = lam;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  if (distinct.size() < 3)
    throw data_error("fit_surfaces: need >= 3 distinct lambda_ex points, "
                     "have " + std::to_string(distinct.size()));

  SurfaceCoefficients sc;
  sc.s = s;
  const auto cb = detail::polyfit(lam, bs, 1, &sc.resid_b);
  sc.d0_b = cb[0];
  sc.d1_b = cb[1];
  const auto cm = detail::polyfit(lam, ms, 2, &sc.resid_m);
  sc.d0_m = cm[0];
  sc.d1_m = cm[1];
  sc.d2_m = cm[2];
  sc.slope_positive = sc.d1_b > 0.0;
  return sc;
}

// Freedman-Diaconis histogram of a positive sample, normalized to unit
// area; used only for plot emission.
struct Histogram {
  std::vector<double> edges;    // size bins+1
  std::vector<double> density;  // size bins
};

inline Histogram histogram_fd(std::vector<double> x) {
  if (x.size() < 2) throw data_error("histogram_fd: too few samples");
  std::sort(x.begin(), x.end());
  const auto n = x.size();
  const double q1 = x[n / 4];
  const double q3 = x[(3 * n) / 4];
  double width = 2.0 * (q3 - q1) / std::cbrt(static_cast<double>(n));
  const double lo = x.front(), hi = x.back();
  if (!(width > 0.0)) width = (hi - lo > 0.0 ? (hi - lo) / 10.0 : 1.0);
  const int bins = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
  Histogram h;
  h.edges.resize(bins + 1);
  h.density.assign(bins, 0.0);
  for (int i = 0; i <= bins; ++i) h.edges[i] = lo + i * (hi - lo) / bins;
  for (double v : x) {
    int b = static_cast<int>((v - lo) / (hi - lo) * bins);
    b = std::clamp(b, 0, bins - 1);
    h.density[b] += 1.0;
  }
  const double bw = (hi - lo) / bins;
  for (auto& dv : h.density) dv /= n * bw;
  return h;
}

}  // namespace isich
