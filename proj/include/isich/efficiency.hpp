#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "isich/errors.hpp"
#include "isich/gamma_fit.hpp"
#include "isich/quadrature.hpp"
#include "isich/special.hpp"

namespace isich {

// Moment constraints on the ISI law: E[T] = g0, E[log T] = g1.
struct Constraints {
  double g0 = 0.1;    // seconds
  double g1 = -3.51;  // log-seconds

  void validate() const {
    if (!(g0 > 0.0)) throw config_error("Constraints: g0 must be positive");
    if (!(g1 < std::log(g0)))
      throw config_error(
          "Constraints: infeasible, need g1 < log(g0) (Jensen), got g1 = " +
          std::to_string(g1) + ", log(g0) = " + std::to_string(std::log(g0)));
  }
};

// Max-entropy ISI law under the constraints: Gamma(kappa, beta) with
// kappa/beta = g0 and psi(kappa) - log(beta) = g1.
struct OptimalIsiLaw {
  double kappa = 0.0;
  double beta = 0.0;  // 1/s
};

inline Constraints law_moments(const OptimalIsiLaw& law) {
  return {law.kappa / law.beta, digamma(law.kappa) - std::log(law.beta)};
}

// Solves psi(kappa) - log(kappa) = g1 - log(g0); the left side increases
// strictly from -inf to 0, so the root is bracketed and unique.
inline OptimalIsiLaw solve_gamma_constraints(const Constraints& c) {
  c.validate();
  const double target = c.g1 - std::log(c.g0);  // < 0
  auto f = [](double k) { return digamma(k) - std::log(k); };
  double lo = 1.0, hi = 2.0;
  while (f(lo) > target) lo *= 0.5;
  while (f(hi) < target) hi *= 2.0;
  double k = std::sqrt(lo * hi);
  for (int it = 0; it < 200; ++it) {
    const double g = f(k) - target;
    if (std::fabs(g) < 1e-14) break;
    if (g < 0.0) lo = k; else hi = k;
    const double gp = trigamma(k) - 1.0 / k;
    double next = k - g / gp;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    k = next;
  }
  OptimalIsiLaw law{k, k / c.g0};
  const auto back = law_moments(law);
  if (std::fabs(back.g0 - c.g0) > 1e-10 * c.g0 ||
      std::fabs(back.g1 - c.g1) > 1e-10 * std::max(1.0, std::fabs(c.g1)))
    throw numerical_error("solve_gamma_constraints: residual too large");
  return law;
}

struct EnergyModel {
  double C0 = 1.0;   // joules per ISI
  double C1 = 10.0;  // joules per second

  void validate() const {
    if (C0 < 0.0 || C1 < 0.0)
      throw config_error("EnergyModel: costs must be nonnegative");
    if (C0 == 0.0 && C1 == 0.0)
      throw config_error("EnergyModel: C0 and C1 cannot both be zero");
  }
};

// Conditional ISI channel f(t | lambda): Gamma with rate linear in lambda
// and shape quadratic in lambda (quadratic/linear terms optionally
// dropped, which the closed-form input density requires).
struct ChannelModel {
  SurfaceCoefficients surface;
  bool quadratic_terms_dropped = true;

  double rate_at(double lambda) const { return surface.rate_at(lambda); }
  double shape_at(double lambda) const {
    return quadratic_terms_dropped ? surface.d0_m : surface.shape_at(lambda);
  }
  double conditional_pdf(double t, double lambda) const {
    return gamma_pdf(t, shape_at(lambda), rate_at(lambda));
  }
};

// Closed-form bits-per-joule-optimal input-rate density:
//   f(l) = N * (l*d1b - beta + d0b)^(d0m - kappa - 1) / (l*d1b + d0b)^d0m
// on l*d1b >= beta - d0b (clamped to l >= 0), with
//   N = beta^kappa * d1b * Gamma(d0m) / (Gamma(kappa) * Gamma(d0m - kappa)).
struct OptimalInputDist {
  SurfaceCoefficients surface;
  OptimalIsiLaw law;
  double support_min = 0.0;  // Hz
  bool support_clamped = false;
  double log_norm = 0.0;  // log of N

  // Density as a function of the offset from the (unclamped) support floor.
  // Forming lambda*d1b - beta + d0b directly cancels catastrophically near
  // the floor, and the (offset)^(d0m - kappa - 1) singularity can hold
  // ~1e-4 of the mass within one ulp of the floor, so integration must go
  // through this form with an exact offset.
  double density_from_offset(double delta) const {
    if (delta <= 0.0) return 0.0;
    const double arg = surface.d1_b * delta;       // lambda*d1b - beta + d0b
    const double denom = law.beta + arg;           // lambda*d1b + d0b
    return std::exp(log_norm +
                    (surface.d0_m - law.kappa - 1.0) * std::log(arg) -
                    surface.d0_m * std::log(denom));
  }

  double density(double lambda) const {
    if (lambda < support_min) return 0.0;
    if (!support_clamped) return density_from_offset(lambda - support_min);
    const double arg = lambda * surface.d1_b - law.beta + surface.d0_b;
    if (arg <= 0.0) return 0.0;
    const double denom = lambda * surface.d1_b + surface.d0_b;
    return std::exp(log_norm +
                    (surface.d0_m - law.kappa - 1.0) * std::log(arg) -
                    surface.d0_m * std::log(denom));
  }
};

inline OptimalInputDist optimal_input_density(const ChannelModel& channel,
                                              const OptimalIsiLaw& law) {
  const auto& sc = channel.surface;
  if (!channel.quadratic_terms_dropped)
    throw config_error(
        "optimal_input_density: closed form requires the quadratic/linear "
        "shape terms to be dropped");
  if (!(sc.d1_b > 0.0))
    throw config_error("optimal_input_density: theorem inapplicable, "
                       "d1_b must be positive (got " +
                       std::to_string(sc.d1_b) + ")");
  if (!(sc.d0_m > law.kappa))
    throw config_error("optimal_input_density: theorem inapplicable, "
                       "d0_m = " + std::to_string(sc.d0_m) +
                       " must exceed kappa = " + std::to_string(law.kappa));
  OptimalInputDist dist;
  dist.surface = sc;
  dist.law = law;
  const double raw_min = (law.beta - sc.d0_b) / sc.d1_b;
  dist.support_min = std::max(0.0, raw_min);
  dist.support_clamped = raw_min < 0.0;
  dist.log_norm = law.kappa * std::log(law.beta) + std::log(sc.d1_b) +
                  log_gamma(sc.d0_m) - log_gamma(law.kappa) -
                  log_gamma(sc.d0_m - law.kappa);
  return dist;
}

namespace detail {

// Integrates g(lambda) * density(lambda) over the support, handling the
// (lambda - support_min)^(d0m - kappa - 1) endpoint singularity and the
// algebraic tail.
template <typename G>
double integrate_against_density(const OptimalInputDist& dist, const G& g,
                                 double abs_tol = 1e-9) {
  const double a = dist.support_min;
  const double p = dist.surface.d0_m - dist.law.kappa;  // > 0
  // Width scale of the density: rate units over the slope.
  const double scale =
      std::max(1.0, (dist.law.beta + std::fabs(dist.surface.d0_b)) /
                        dist.surface.d1_b);
  double total = 0.0;
  if (!dist.support_clamped) {
    // Head: substitute delta = u^(1/p) on the offset variable directly, so
    // the offset never passes through a + delta (which would quantize it to
    // ulp(a) and drop the mass inside the singularity).
    const double pe = std::min(1.0, p);
    auto head = [&](double u) {
      const double delta = std::pow(u, 1.0 / pe);
      const double jac = std::pow(u, 1.0 / pe - 1.0) / pe;
      return dist.density_from_offset(delta) * g(a + delta) * jac;
    };
    total += detail::adapt(head, 0.0, std::pow(scale, pe), abs_tol * 0.5);
    auto tail = [&](double l) {
      return dist.density_from_offset(l - a) * g(l);
    };
    total += integrate_to_inf(tail, a + scale, abs_tol * 0.5);
  } else {
    auto f = [&](double l) { return dist.density(l) * g(l); };
    total += integrate(f, a, a + scale, abs_tol * 0.5);
    total += integrate_to_inf(f, a + scale, abs_tol * 0.5);
  }
  return total;
}

}  // namespace detail

// Quadrature check of the analytic normalizer; should return 1 within
// tolerance whenever the support was not clamped.
inline double normalization_quadrature(const OptimalInputDist& dist,
                                       double abs_tol = 1e-9) {
  return detail::integrate_against_density(
      dist, [](double) { return 1.0; }, abs_tol);
}

// Marginal ISI density at t: integral of f(lambda) * f(t | lambda).
inline double marginal_isi_density(const OptimalInputDist& dist,
                                   const ChannelModel& channel, double t,
                                   double abs_tol = 1e-10) {
  if (t < 0.0)
    throw config_error("marginal_isi_density: t must be nonnegative");
  if (t == 0.0) return 0.0;
  return detail::integrate_against_density(
      dist, [&](double l) { return channel.conditional_pdf(t, l); }, abs_tol);
}

struct LaplaceResidualReport {
  std::vector<double> t_grid;
  std::vector<double> lhs;       // marginalized density, common factor removed
  std::vector<double> rhs;       // Gamma(kappa, beta), common factor removed
  double max_relative_residual = 0.0;
};

// Checks the transform identity behind the closed form: the input density
// pushed through the constant-shape channel must reproduce Gamma(kappa,
// beta) pointwise. Both sides carry the common exp(d0_b * t) factor of the
// identity, which cancels in the relative residual and is omitted.
inline LaplaceResidualReport verify_theorem1_laplace(
    const ChannelModel& channel, const OptimalIsiLaw& law,
    int n_points = 20) {
  if (!channel.quadratic_terms_dropped)
    throw config_error("verify_theorem1_laplace: requires dropped quadratic "
                       "terms");
  const auto dist = optimal_input_density(channel, law);
  const double g0 = law.kappa / law.beta;
  LaplaceResidualReport rep;
  const double t_lo = g0 / 100.0, t_hi = 20.0 * g0;
  for (int i = 0; i < n_points; ++i) {
    const double t =
        t_lo * std::pow(t_hi / t_lo, i / static_cast<double>(n_points - 1));
    const double lhs = marginal_isi_density(dist, channel, t, 1e-12);
    const double rhs = gamma_pdf(t, law.kappa, law.beta);
    rep.t_grid.push_back(t);
    rep.lhs.push_back(lhs);
    rep.rhs.push_back(rhs);
    rep.max_relative_residual =
        std::max(rep.max_relative_residual, std::fabs(lhs - rhs) / rhs);
  }
  return rep;
}

// L1 distance between the marginalized ISI density and Gamma(kappa, beta)
// over t in [g0/100, t_max_mult * g0].
inline double marginal_l1_distance(const OptimalInputDist& dist,
                                   const ChannelModel& channel,
                                   double t_max_mult = 10.0) {
  const double g0 = dist.law.kappa / dist.law.beta;
  auto diff = [&](double t) {
    return std::fabs(marginal_isi_density(dist, channel, t, 1e-11) -
                     gamma_pdf(t, dist.law.kappa, dist.law.beta));
  };
  return integrate(diff, g0 / 100.0, t_max_mult * g0, 1e-7);
}

struct BitsPerJouleReport {
  double mutual_information_bits = 0.0;  // per ISI
  double mean_isi_s = 0.0;
  double mean_energy_j = 0.0;  // per ISI
  double bits_per_joule = 0.0;
};

// Mutual information per ISI and per joule under the channel. Uses
// I = -h(T) + h(T|Lambda) in sign convention
//   I = h(T) - h(T|Lambda),
// with h(T|Lambda) analytic per lambda (Gamma entropy) and h(T) computed
// from the numerically marginalized density.
inline BitsPerJouleReport bits_per_joule(const OptimalInputDist& dist,
                                         const ChannelModel& channel,
                                         const EnergyModel& energy) {
  energy.validate();
  constexpr double ln2 = 0.6931471805599453;

  // Conditional entropy and mean ISI, averaged over the input density.
  const double h_cond_nats = detail::integrate_against_density(
      dist,
      [&](double l) {
        return gamma_entropy_nats(channel.shape_at(l), channel.rate_at(l));
      },
      1e-10);
  const double mean_isi = detail::integrate_against_density(
      dist,
      [&](double l) { return channel.shape_at(l) / channel.rate_at(l); },
      1e-10);

  // Marginal entropy via quadrature on t; the marginal itself is a
  // quadrature over lambda at each node.
  const double g0 = dist.law.kappa / dist.law.beta;
  auto neg_flogf = [&](double t) {
    const double ft = marginal_isi_density(dist, channel, t, 1e-12);
    return ft > 0.0 ? -ft * std::log(ft) : 0.0;
  };
  double h_marg_nats = integrate(neg_flogf, 1e-7 * g0, 30.0 * g0, 1e-7);

  BitsPerJouleReport rep;
  rep.mutual_information_bits = (h_marg_nats - h_cond_nats) / ln2;
  rep.mean_isi_s = mean_isi;
  rep.mean_energy_j = energy.C0 + energy.C1 * mean_isi;
  rep.bits_per_joule = rep.mutual_information_bits / rep.mean_energy_j;
  return rep;
}

// Location of the density maximum over the support (golden-section on a
// bracketing grid; the density is unimodal in the interior).
inline double density_mode(const OptimalInputDist& dist) {
  const double a = dist.support_min;
  const double scale = (dist.law.beta + std::fabs(dist.surface.d0_b)) /
                           dist.surface.d1_b +
                       1.0;
  // Grid scan for a bracket.
  double best_l = a + 1e-9, best_f = dist.density(best_l);
  const int grid = 4000;
  for (int i = 1; i <= grid; ++i) {
    const double l = a + 20.0 * scale * i / grid;
    const double f = dist.density(l);
    if (f > best_f) {
      best_f = f;
      best_l = l;
    }
  }
  double lo = std::max(a, best_l - 20.0 * scale / grid);
  double hi = best_l + 20.0 * scale / grid;
  const double gr = 0.6180339887498949;
  for (int it = 0; it < 200; ++it) {
    const double x1 = hi - gr * (hi - lo);
    const double x2 = lo + gr * (hi - lo);
    if (dist.density(x1) < dist.density(x2)) lo = x1; else hi = x2;
  }
  return 0.5 * (lo + hi);
}

}  // namespace isich
