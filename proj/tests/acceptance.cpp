// Acceptance suite: end-to-end checks of the simulation, fitting and
// optimization chain at pinned tolerances. Prints one line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "isich/balance.hpp"
#include "isich/config.hpp"
#include "isich/efficiency.hpp"
#include "isich/gamma_fit.hpp"
#include "isich/neuron.hpp"
#include "isich/spikegen.hpp"
#include "isich/sweep.hpp"
#include "oracles.hpp"

using namespace isich;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int idx, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", idx,
              what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmtd(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// ---------------------------------------------------------------------
// Discretized mutual-information / energy oracle, independent of the
// library quadrature path. Densities are given as weights on a lambda
// grid pushed through the constant-shape channel.
struct DiscreteInput {
  std::vector<double> lambda;
  std::vector<double> weight;  // sums to ~1
};

DiscreteInput discretize(const OptimalInputDist& dist, int n = 1200) {
  // The tail is algebraic with exponent -(kappa + 1), kappa ~ 0.5, so use a
  // grid log-spaced in (lambda - support_min) reaching far into the tail.
  const double a = dist.support_min;
  const double h = 0.1;                       // inner resolution scale, Hz
  const double u_max = std::log(1e16 / h);    // outer reach
  DiscreteInput di;
  const double du = u_max / n;
  for (int i = 0; i < n; ++i) {
    const double u = (i + 0.5) * du;
    const double l = a + h * std::expm1(u);
    di.lambda.push_back(l);
    di.weight.push_back(dist.density(l) * h * std::exp(u) * du);
  }
  return di;
}

struct MiEnergy {
  double mi_bits;
  double mean_isi;
};

MiEnergy mi_oracle(const DiscreteInput& di, const ChannelModel& channel,
                   double g0) {
  // Log-spaced ISI grid: the conditional laws live at scales shape/rate
  // that span many decades across the heavy input tail.
  const int nt = 4000;
  const double t_lo = 1e-13, t_hi = 40.0 * g0;
  const double dv = std::log(t_hi / t_lo) / nt;
  const auto nl = di.lambda.size();
  std::vector<double> shape(nl), rate(nl), lg(nl);
  for (std::size_t i = 0; i < nl; ++i) {
    shape[i] = channel.shape_at(di.lambda[i]);
    rate[i] = channel.rate_at(di.lambda[i]);
    lg[i] = log_gamma(shape[i]);
  }
  double mi = 0.0, mean_isi = 0.0;
  std::vector<double> cond(nl);
  for (int k = 0; k < nt; ++k) {
    const double t = t_lo * std::exp((k + 0.5) * dv);
    const double dt = t * dv;
    const double lt = std::log(t);
    double marg = 0.0;
    for (std::size_t i = 0; i < nl; ++i) {
      const double logf = shape[i] * std::log(rate[i]) +
                          (shape[i] - 1.0) * lt - rate[i] * t - lg[i];
      cond[i] = logf > -700.0 ? std::exp(logf) : 0.0;
      marg += di.weight[i] * cond[i];
    }
    if (marg <= 0.0) continue;
    const double lmarg = std::log(marg);
    for (std::size_t i = 0; i < nl; ++i) {
      if (cond[i] <= 0.0) continue;
      mi += di.weight[i] * cond[i] * (std::log(cond[i]) - lmarg) * dt;
    }
  }
  for (std::size_t i = 0; i < nl; ++i)
    mean_isi += di.weight[i] * shape[i] / rate[i];
  const double total = [&] {
    double s = 0.0;
    for (double w : di.weight) s += w;
    return s;
  }();
  return {mi / std::log(2.0) / total, mean_isi / total};
}

// Exponential tilt that restores the induced (g0, g1) moments of a
// perturbed input density; two-parameter Newton on the moment residuals.
bool retilt(DiscreteInput& di, const ChannelModel& channel, double g0,
            double g1) {
  const auto n = di.lambda.size();
  std::vector<double> mu_t(n), mu_l(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sh = channel.shape_at(di.lambda[i]);
    const double ra = channel.rate_at(di.lambda[i]);
    mu_t[i] = sh / ra;
    mu_l[i] = digamma(sh) - std::log(ra);
  }
  double a1 = 0.0, a2 = 0.0;
  for (int it = 0; it < 200; ++it) {
    double z = 0.0, m1 = 0.0, m2 = 0.0;
    double c11 = 0.0, c12 = 0.0, c22 = 0.0;
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = di.weight[i] * std::exp(a1 * mu_t[i] + a2 * mu_l[i]);
      z += w[i];
    }
    if (!(z > 0.0) || !std::isfinite(z)) return false;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] /= z;
      m1 += w[i] * mu_t[i];
      m2 += w[i] * mu_l[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      c11 += w[i] * (mu_t[i] - m1) * (mu_t[i] - m1);
      c12 += w[i] * (mu_t[i] - m1) * (mu_l[i] - m2);
      c22 += w[i] * (mu_l[i] - m2) * (mu_l[i] - m2);
    }
    const double r1 = m1 - g0, r2 = m2 - g1;
    if (std::fabs(r1) < 1e-12 && std::fabs(r2) < 1e-12) {
      di.weight = w;
      return true;
    }
    const double det = c11 * c22 - c12 * c12;
    if (std::fabs(det) < 1e-30) return false;
    a1 -= (c22 * r1 - c12 * r2) / det;
    a2 -= (-c12 * r1 + c11 * r2) / det;
  }
  return false;
}

// ---------------------------------------------------------------------

SweepConfig acceptance_config(const std::string& outdir) {
  SweepConfig cfg;  // default grid
  cfg.output_dir = outdir;
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_1(const SweepResult& result, double minutes) {
  // Cells qualify when they produced >= 500 ISIs; at the cold balanced
  // operating point the s = 0 cells are silent and cannot qualify.
  std::size_t cells = 0, qualifying = 0, ks_pass = 0;
  for (const auto& c : result.cells) {
    if (c.s > 0.5) continue;
    ++cells;
    if (!(c.ok && c.n_isis >= 500)) continue;
    ++qualifying;
    if (c.ks.passed) ++ks_pass;
  }
  const double frac =
      qualifying ? static_cast<double>(ks_pass) / qualifying : 0.0;
  const bool pass = qualifying > 0 && frac >= 0.80 && minutes <= 20.0;
  report(1, pass, "gamma channel: KS 5% pass rate over the default grid",
         "KS pass " + std::to_string(ks_pass) + "/" +
             std::to_string(qualifying) + " qualifying cells (of " +
             std::to_string(cells) + " with s <= 0.5), " + fmtd(minutes) +
             " min");
}

void criterion_2(const SweepResult& result) {
  const auto law = solve_gamma_constraints({0.1, -3.51});
  // Synthetic exact surface plus every applicable fitted surface.
  std::vector<SurfaceCoefficients> surfaces;
  {
    SurfaceCoefficients sc;
    sc.s = 0.3;
    sc.d1_b = 0.5;
    sc.d0_b = 2.0;
    sc.d0_m = 3.0;
    surfaces.push_back(sc);
  }
  for (std::size_t i = 0; i < result.efficiency.size(); ++i)
    if (result.efficiency[i].computed) surfaces.push_back(result.surfaces[i]);
  double worst_l1 = 0.0, worst_res = 0.0;
  for (auto sc : surfaces) {
    sc.d2_m = 0.0;
    sc.d1_m = 0.0;
    ChannelModel channel{sc, true};
    try {
      const auto dist = optimal_input_density(channel, law);
      worst_l1 = std::max(worst_l1, marginal_l1_distance(dist, channel));
      worst_res = std::max(
          worst_res,
          verify_theorem1_laplace(channel, law).max_relative_residual);
    } catch (const config_error&) {
      // theorem inapplicable for this fitted surface; skip
    }
  }
  const bool pass = worst_l1 < 1e-3 && worst_res < 1e-6;
  report(2, pass, "marginalization identity with dropped shape terms",
         "max L1 " + fmtd(worst_l1) + ", max residual " + fmtd(worst_res));
}

void criterion_3() {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> uk(std::log(0.05), std::log(50.0));
  std::uniform_real_distribution<double> ub(std::log(0.1), std::log(1000.0));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double kappa = std::exp(uk(rng));
    const double beta = std::exp(ub(rng));
    const auto solved = solve_gamma_constraints(law_moments({kappa, beta}));
    worst = std::max(worst, std::fabs(solved.kappa - kappa) / kappa);
    worst = std::max(worst, std::fabs(solved.beta - beta) / beta);
  }
  report(3, worst < 1e-8, "constraint-solver round trip, 100 random laws",
         "max relative error " + fmtd(worst));
}

void criterion_4(const SweepResult& result) {
  const auto law = solve_gamma_constraints({0.1, -3.51});
  double worst = 0.0;
  int checked = 0, clamped = 0;
  auto check = [&](const SurfaceCoefficients& sc) {
    SurfaceCoefficients dropped = sc;
    dropped.d2_m = 0.0;
    dropped.d1_m = 0.0;
    ChannelModel channel{dropped, true};
    try {
      const auto dist = optimal_input_density(channel, law);
      if (dist.support_clamped) {
        // Analytic normalizer covers the unclamped support only.
        ++clamped;
        return;
      }
      worst = std::max(worst,
                       std::fabs(normalization_quadrature(dist) - 1.0));
      ++checked;
    } catch (const config_error&) {
    }
  };
  for (const auto& sc : result.surfaces)
    if (sc.s > 0.15) check(sc);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int synth = 0;
  while (synth < 50) {
    SurfaceCoefficients sc;
    sc.s = 0.3;
    sc.d1_b = 0.05 + 2.0 * u01(rng);
    sc.d0_b = law.beta * (0.999 * u01(rng) - 1.0);  // keep support unclamped
    sc.d0_m = law.kappa + 0.2 + 8.0 * u01(rng);
    check(sc);
    ++synth;
  }
  const bool pass = worst < 1e-6 && checked >= 50;
  report(4, pass, "analytic normalizer vs adaptive quadrature",
         "max deviation " + fmtd(worst) + " over " + std::to_string(checked) +
             " surfaces (" + std::to_string(clamped) + " clamped skipped)");
}

void criterion_5(const SweepResult& result) {
  const auto law = solve_gamma_constraints({0.1, -3.51});
  std::vector<double> modes, floors, svals;
  std::string detail;
  for (double target : {0.30, 0.40, 0.50}) {
    const SurfaceCoefficients* found = nullptr;
    for (const auto& sc : result.surfaces)
      if (std::fabs(sc.s - target) < 1e-9) found = &sc;
    if (!found) continue;
    SurfaceCoefficients sc = *found;
    sc.d2_m = 0.0;
    sc.d1_m = 0.0;
    try {
      ChannelModel channel{sc, true};
      const auto dist = optimal_input_density(channel, law);
      svals.push_back(target);
      floors.push_back(dist.support_min);
      modes.push_back(density_mode(dist));
      detail += " s=" + fmtd(target) + ": mode=" + fmtd(modes.back()) +
                " floor=" + fmtd(floors.back()) + ";";
    } catch (const config_error& e) {
      detail += " s=" + fmtd(target) + ": inapplicable;";
    }
  }
  bool pass = svals.size() == 3;
  for (std::size_t i = 1; i < modes.size(); ++i) {
    if (!(modes[i] < modes[i - 1])) pass = false;
    if (!(floors[i] < floors[i - 1])) pass = false;
  }
  report(5, pass, "mode and support floor strictly decrease with synchrony",
         detail.empty() ? "no applicable surfaces" : detail);
}

void criterion_6(const SweepResult& result) {
  const double g0 = 0.1, g1 = -3.51;
  const auto law = solve_gamma_constraints({g0, g1});

  // (a) Max-entropy: 20 constraint-satisfying two-component Gamma
  // mixtures, each strictly below the Gamma law's entropy.
  const double h_opt = gamma_entropy_nats(law.kappa, law.beta);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int built = 0, beaten = 0, attempts = 0;
  double min_gap = 1e9;
  while (built < 20 && attempts < 4000) {
    ++attempts;
    const double w = 0.2 + 0.6 * u01(rng);
    const double k1 = std::exp(std::log(0.3) + u01(rng) * std::log(60.0));
    const double b1 = k1 / (g0 * (0.3 + 1.4 * u01(rng)));
    const Constraints c1{k1 / b1, digamma(k1) - std::log(b1)};
    const double m2 = (g0 - w * c1.g0) / (1.0 - w);
    const double l2 = (g1 - w * c1.g1) / (1.0 - w);
    if (!(m2 > 0.0) || !(l2 < std::log(m2))) continue;
    OptimalIsiLaw law2;
    try {
      law2 = solve_gamma_constraints({m2, l2});
    } catch (const std::exception&) {
      continue;
    }
    if (std::fabs(k1 - law.kappa) / law.kappa < 1e-3 &&
        std::fabs(law2.kappa - law.kappa) / law.kappa < 1e-3)
      continue;  // effectively the optimum itself
    auto mix_pdf = [&](double t) {
      return w * gamma_pdf(t, k1, b1) +
             (1.0 - w) * gamma_pdf(t, law2.kappa, law2.beta);
    };
    const double h_mix = oracle::simpson(
        [&](double t) {
          const double f = mix_pdf(t);
          return f > 0.0 ? -f * std::log(f) : 0.0;
        },
        1e-9, 60.0 * g0, 60000);
    ++built;
    min_gap = std::min(min_gap, h_opt - h_mix);
    if (h_opt > h_mix) ++beaten;
  }
  const bool pass_entropy = built == 20 && beaten == 20;

  // (b) Bits-per-joule: the closed-form input beats 50 perturbed feasible
  // inputs with the induced moments re-imposed.
  SurfaceCoefficients sc;
  sc.s = 0.3;
  sc.d1_b = 0.5;
  sc.d0_b = 2.0;
  sc.d0_m = 3.0;
  ChannelModel channel{sc, true};
  const auto dist = optimal_input_density(channel, law);
  const EnergyModel energy;
  auto base = discretize(dist);
  // Impose the discrete moments exactly so optimum and perturbations are
  // compared under identical constraints.
  if (!retilt(base, channel, g0, g1))
    throw numerical_error("acceptance: base retilt failed");
  const auto opt = mi_oracle(base, channel, g0);
  const double bpj_opt =
      opt.mi_bits / (energy.C0 + energy.C1 * opt.mean_isi);
  int bpj_ok = 0, bpj_tested = 0;
  double worst_excess = 0.0;
  std::mt19937_64 rng2(123);
  while (bpj_tested < 50) {
    DiscreteInput pert = base;
    const double eps = 0.05 + 0.4 * u01(rng2);
    const double omega = 0.05 + 2.0 * u01(rng2);
    const double phase = 6.28318530717958647 * u01(rng2);
    for (std::size_t i = 0; i < pert.lambda.size(); ++i)
      pert.weight[i] *=
          1.0 + eps * std::sin(omega * (pert.lambda[i] - dist.support_min) +
                               phase);
    if (!retilt(pert, channel, g0, g1)) continue;
    const auto alt = mi_oracle(pert, channel, g0);
    const double bpj_alt =
        alt.mi_bits / (energy.C0 + energy.C1 * alt.mean_isi);
    ++bpj_tested;
    if (bpj_opt >= bpj_alt * (1.0 - 1e-3)) ++bpj_ok;
    worst_excess = std::max(worst_excess, (bpj_alt - bpj_opt) / bpj_opt);
  }
  const bool pass = pass_entropy && bpj_ok == 50;
  report(6, pass, "max-entropy and bits-per-joule optimality",
         "entropy beaten " + std::to_string(beaten) + "/20 (min gap " +
             fmtd(min_gap) + " nats), bpj beaten " + std::to_string(bpj_ok) +
             "/50 (worst excess " + fmtd(worst_excess) + ")");
}

void criterion_7() {
  const double lambda_old = 40.0, duration = 20.0;
  // S * n must be integral or the exact-count participant selection cannot
  // realize the compensated mean rate; 48 works for both S values.
  const int n_neurons = 48, n_seeds = 50;
  bool pass = true;
  std::string detail;
  for (double S : {0.25, 0.5}) {
    for (double frac : {0.5, 1.0}) {
      const double lambda_syn = frac * lambda_old / S;
      SynchronyConfig cfg;
      cfg.lambda_old = lambda_old;
      cfg.lambda_syn = lambda_syn;
      cfg.participation = S;
      cfg.n_neurons = n_neurons;
      double total_spikes = 0.0;
      for (int seed = 0; seed < n_seeds; ++seed) {
        const auto pop = generate_synchronized_population(
            cfg, 0.0, 0, duration, 5000 + seed);
        for (const auto& tr : pop.excitatory) total_spikes += tr.times.size();
      }
      const double est =
          total_spikes / (n_seeds * n_neurons * duration);
      // Synchronous events add exactly k spikes at once, so the pooled
      // count variance is n*lambda_new + k^2*lambda_syn, not n*lambda_old.
      const double k = cfg.participants_per_event();
      const double var_rate =
          n_neurons * std::max(0.0, cfg.lambda_new()) + k * k * lambda_syn;
      const double sigma =
          std::sqrt(var_rate / (n_seeds * duration)) / n_neurons;
      const double dev = std::fabs(est - lambda_old) / sigma;
      if (dev >= 3.0) pass = false;
      detail += " S=" + fmtd(S) + ",syn=" + fmtd(lambda_syn) + ": " +
                fmtd(dev) + "sigma;";
    }
  }
  report(7, pass, "mean-rate preservation under synchrony injection", detail);
}

void criterion_8() {
  double worst_rel = 0.0, worst_resid = 0.0;
  for (double shape : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double rate = shape / 0.1;
    IsiSample sample;
    sample.isis = oracle::gamma_sample(1000 + std::lround(10 * shape), 100000,
                                       shape, rate);
    const auto fit = fit_gamma_mle(sample);
    worst_rel = std::max(worst_rel, std::fabs(fit.m_gam - shape) / shape);
    worst_rel = std::max(worst_rel, std::fabs(fit.b_gam - rate) / rate);
    double mean = 0.0, mean_log = 0.0;
    for (double v : sample.isis) {
      mean += v;
      mean_log += std::log(v);
    }
    mean /= sample.isis.size();
    mean_log /= sample.isis.size();
    worst_resid = std::max(
        worst_resid, std::fabs(std::log(fit.m_gam) - digamma(fit.m_gam) -
                               (std::log(mean) - mean_log)));
  }
  const bool pass = worst_rel < 0.025 && worst_resid < 1e-10;
  report(8, pass, "gamma MLE recovery and score residual",
         "max relative error " + fmtd(worst_rel) + ", residual " +
             fmtd(worst_resid));
}

void criterion_9(const SweepConfig& cfg, const SynapseParameters& syn) {
  // Gating bounds over a 200 s run at a mid-grid cell.
  SynchronyConfig sync;
  sync.lambda_old = 36.0991;
  sync.participation = cfg.participation;
  sync.lambda_syn = sync_rate_for_level(36.0991, 0.3, cfg.participation);
  sync.n_neurons = cfg.n_ex;
  const auto pop = generate_synchronized_population(sync, cfg.lambda_in,
                                                    cfg.n_in, 200.0, 424242);
  SimOptions opt;
  opt.dt_ms = cfg.dt_ms;
  const auto res = simulate(cfg.neuron, syn, pop, opt);
  const bool gating_ok = res.gating_min >= 0.0 && res.gating_max <= 1.0;

  // Passive relaxation with tau = C_m/g_L = 20 ms.
  HhParameters passive = cfg.neuron;
  passive.g_Na = 0.0;
  passive.g_K = 0.0;
  PopulationActivity silent;
  silent.duration = 0.3;
  SimOptions popt;
  popt.record_voltage = true;
  popt.I_ext = passive.g_L * 10.0;
  const auto relax = simulate(passive, SynapseParameters{}, silent, popt);
  const double target = passive.E_L + 10.0 * (1.0 - std::exp(-1.0));
  double t63 = -1.0;
  for (std::size_t i = 0; i < relax.trace_v_mv.size(); ++i)
    if (relax.trace_v_mv[i] >= target) {
      t63 = relax.trace_time_ms[i];
      break;
    }
  const double tau = passive.C_m / passive.g_L;
  const bool tau_ok = t63 > 0.0 && std::fabs(t63 - tau) < 0.02 * tau;

  // dt halving: spike times shift by < 0.1 ms on a shorter cell.
  SynchronyConfig sync2 = sync;
  const auto pop2 = generate_synchronized_population(sync2, cfg.lambda_in,
                                                     cfg.n_in, 5.0, 99);
  SimOptions coarse = opt, fine = opt;
  fine.dt_ms = opt.dt_ms / 2.0;
  const auto a = simulate(cfg.neuron, syn, pop2, coarse);
  const auto b = simulate(cfg.neuron, syn, pop2, fine);
  bool dt_ok = !a.spike_times.empty() &&
               a.spike_times.size() == b.spike_times.size();
  double worst_shift = 0.0;
  if (dt_ok)
    for (std::size_t i = 0; i < a.spike_times.size(); ++i)
      worst_shift =
          std::max(worst_shift, std::fabs(a.spike_times[i] - b.spike_times[i]));
  dt_ok = dt_ok && worst_shift < 0.1e-3;

  report(9, gating_ok && tau_ok && dt_ok, "simulation integrity",
         "gating [" + fmtd(res.gating_min) + ", " + fmtd(res.gating_max) +
             "], t63 " + fmtd(t63) + " ms, max dt-shift " +
             fmtd(worst_shift * 1e3) + " ms");
}

void criterion_10(const SweepConfig& cfg, const fs::path& first_dir) {
  auto cfg2 = cfg;
  const auto dir2 = first_dir.string() + "_rerun";
  cfg2.output_dir = dir2;
  const auto result2 = run_sweep(cfg2);
  write_sweep_outputs(result2);
  bool pass = true;
  std::string detail;
  for (const char* name : {"fits.csv", "surfaces.csv", "isi.csv"}) {
    const bool same =
        slurp(first_dir / name) == slurp(fs::path(dir2) / name);
    if (!same) {
      pass = false;
      detail += std::string(name) + " differs; ";
    }
  }
  if (pass) detail = "fits.csv, surfaces.csv, isi.csv byte-identical";
  report(10, pass, "full-sweep determinism", detail);
}

}  // namespace

int main() {
  const auto outdir = fs::temp_directory_path() / "isich_acceptance";
  fs::remove_all(outdir);
  fs::remove_all(outdir.string() + "_rerun");
  auto cfg = acceptance_config(outdir.string());

  std::printf("running default sweep (%zu cells)...\n",
              cfg.lambda_ex_grid.size() * cfg.s_grid.size());
  std::fflush(stdout);
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = run_sweep(cfg);
  const double minutes =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count() /
      60.0;
  write_sweep_outputs(result);
  emit_figures(result);
  std::printf("sweep done in %.1f min\n", minutes);
  std::fflush(stdout);

  criterion_1(result, minutes);
  criterion_2(result);
  criterion_3();
  criterion_4(result);
  criterion_5(result);
  criterion_6(result);
  criterion_7();
  criterion_8();
  criterion_9(cfg, result.solved_synapse);
  criterion_10(cfg, outdir);

  if (failures)
    std::printf("%d criterion(s) FAILED\n", failures);
  else
    std::printf("all criteria passed\n");
  return failures ? 1 : 0;
}
