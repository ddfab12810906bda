#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "isich/balance.hpp"
#include "isich/config.hpp"
#include "isich/efficiency.hpp"
#include "isich/errors.hpp"
#include "isich/gamma_fit.hpp"
#include "isich/neuron.hpp"
#include "isich/spikegen.hpp"

namespace isich {

struct CellResult {
  double lambda_ex = 0.0;
  double s = 0.0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::size_t n_isis = 0;
  GammaFit fit;
  KsResult ks;
  std::vector<double> isis;  // seconds
};

struct EfficiencyReport {
  double s = 0.0;
  bool computed = false;
  std::string skipped_reason;
  double kappa = 0.0, beta = 0.0;
  double g0 = 0.0, g1 = 0.0;
  double support_min = 0.0, mode = 0.0;
  double mutual_information_bits = 0.0;
  double mean_energy_j = 0.0;
  double bits_per_joule_v = 0.0;
  double laplace_residual = 0.0;
  double marginal_l1 = 0.0;
  double marginal_l1_full_shape = 0.0;  // with quadratic terms restored
  double normalization = 0.0;
};

struct SweepResult {
  SweepConfig config;
  SynapseParameters solved_synapse;
  std::vector<CellResult> cells;               // grid order: s-major
  std::vector<SurfaceCoefficients> surfaces;   // one per s with enough cells
  std::vector<EfficiencyReport> efficiency;    // one per s in surfaces
};

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string csv_header_comment(const SweepConfig& cfg) {
  return "# isich " + std::string(kVersion) +
         " seed=" + std::to_string(cfg.master_seed) + "\n";
}

inline CellResult run_cell(const SweepConfig& cfg,
                           const SynapseParameters& syn, double lambda_ex,
                           double s, std::uint64_t seed) {
  CellResult cell;
  cell.lambda_ex = lambda_ex;
  cell.s = s;
  cell.seed = seed;
  try {
    SynchronyConfig sync;
    sync.lambda_old = lambda_ex;
    sync.participation = cfg.participation;
    sync.lambda_syn = sync_rate_for_level(lambda_ex, s, cfg.participation);
    sync.n_neurons = cfg.n_ex;
    const auto pop = generate_synchronized_population(
        sync, cfg.lambda_in, cfg.n_in, cfg.duration_s, seed);
    SimOptions opt;
    opt.dt_ms = cfg.dt_ms;
    const auto sim = simulate(cfg.neuron, syn, pop, opt);
    auto sample = extract_isis(sim.spike_times, cfg.transient_cut_s);
    sample.lambda_ex = lambda_ex;
    sample.s = s;
    cell.fit = fit_gamma_mle(sample);
    cell.ks = ks_test_gamma(sample, cell.fit, 0.05);
    cell.n_isis = sample.isis.size();
    cell.isis = std::move(sample.isis);
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  return cell;
}

inline EfficiencyReport run_efficiency(const SweepConfig& cfg,
                                       const SurfaceCoefficients& surface) {
  EfficiencyReport rep;
  rep.s = surface.s;
  try {
    const auto law = solve_gamma_constraints(cfg.constraints);
    rep.kappa = law.kappa;
    rep.beta = law.beta;
    rep.g0 = cfg.constraints.g0;
    rep.g1 = cfg.constraints.g1;

    ChannelModel channel{surface, true};
    const auto dist = optimal_input_density(channel, law);
    rep.support_min = dist.support_min;
    rep.mode = density_mode(dist);
    rep.normalization = normalization_quadrature(dist);
    rep.laplace_residual =
        verify_theorem1_laplace(channel, law).max_relative_residual;
    rep.marginal_l1 = marginal_l1_distance(dist, channel);
    ChannelModel full{surface, false};
    rep.marginal_l1_full_shape = marginal_l1_distance(dist, full);
    const auto bpj = bits_per_joule(dist, channel, cfg.energy);
    rep.mutual_information_bits = bpj.mutual_information_bits;
    rep.mean_energy_j = bpj.mean_energy_j;
    rep.bits_per_joule_v = bpj.bits_per_joule;
    rep.computed = true;
  } catch (const std::exception& e) {
    rep.skipped_reason = e.what();
  }
  return rep;
}

}  // namespace detail

// Executes the full grid: spikegen -> neuron -> stats per cell, surface
// fits per s, then the efficiency solve for s above the closed-form
// threshold. Cells are independently seeded and run concurrently; results
// are gathered in grid order.
inline SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  SweepResult result;
  result.config = cfg;
  result.solved_synapse =
      solve_weights(cfg.balance, cfg.synapse_template, cfg.neuron);

  const auto n_lam = cfg.lambda_ex_grid.size();
  const auto n_s = cfg.s_grid.size();
  result.cells.resize(n_lam * n_s);

  int workers = cfg.workers;
  if (const char* env = std::getenv("ISICH_WORKERS"))
    workers = std::atoi(env);
  if (workers <= 0)
    workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(n_lam * n_s)));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= result.cells.size()) return;
      const std::size_t si = idx / n_lam;
      const std::size_t li = idx % n_lam;
      const auto seed = hash_combine(cfg.master_seed, li, si);
      result.cells[idx] = detail::run_cell(
          cfg, result.solved_synapse, cfg.lambda_ex_grid[li], cfg.s_grid[si],
          seed);
    }
  };
  {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  for (std::size_t si = 0; si < n_s; ++si) {
    std::vector<std::pair<double, GammaFit>> fits;
    for (std::size_t li = 0; li < n_lam; ++li) {
      const auto& cell = result.cells[si * n_lam + li];
      if (cell.ok) fits.emplace_back(cell.lambda_ex, cell.fit);
    }
    if (fits.size() < 3) continue;
    SurfaceCoefficients surface;
    try {
      surface = fit_surfaces(fits, cfg.s_grid[si]);
    } catch (const std::exception&) {
      continue;
    }
    result.surfaces.push_back(surface);
    EfficiencyReport rep;
    rep.s = surface.s;
    if (cfg.s_grid[si] <= cfg.efficiency_min_s) {
      rep.skipped_reason =
          "closed-form input density not valid for s <= " +
          std::to_string(cfg.efficiency_min_s) +
          " (quadratic shape terms not negligible)";
    } else {
      rep = detail::run_efficiency(cfg, surface);
    }
    result.efficiency.push_back(rep);
  }
  return result;
}

inline nlohmann::json efficiency_to_json(const EfficiencyReport& r) {
  nlohmann::json j;
  j["s"] = r.s;
  j["computed"] = r.computed;
  if (!r.computed) {
    j["skipped_reason"] = r.skipped_reason;
    return j;
  }
  j["kappa"] = r.kappa;
  j["beta"] = r.beta;
  j["g0"] = r.g0;
  j["g1"] = r.g1;
  j["support_min"] = r.support_min;
  j["mode"] = r.mode;
  j["I_bits"] = r.mutual_information_bits;
  j["energy"] = r.mean_energy_j;
  j["bpj"] = r.bits_per_joule_v;
  j["residuals"] = {{"laplace_max_relative", r.laplace_residual},
                    {"marginal_l1", r.marginal_l1},
                    {"marginal_l1_full_shape", r.marginal_l1_full_shape},
                    {"normalization", r.normalization}};
  return j;
}

// Writes fits.csv, surfaces.csv, isi.csv, per-s efficiency reports and
// density curves, and the reproducibility manifest.
inline void write_sweep_outputs(const SweepResult& result) {
  namespace fs = std::filesystem;
  const auto& cfg = result.config;
  fs::create_directories(cfg.output_dir);
  const auto comment = detail::csv_header_comment(cfg);
  auto path = [&](const std::string& name) {
    return (fs::path(cfg.output_dir) / name).string();
  };

  {
    std::ofstream out(path("fits.csv"));
    out << comment << "s,lambda_ex_hz,m_gam,b_gam,ks_stat,ks_pass,n\n";
    for (const auto& c : result.cells) {
      if (!c.ok) continue;
      out << detail::fmt(c.s) << "," << detail::fmt(c.lambda_ex) << ","
          << detail::fmt(c.fit.m_gam) << "," << detail::fmt(c.fit.b_gam)
          << "," << detail::fmt(c.ks.statistic) << ","
          << (c.ks.passed ? 1 : 0) << "," << c.n_isis << "\n";
    }
  }
  {
    std::ofstream out(path("surfaces.csv"));
    out << comment << "s,d1_b,d0_b,d2_m,d1_m,d0_m\n";
    for (const auto& sc : result.surfaces)
      out << detail::fmt(sc.s) << "," << detail::fmt(sc.d1_b) << ","
          << detail::fmt(sc.d0_b) << "," << detail::fmt(sc.d2_m) << ","
          << detail::fmt(sc.d1_m) << "," << detail::fmt(sc.d0_m) << "\n";
  }
  {
    std::ofstream out(path("isi.csv"));
    out << comment << "lambda_ex_hz,s,isi_s\n";
    for (const auto& c : result.cells) {
      if (!c.ok) continue;
      for (double isi : c.isis)
        out << detail::fmt(c.lambda_ex) << "," << detail::fmt(c.s) << ","
            << detail::fmt(isi) << "\n";
    }
  }
  {
    std::ofstream out(path("cells.csv"));
    out << comment << "s,lambda_ex_hz,seed,ok,error\n";
    for (const auto& c : result.cells)
      out << detail::fmt(c.s) << "," << detail::fmt(c.lambda_ex) << ","
          << c.seed << "," << (c.ok ? 1 : 0) << ",\"" << c.error << "\"\n";
  }

  for (std::size_t i = 0; i < result.efficiency.size(); ++i) {
    const auto& rep = result.efficiency[i];
    char tag[32];
    std::snprintf(tag, sizeof(tag), "s%04d", static_cast<int>(
        std::lround(rep.s * 1000.0)));
    {
      std::ofstream out(path(std::string("efficiency_") + tag + ".json"));
      out << efficiency_to_json(rep).dump(2) << "\n";
    }
    if (rep.computed) {
      const auto& sc = result.surfaces[i];
      ChannelModel channel{sc, true};
      OptimalIsiLaw law{rep.kappa, rep.beta};
      const auto dist = optimal_input_density(channel, law);
      std::ofstream out(path(std::string("density_") + tag + ".csv"));
      out << comment << "s,lambda_ex_hz,density\n";
      const double hi = rep.mode + 12.0 * (rep.mode - rep.support_min + 1.0);
      for (int k = 0; k <= 400; ++k) {
        const double l = rep.support_min + (hi - rep.support_min) * k / 400.0;
        out << detail::fmt(rep.s) << "," << detail::fmt(l) << ","
            << detail::fmt(dist.density(l)) << "\n";
      }
    }
  }

  // Manifest: everything needed to reproduce the run bit-identically.
  nlohmann::json manifest;
  manifest["tool"] = "isich";
  manifest["version"] = kVersion;
  manifest["config_key_values"] = cfg.to_key_values();
  manifest["solved_synapse"] = {{"w_ex", result.solved_synapse.w_ex},
                                {"w_in", result.solved_synapse.w_in},
                                {"tau_ex", result.solved_synapse.tau_ex},
                                {"tau_in", result.solved_synapse.tau_in},
                                {"E_ex", result.solved_synapse.E_ex},
                                {"E_in", result.solved_synapse.E_in}};
  nlohmann::json seeds = nlohmann::json::array();
  for (const auto& c : result.cells)
    seeds.push_back({{"s", c.s}, {"lambda_ex", c.lambda_ex},
                     {"seed", c.seed}});
  manifest["cell_seeds"] = seeds;
  std::ofstream mout(path("manifest.json"));
  mout << manifest.dump(2) << "\n";
}

// Plot-ready datasets for the histogram/fit, surface, density and
// shape-coefficient figures.
inline void emit_figures(const SweepResult& result) {
  namespace fs = std::filesystem;
  const auto& cfg = result.config;
  if (result.cells.empty()) throw config_error("emit_figures: empty result");
  const auto dir = fs::path(cfg.output_dir) / "figures";
  fs::create_directories(dir);
  const auto comment = detail::csv_header_comment(cfg);

  // Histogram + fitted pdf at the lambda closest to 36.0991 Hz, per s.
  double lam_star = cfg.lambda_ex_grid.front();
  for (double l : cfg.lambda_ex_grid)
    if (std::fabs(l - 36.0991) < std::fabs(lam_star - 36.0991)) lam_star = l;
  {
    std::ofstream out(dir / "isi_histograms.csv");
    out << comment
        << "s,lambda_ex_hz,bin_lo_s,bin_hi_s,density,fitted_pdf_mid\n";
    for (const auto& c : result.cells) {
      if (!c.ok || c.lambda_ex != lam_star || c.isis.size() < 2) continue;
      const auto h = histogram_fd(c.isis);
      for (std::size_t b = 0; b + 1 < h.edges.size(); ++b) {
        const double mid = 0.5 * (h.edges[b] + h.edges[b + 1]);
        out << detail::fmt(c.s) << "," << detail::fmt(c.lambda_ex) << ","
            << detail::fmt(h.edges[b]) << "," << detail::fmt(h.edges[b + 1])
            << "," << detail::fmt(h.density[b]) << ","
            << detail::fmt(gamma_pdf(mid, c.fit.m_gam, c.fit.b_gam)) << "\n";
      }
    }
  }
  // Fitted parameters vs lambda with the polynomial surfaces.
  {
    std::ofstream out(dir / "parameter_surfaces.csv");
    out << comment << "s,lambda_ex_hz,m_gam,b_gam,m_surface,b_surface\n";
    for (const auto& sc : result.surfaces) {
      for (const auto& c : result.cells) {
        if (!c.ok || c.s != sc.s) continue;
        out << detail::fmt(c.s) << "," << detail::fmt(c.lambda_ex) << ","
            << detail::fmt(c.fit.m_gam) << "," << detail::fmt(c.fit.b_gam)
            << "," << detail::fmt(sc.shape_at(c.lambda_ex)) << ","
            << detail::fmt(sc.rate_at(c.lambda_ex)) << "\n";
      }
    }
  }
  // Shape-surface coefficients vs s.
  {
    std::ofstream out(dir / "shape_coefficients.csv");
    out << comment << "s,d2_m,d1_m,d0_m\n";
    for (const auto& sc : result.surfaces)
      out << detail::fmt(sc.s) << "," << detail::fmt(sc.d2_m) << ","
          << detail::fmt(sc.d1_m) << "," << detail::fmt(sc.d0_m) << "\n";
  }
}

}  // namespace isich
