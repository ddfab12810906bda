// isich: simulate a synchrony-driven ISI channel, fit its Gamma law, and
// solve the bits-per-joule-optimal input distribution.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isich/config.hpp"
#include "isich/efficiency.hpp"
#include "isich/gamma_fit.hpp"
#include "isich/sweep.hpp"

namespace {

using namespace isich;

SweepConfig load_config(const std::string& path) {
  // A manifest.json from a previous run is accepted in place of a config
  // file; the embedded key/value block reproduces the run.
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    if (!j.contains("config_key_values"))
      throw config_error(path + ": not an isich manifest");
    return SweepConfig::from_kv(
        KeyValueFile::parse(j["config_key_values"].get<std::string>()));
  }
  return SweepConfig::from_file(path);
}

int cmd_sweep(const std::string& config_path, const std::string& out_override) {
  auto cfg = load_config(config_path);
  if (!out_override.empty()) cfg.output_dir = out_override;
  for (double s : cfg.s_grid)
    if (s > 0.5)
      std::cerr << "warning: s = " << s
                << " above 0.5; the Gamma channel fit degrades there\n";
  const auto result = run_sweep(cfg);
  write_sweep_outputs(result);
  emit_figures(result);
  std::size_t failed = 0;
  for (const auto& c : result.cells)
    if (!c.ok) {
      ++failed;
      std::cerr << "cell (lambda_ex=" << c.lambda_ex << ", s=" << c.s
                << ") failed: " << c.error << "\n";
    }
  std::cout << "sweep complete: " << result.cells.size() - failed << "/"
            << result.cells.size() << " cells ok, outputs in "
            << cfg.output_dir << "\n";
  return 0;
}

int cmd_fit(const std::string& isi_csv) {
  std::ifstream in(isi_csv);
  if (!in) throw config_error("cannot open " + isi_csv);
  std::string line;
  std::map<std::pair<double, double>, IsiSample> groups;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("lambda", 0) == 0)
      continue;
    std::istringstream ss(line);
    std::string f1, f2, f3;
    if (!std::getline(ss, f1, ',') || !std::getline(ss, f2, ',') ||
        !std::getline(ss, f3, ','))
      throw data_error("fit: malformed line: " + line);
    const double lam = std::stod(f1), s = std::stod(f2), isi = std::stod(f3);
    auto& g = groups[{s, lam}];
    g.lambda_ex = lam;
    g.s = s;
    g.isis.push_back(isi);
  }
  if (groups.empty()) throw data_error("fit: no samples in " + isi_csv);
  std::cout << "s,lambda_ex_hz,m_gam,b_gam,ks_stat,ks_pass,n\n";
  for (auto& [key, sample] : groups) {
    const auto fit = fit_gamma_mle(sample);
    const auto ks = ks_test_gamma(sample, fit, 0.05);
    std::cout << key.first << "," << key.second << "," << fit.m_gam << ","
              << fit.b_gam << "," << ks.statistic << "," << (ks.passed ? 1 : 0)
              << "," << fit.n_samples << "\n";
    if (fit.small_sample)
      std::cerr << "warning: fewer than 30 samples at (s=" << key.first
                << ", lambda_ex=" << key.second << ")\n";
  }
  return 0;
}

std::vector<SurfaceCoefficients> load_surfaces(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open " + path);
  std::vector<SurfaceCoefficients> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("s,", 0) == 0) continue;
    std::istringstream ss(line);
    std::vector<double> f;
    std::string tok;
    while (std::getline(ss, tok, ',')) f.push_back(std::stod(tok));
    if (f.size() != 6)
      throw data_error("surfaces: expected 6 columns, got line: " + line);
    SurfaceCoefficients sc;
    sc.s = f[0];
    sc.d1_b = f[1];
    sc.d0_b = f[2];
    sc.d2_m = f[3];
    sc.d1_m = f[4];
    sc.d0_m = f[5];
    sc.slope_positive = sc.d1_b > 0.0;
    out.push_back(sc);
  }
  if (out.empty()) throw data_error("surfaces: no rows in " + path);
  return out;
}

EfficiencyReport solve_for_surface(const SurfaceCoefficients& sc, double g0,
                                   double g1) {
  SweepConfig cfg;
  cfg.constraints = {g0, g1};
  cfg.constraints.validate();  // config errors surface before the solve
  return detail::run_efficiency(cfg, sc);
}

int cmd_optimize(const std::string& surfaces_csv, double g0, double g1,
                 double s) {
  const auto surfaces = load_surfaces(surfaces_csv);
  const SurfaceCoefficients* match = nullptr;
  for (const auto& sc : surfaces)
    if (std::fabs(sc.s - s) < 1e-9) match = &sc;
  if (!match)
    throw config_error("optimize: no surface row with s = " +
                       std::to_string(s) + " in " + surfaces_csv);
  const auto rep = solve_for_surface(*match, g0, g1);
  if (!rep.computed) throw numerical_error(rep.skipped_reason);
  auto j = efficiency_to_json(rep);
  j["surface"] = {{"s", match->s},     {"d1_b", match->d1_b},
                  {"d0_b", match->d0_b}, {"d2_m", match->d2_m},
                  {"d1_m", match->d1_m}, {"d0_m", match->d0_m}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& report_json) {
  std::ifstream in(report_json);
  if (!in) throw config_error("cannot open " + report_json);
  nlohmann::json j;
  in >> j;
  if (!j.contains("surface") || !j.contains("kappa"))
    throw config_error("verify: report must contain 'surface' and 'kappa' "
                       "(produce it with 'isich optimize')");
  SurfaceCoefficients sc;
  sc.s = j["surface"]["s"].get<double>();
  sc.d1_b = j["surface"]["d1_b"].get<double>();
  sc.d0_b = j["surface"]["d0_b"].get<double>();
  sc.d2_m = j["surface"]["d2_m"].get<double>();
  sc.d1_m = j["surface"]["d1_m"].get<double>();
  sc.d0_m = j["surface"]["d0_m"].get<double>();
  OptimalIsiLaw law{j["kappa"].get<double>(), j["beta"].get<double>()};

  ChannelModel channel{sc, true};
  const auto rep = verify_theorem1_laplace(channel, law);
  const auto dist = optimal_input_density(channel, law);
  nlohmann::json out;
  out["laplace_max_relative_residual"] = rep.max_relative_residual;
  out["normalization"] = normalization_quadrature(dist);
  out["marginal_l1"] = marginal_l1_distance(dist, channel);
  out["pass"] = rep.max_relative_residual < 1e-6;
  std::cout << out.dump(2) << "\n";
  return rep.max_relative_residual < 1e-6 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synchrony-controlled ISI channel toolkit"};
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand("sweep", "run the full (lambda, s) sweep");
  std::string config_path, out_override;
  sweep->add_option("config", config_path,
                    "config file (key = value) or manifest.json")
      ->required();
  sweep->add_option("--out", out_override, "override output directory");

  auto* fit = app.add_subcommand("fit", "fit Gamma laws to an ISI dump");
  std::string isi_csv;
  fit->add_option("isi_csv", isi_csv, "CSV with lambda_ex_hz,s,isi_s")
      ->required();

  auto* optimize =
      app.add_subcommand("optimize", "solve the optimal input density");
  std::string surfaces_csv;
  double g0 = 0.1, g1 = -3.51, s_val = 0.3;
  optimize->add_option("--surfaces", surfaces_csv, "surfaces.csv from a sweep")
      ->required();
  optimize->add_option("--g0", g0, "mean ISI constraint, seconds");
  optimize->add_option("--g1", g1, "mean log-ISI constraint");
  optimize->add_option("--s", s_val, "synchrony level to select")->required();

  auto* verify =
      app.add_subcommand("verify", "re-check the transform identity");
  std::string report_json;
  verify->add_option("report", report_json, "report JSON from 'optimize'")
      ->required();

  auto* defaults = app.add_subcommand("defaults", "print the default config");

  try {
    app.parse(argc, argv);
    if (sweep->parsed()) return cmd_sweep(config_path, out_override);
    if (fit->parsed()) return cmd_fit(isi_csv);
    if (optimize->parsed())
      return cmd_optimize(surfaces_csv, g0, g1, s_val);
    if (verify->parsed()) return cmd_verify(report_json);
    if (defaults->parsed()) {
      std::cout << isich::SweepConfig{}.to_key_values();
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const isich::config_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const isich::data_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 1;
  } catch (const isich::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
