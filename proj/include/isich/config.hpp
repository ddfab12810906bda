#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "isich/balance.hpp"
#include "isich/efficiency.hpp"
#include "isich/errors.hpp"
#include "isich/neuron.hpp"

namespace isich {

inline constexpr const char* kVersion = "0.1.0";

// Flat key/value config file with dotted section names:
//   sweep.duration_s = 200
//   sweep.lambda_ex_grid = [20, 25, 30]
//   sweep.output_dir = "out"
// '#' starts a comment.
class KeyValueFile {
public:
  static KeyValueFile parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  static KeyValueFile parse(const std::string& text) {
    KeyValueFile kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto trimmed = trim(line);
      if (trimmed.empty()) continue;
      const auto eq = trimmed.find('=');
      if (eq == std::string::npos)
        throw config_error("config line " + std::to_string(lineno) +
                           ": expected 'key = value'");
      const auto key = trim(trimmed.substr(0, eq));
      const auto val = trim(trimmed.substr(eq + 1));
      if (key.empty() || val.empty())
        throw config_error("config line " + std::to_string(lineno) +
                           ": empty key or value");
      kv.values_[key] = val;
    }
    return kv;
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  double get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : to_double(it->second, key);
  }

  std::int64_t get_int(const std::string& key, std::int64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
      std::size_t pos = 0;
      const auto v = std::stoll(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument(key);
      return v;
    } catch (const std::exception&) {
      throw config_error("config key '" + key + "': expected integer, got '" +
                         it->second + "'");
    }
  }

  std::string get_string(const std::string& key,
                         const std::string& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    auto v = it->second;
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
      v = v.substr(1, v.size() - 2);
    return v;
  }

  std::vector<double> get_list(const std::string& key,
                               const std::vector<double>& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    auto v = it->second;
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
      throw config_error("config key '" + key + "': expected [a, b, ...]");
    v = v.substr(1, v.size() - 2);
    std::vector<double> out;
    std::string item;
    std::istringstream ss(v);
    while (std::getline(ss, item, ',')) {
      const auto t = trim(item);
      if (t.empty()) continue;
      out.push_back(to_double(t, key));
    }
    return out;
  }

  const std::map<std::string, std::string>& values() const { return values_; }

private:
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  }

  static double to_double(const std::string& s, const std::string& key) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(key);
      return v;
    } catch (const std::exception&) {
      throw config_error("config key '" + key + "': expected number, got '" +
                         s + "'");
    }
  }

  std::map<std::string, std::string> values_;
};

struct SweepConfig {
  std::vector<double> lambda_ex_grid = {20.0, 25.0, 30.0, 36.0991, 45.0, 55.0};
  std::vector<double> s_grid = {0.0, 0.10, 0.15, 0.30, 0.40, 0.50};
  double duration_s = 200.0;
  double transient_cut_s = 0.5;
  std::uint64_t master_seed = 20240901;
  std::string output_dir = "sweep_out";
  int workers = 0;  // 0 = hardware concurrency

  double participation = 0.5;
  int n_ex = 400;
  int n_in = 100;
  double lambda_in = 125.0;

  HhParameters neuron;
  SynapseParameters synapse_template;  // taus and reversals; weights solved
  BalanceSpec balance;
  double dt_ms = 0.025;

  Constraints constraints;
  EnergyModel energy;
  double efficiency_min_s = 0.15;  // closed form invalid at or below this

  void validate() const {
    if (lambda_ex_grid.empty())
      throw config_error("SweepConfig: lambda_ex_grid must be nonempty");
    if (s_grid.empty())
      throw config_error("SweepConfig: s_grid must be nonempty");
    for (double s : s_grid)
      if (s < 0.0 || s >= 1.0)
        throw config_error("SweepConfig: s values must be in [0, 1)");
    if (duration_s <= transient_cut_s)
      throw config_error("SweepConfig: duration must exceed transient cut");
    neuron.validate();
    constraints.validate();
    energy.validate();
  }

  static SweepConfig from_file(const std::string& path) {
    return from_kv(KeyValueFile::parse_file(path));
  }

  static SweepConfig from_kv(const KeyValueFile& kv) {
    SweepConfig c;
    c.lambda_ex_grid = kv.get_list("sweep.lambda_ex_grid", c.lambda_ex_grid);
    c.s_grid = kv.get_list("sweep.s_grid", c.s_grid);
    c.duration_s = kv.get_double("sweep.duration_s", c.duration_s);
    c.transient_cut_s =
        kv.get_double("sweep.transient_cut_s", c.transient_cut_s);
    c.master_seed = static_cast<std::uint64_t>(
        kv.get_int("sweep.master_seed", static_cast<std::int64_t>(c.master_seed)));
    c.output_dir = kv.get_string("sweep.output_dir", c.output_dir);
    c.workers = static_cast<int>(kv.get_int("sweep.workers", c.workers));

    c.participation = kv.get_double("sync.participation", c.participation);
    c.n_ex = static_cast<int>(kv.get_int("population.n_ex", c.n_ex));
    c.n_in = static_cast<int>(kv.get_int("population.n_in", c.n_in));
    c.lambda_in = kv.get_double("population.lambda_in", c.lambda_in);

    c.neuron.C_m = kv.get_double("neuron.C_m", c.neuron.C_m);
    c.neuron.g_L = kv.get_double("neuron.g_L", c.neuron.g_L);
    c.neuron.E_L = kv.get_double("neuron.E_L", c.neuron.E_L);
    c.neuron.g_Na = kv.get_double("neuron.g_Na", c.neuron.g_Na);
    c.neuron.E_Na = kv.get_double("neuron.E_Na", c.neuron.E_Na);
    c.neuron.g_K = kv.get_double("neuron.g_K", c.neuron.g_K);
    c.neuron.E_K = kv.get_double("neuron.E_K", c.neuron.E_K);
    c.neuron.V_spk = kv.get_double("neuron.V_spk", c.neuron.V_spk);
    c.dt_ms = kv.get_double("neuron.dt_ms", c.dt_ms);

    c.synapse_template.tau_ex =
        kv.get_double("synapse.tau_ex", c.synapse_template.tau_ex);
    c.synapse_template.tau_in =
        kv.get_double("synapse.tau_in", c.synapse_template.tau_in);
    c.synapse_template.E_ex =
        kv.get_double("synapse.E_ex", c.synapse_template.E_ex);
    c.synapse_template.E_in =
        kv.get_double("synapse.E_in", c.synapse_template.E_in);

    c.balance.V_th = kv.get_double("balance.V_th", c.balance.V_th);
    c.balance.V_bar = kv.get_double("balance.V_bar", c.balance.V_bar);
    c.balance.lambda_ex_ref =
        kv.get_double("balance.lambda_ex_ref", c.balance.lambda_ex_ref);
    c.balance.n_ex = c.n_ex;
    c.balance.n_in = c.n_in;
    c.balance.lambda_in = c.lambda_in;

    c.constraints.g0 = kv.get_double("constraints.g0", c.constraints.g0);
    c.constraints.g1 = kv.get_double("constraints.g1", c.constraints.g1);
    c.energy.C0 = kv.get_double("energy.C0", c.energy.C0);
    c.energy.C1 = kv.get_double("energy.C1", c.energy.C1);
    return c;
  }

  // Printable form that parses back to the same config.
  std::string to_key_values() const {
    std::ostringstream out;
    out.precision(17);
    auto list = [&](const std::vector<double>& v) {
      std::ostringstream s;
      s.precision(17);
      s << "[";
      for (std::size_t i = 0; i < v.size(); ++i)
        s << (i ? ", " : "") << v[i];
      s << "]";
      return s.str();
    };
    out << "sweep.lambda_ex_grid = " << list(lambda_ex_grid) << "\n";
    out << "sweep.s_grid = " << list(s_grid) << "\n";
    out << "sweep.duration_s = " << duration_s << "\n";
    out << "sweep.transient_cut_s = " << transient_cut_s << "\n";
    out << "sweep.master_seed = " << master_seed << "\n";
    out << "sweep.output_dir = \"" << output_dir << "\"\n";
    out << "sweep.workers = " << workers << "\n";
    out << "sync.participation = " << participation << "\n";
    out << "population.n_ex = " << n_ex << "\n";
    out << "population.n_in = " << n_in << "\n";
    out << "population.lambda_in = " << lambda_in << "\n";
    out << "neuron.C_m = " << neuron.C_m << "\n";
    out << "neuron.g_L = " << neuron.g_L << "\n";
    out << "neuron.E_L = " << neuron.E_L << "\n";
    out << "neuron.g_Na = " << neuron.g_Na << "\n";
    out << "neuron.E_Na = " << neuron.E_Na << "\n";
    out << "neuron.g_K = " << neuron.g_K << "\n";
    out << "neuron.E_K = " << neuron.E_K << "\n";
    out << "neuron.V_spk = " << neuron.V_spk << "\n";
    out << "neuron.dt_ms = " << dt_ms << "\n";
    out << "synapse.tau_ex = " << synapse_template.tau_ex << "\n";
    out << "synapse.tau_in = " << synapse_template.tau_in << "\n";
    out << "synapse.E_ex = " << synapse_template.E_ex << "\n";
    out << "synapse.E_in = " << synapse_template.E_in << "\n";
    out << "balance.V_th = " << balance.V_th << "\n";
    out << "balance.V_bar = " << balance.V_bar << "\n";
    out << "balance.lambda_ex_ref = " << balance.lambda_ex_ref << "\n";
    out << "constraints.g0 = " << constraints.g0 << "\n";
    out << "constraints.g1 = " << constraints.g1 << "\n";
    out << "energy.C0 = " << energy.C0 << "\n";
    out << "energy.C1 = " << energy.C1 << "\n";
    return out.str();
  }
};

}  // namespace isich
