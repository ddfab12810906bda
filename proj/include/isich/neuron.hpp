#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "isich/errors.hpp"
#include "isich/spikegen.hpp"

namespace isich {

// Units: V in mV, conductances in mS/cm^2, currents in uA/cm^2, C_m in
// uF/cm^2, time constants in ms.
struct HhParameters {
  double C_m = 1.0;
  double g_L = 0.05;
  double E_L = -65.0;
  double g_Na = 120.0;
  double E_Na = 50.0;
  double g_K = 36.0;
  double E_K = -77.0;
  double V_spk = 0.0;  // spike detection threshold, mV

  void validate() const {
    if (!(C_m > 0.0)) throw config_error("HhParameters: C_m must be positive");
    if (g_L < 0.0 || g_Na < 0.0 || g_K < 0.0)
      throw config_error("HhParameters: conductances must be nonnegative");
    if (!(E_Na > E_L && E_L > E_K))
      throw config_error("HhParameters: require E_Na > E_L > E_K");
  }
};

struct SynapseParameters {
  double w_ex = 0.0;      // mS/cm^2 per spike
  double w_in = 0.0;      // mS/cm^2 per spike
  double tau_ex = 3.0;    // ms
  double tau_in = 10.0;   // ms
  double E_ex = 0.0;      // mV
  double E_in = -80.0;    // mV

  void validate() const {
    if (w_ex < 0.0 || w_in < 0.0)
      throw config_error("SynapseParameters: weights must be nonnegative");
    if (!(tau_ex > 0.0 && tau_in > 0.0))
      throw config_error("SynapseParameters: time constants must be positive");
  }
};

struct HhState {
  double V;
  double m, h, n;
  double g_ex, g_in;
};

struct IsiSample {
  std::vector<double> isis;  // seconds, all positive
  double lambda_ex = 0.0;    // Hz label
  double s = 0.0;            // synchrony-level label
};

struct SimOptions {
  double dt_ms = 0.025;
  bool record_voltage = false;
  double refractory_ms = 2.0;
  // Constant injected current (uA/cm^2); test hook for deterministic drive.
  double I_ext = 0.0;
};

struct SimResult {
  std::vector<double> spike_times;  // seconds
  std::vector<double> trace_time_ms;
  std::vector<double> trace_v_mv;
  HhState final_state{};
  double gating_min = 1.0;  // smallest m/h/n value seen
  double gating_max = 0.0;  // largest m/h/n value seen
};

namespace hh {

// Canonical squid-axon rate functions (1/ms), voltage in mV.
inline double stable_ratio(double x, double scale) {
  // x / (1 - exp(-x/scale)) without the removable singularity at x = 0.
  const double r = x / scale;
  if (std::fabs(r) < 1e-7) return scale * (1.0 + 0.5 * r);
  return x / (1.0 - std::exp(-r));
}

inline double alpha_m(double v) { return 0.1 * stable_ratio(v + 40.0, 10.0); }
inline double beta_m(double v) { return 4.0 * std::exp(-(v + 65.0) / 18.0); }
inline double alpha_h(double v) { return 0.07 * std::exp(-(v + 65.0) / 20.0); }
inline double beta_h(double v) {
  return 1.0 / (1.0 + std::exp(-(v + 35.0) / 10.0));
}
inline double alpha_n(double v) { return 0.01 * stable_ratio(v + 55.0, 10.0); }
inline double beta_n(double v) { return 0.125 * std::exp(-(v + 65.0) / 80.0); }

inline double x_inf(double a, double b) { return a / (a + b); }

inline HhState resting_state(const HhParameters& p) {
  HhState st;
  st.V = p.E_L;
  st.m = x_inf(alpha_m(st.V), beta_m(st.V));
  st.h = x_inf(alpha_h(st.V), beta_h(st.V));
  st.n = x_inf(alpha_n(st.V), beta_n(st.V));
  st.g_ex = 0.0;
  st.g_in = 0.0;
  return st;
}

// Total membrane current at steady-state gating for voltage v (uA/cm^2,
// positive = outward). Root of this is the resting potential.
inline double steady_state_current(const HhParameters& p, double v,
                                   double I_ext = 0.0) {
  const double m = x_inf(alpha_m(v), beta_m(v));
  const double h = x_inf(alpha_h(v), beta_h(v));
  const double n = x_inf(alpha_n(v), beta_n(v));
  return p.g_L * (v - p.E_L) + p.g_Na * m * m * m * h * (v - p.E_Na) +
         p.g_K * n * n * n * n * (v - p.E_K) - I_ext;
}

struct Derivs {
  double dV, dm, dh, dn, dgex, dgin;
};

inline Derivs derivatives(const HhParameters& p, const SynapseParameters& syn,
                          const HhState& s, double I_ext) {
  Derivs d;
  const double I_Na = p.g_Na * s.m * s.m * s.m * s.h * (s.V - p.E_Na);
  const double I_K = p.g_K * s.n * s.n * s.n * s.n * (s.V - p.E_K);
  const double I_L = p.g_L * (s.V - p.E_L);
  const double I_syn =
      s.g_ex * (s.V - syn.E_ex) + s.g_in * (s.V - syn.E_in);
  d.dV = (-I_L - I_Na - I_K - I_syn + I_ext) / p.C_m;
  d.dm = alpha_m(s.V) * (1.0 - s.m) - beta_m(s.V) * s.m;
  d.dh = alpha_h(s.V) * (1.0 - s.h) - beta_h(s.V) * s.h;
  d.dn = alpha_n(s.V) * (1.0 - s.n) - beta_n(s.V) * s.n;
  d.dgex = -s.g_ex / syn.tau_ex;
  d.dgin = -s.g_in / syn.tau_in;
  return d;
}

inline HhState advance(const HhState& s, const Derivs& d, double dt) {
  return {s.V + dt * d.dV,     s.m + dt * d.dm,     s.h + dt * d.dh,
          s.n + dt * d.dn,     s.g_ex + dt * d.dgex, s.g_in + dt * d.dgin};
}

}  // namespace hh

namespace detail {

// Per-step synaptic conductance increments: spikes land on the nearest
// step boundary.
inline std::vector<std::pair<std::int64_t, float>> bin_spikes(
    const std::vector<SpikeTrain>& trains, double weight, double dt_s,
    std::int64_t n_steps) {
  std::vector<double> all;
  std::size_t total = 0;
  for (const auto& tr : trains) total += tr.times.size();
  all.reserve(total);
  for (const auto& tr : trains)
    all.insert(all.end(), tr.times.begin(), tr.times.end());
  std::sort(all.begin(), all.end());
  std::vector<std::pair<std::int64_t, float>> jumps;
  jumps.reserve(all.size());
  for (double t : all) {
    auto step = static_cast<std::int64_t>(std::llround(t / dt_s));
    step = std::clamp<std::int64_t>(step, 0, n_steps);
    if (!jumps.empty() && jumps.back().first == step)
      jumps.back().second += static_cast<float>(weight);
    else
      jumps.emplace_back(step, static_cast<float>(weight));
  }
  return jumps;
}

}  // namespace detail

// Fixed-step RK4 integration of the conductance-driven HH neuron.
// Returns output spike times (upward crossings of V_spk with refractory
// lockout) and optionally the voltage trace.
inline SimResult simulate(const HhParameters& params,
                          const SynapseParameters& syn,
                          const PopulationActivity& input,
                          const SimOptions& opt = {}) {
  params.validate();
  syn.validate();
  if (!(opt.dt_ms > 0.0 && opt.dt_ms <= 0.05))
    throw config_error("simulate: dt must be in (0, 0.05] ms, got " +
                       std::to_string(opt.dt_ms));
  if (!(input.duration > 0.0))
    throw config_error("simulate: input duration must be positive");

  const double dt = opt.dt_ms;          // ms
  const double dt_s = dt * 1e-3;        // s
  const auto n_steps =
      static_cast<std::int64_t>(std::llround(input.duration / dt_s));

  const auto ex_jumps =
      detail::bin_spikes(input.excitatory, syn.w_ex, dt_s, n_steps);
  const auto in_jumps =
      detail::bin_spikes(input.inhibitory, syn.w_in, dt_s, n_steps);

  HhState st = hh::resting_state(params);
  SimResult res;
  if (opt.record_voltage) {
    res.trace_time_ms.reserve(n_steps + 1);
    res.trace_v_mv.reserve(n_steps + 1);
  }

  std::size_t iex = 0, iin = 0;
  double last_spike_ms = -1e18;
  double prev_v = st.V;

  for (std::int64_t step = 0; step <= n_steps; ++step) {
    while (iex < ex_jumps.size() && ex_jumps[iex].first == step)
      st.g_ex += ex_jumps[iex++].second;
    while (iin < in_jumps.size() && in_jumps[iin].first == step)
      st.g_in += in_jumps[iin++].second;

    const double t_ms = step * dt;
    if (opt.record_voltage) {
      res.trace_time_ms.push_back(t_ms);
      res.trace_v_mv.push_back(st.V);
    }
    if (st.V >= params.V_spk && prev_v < params.V_spk &&
        t_ms - last_spike_ms >= opt.refractory_ms) {
      res.spike_times.push_back(t_ms * 1e-3);
      last_spike_ms = t_ms;
    }
    prev_v = st.V;
    if (step == n_steps) break;

    const auto k1 = hh::derivatives(params, syn, st, opt.I_ext);
    const auto s2 = hh::advance(st, k1, 0.5 * dt);
    const auto k2 = hh::derivatives(params, syn, s2, opt.I_ext);
    const auto s3 = hh::advance(st, k2, 0.5 * dt);
    const auto k3 = hh::derivatives(params, syn, s3, opt.I_ext);
    const auto s4 = hh::advance(st, k3, dt);
    const auto k4 = hh::derivatives(params, syn, s4, opt.I_ext);

    st.V += dt / 6.0 * (k1.dV + 2.0 * k2.dV + 2.0 * k3.dV + k4.dV);
    st.m += dt / 6.0 * (k1.dm + 2.0 * k2.dm + 2.0 * k3.dm + k4.dm);
    st.h += dt / 6.0 * (k1.dh + 2.0 * k2.dh + 2.0 * k3.dh + k4.dh);
    st.n += dt / 6.0 * (k1.dn + 2.0 * k2.dn + 2.0 * k3.dn + k4.dn);
    st.g_ex += dt / 6.0 * (k1.dgex + 2.0 * k2.dgex + 2.0 * k3.dgex + k4.dgex);
    st.g_in += dt / 6.0 * (k1.dgin + 2.0 * k2.dgin + 2.0 * k3.dgin + k4.dgin);

    res.gating_min = std::min({res.gating_min, st.m, st.h, st.n});
    res.gating_max = std::max({res.gating_max, st.m, st.h, st.n});

    if (!std::isfinite(st.V))
      throw numerical_error("simulate: diverged at t = " +
                            std::to_string(t_ms) + " ms (step " +
                            std::to_string(step) + ")");
  }
  res.final_state = st;
  return res;
}

// Successive differences of spikes at or after transient_cut seconds.
inline IsiSample extract_isis(const std::vector<double>& spike_times,
                              double transient_cut) {
  auto first = std::lower_bound(spike_times.begin(), spike_times.end(),
                                transient_cut);
  const auto n = static_cast<std::size_t>(spike_times.end() - first);
  if (n < 2)
    throw data_error("extract_isis: need at least 2 post-transient spikes, "
                     "have " + std::to_string(n));
  IsiSample sample;
  sample.isis.reserve(n - 1);
  for (auto it = first + 1; it != spike_times.end(); ++it)
    sample.isis.push_back(*it - *(it - 1));
  return sample;
}

}  // namespace isich
