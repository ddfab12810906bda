#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "isich/errors.hpp"
#include "isich/random.hpp"

namespace isich {

struct SpikeTrain {
  std::vector<double> times;  // seconds, strictly increasing
  double duration = 0.0;      // seconds

  double rate() const {
    return duration > 0.0 ? static_cast<double>(times.size()) / duration : 0.0;
  }
};

// Rate-compensated synchrony: each excitatory neuron fires an independent
// Poisson(lambda_new) train, lambda_new = lambda_old - S * lambda_syn, and
// additionally receives the shared synchronous-event spikes it was selected
// for, so the mean rate stays at lambda_old.
struct SynchronyConfig {
  double lambda_old = 0.0;    // Hz, base excitatory rate
  double lambda_syn = 0.0;    // Hz, synchronous-event rate
  double participation = 0.5; // S, fraction of neurons per event
  int n_neurons = 400;        // excitatory population size
  // Spikes closer than this are merged into one (exact coincidences and
  // floating-point ties; sub-dt duplicates are handled by the integrator).
  double merge_epsilon = 1e-12;

  double lambda_new() const {
    return lambda_old - participation * lambda_syn;
  }

  void validate() const {
    if (lambda_old < 0.0 || lambda_syn < 0.0)
      throw config_error("SynchronyConfig: rates must be nonnegative");
    if (!(participation > 0.0 && participation < 1.0))
      throw config_error("SynchronyConfig: participation must be in (0,1)");
    if (n_neurons <= 0)
      throw config_error("SynchronyConfig: n_neurons must be positive");
    if (lambda_new() < -1e-12)
      throw config_error(
          "SynchronyConfig: infeasible rate compensation, lambda_old - "
          "S*lambda_syn = " +
          std::to_string(lambda_new()) + " Hz < 0");
  }

  int participants_per_event() const {
    return static_cast<int>(std::lround(participation * n_neurons));
  }
};

struct PopulationActivity {
  std::vector<SpikeTrain> excitatory;
  std::vector<SpikeTrain> inhibitory;
  SpikeTrain sync_events;
  SynchronyConfig config;
  double duration = 0.0;  // seconds
};

// Expected fraction of each neuron's spikes attributable to synchronous
// events: s = S * lambda_syn / lambda_old.
inline double synchrony_level(const SynchronyConfig& cfg) {
  cfg.validate();
  if (cfg.lambda_old == 0.0)
    throw config_error("synchrony_level: undefined for lambda_old = 0");
  return cfg.participation * cfg.lambda_syn / cfg.lambda_old;
}

// Inverse of synchrony_level at fixed participation S: given a target
// level s for base rate lambda_old, the synchronous-event rate.
inline double sync_rate_for_level(double lambda_old, double s,
                                  double participation) {
  return s * lambda_old / participation;
}

inline SpikeTrain generate_poisson_train(double rate, double duration,
                                         std::uint64_t seed,
                                         std::uint64_t stream = 0) {
  if (rate < 0.0) throw config_error("generate_poisson_train: negative rate");
  if (duration <= 0.0)
    throw config_error("generate_poisson_train: nonpositive duration");
  SpikeTrain train;
  train.duration = duration;
  if (rate == 0.0) return train;
  CounterRng rng(seed, stream);
  double t = rng.exponential(rate);
  while (t < duration) {
    train.times.push_back(t);
    t += rng.exponential(rate);
  }
  return train;
}

namespace detail {

// Merge extra spike times into an existing sorted train, dropping
// coincidences closer than eps.
inline void merge_into(SpikeTrain& train, const std::vector<double>& extra,
                       double eps) {
  if (extra.empty()) return;
  train.times.insert(train.times.end(), extra.begin(), extra.end());
  std::sort(train.times.begin(), train.times.end());
  auto last = std::unique(train.times.begin(), train.times.end(),
                          [eps](double a, double b) { return b - a <= eps; });
  train.times.erase(last, train.times.end());
}

}  // namespace detail

// Streams: excitatory neuron i uses stream i, inhibitory j uses 2^20 + j,
// the shared event train uses 2^21, per-event selection 2^21 + 1 + event.
inline PopulationActivity generate_synchronized_population(
    const SynchronyConfig& cfg, double lambda_in, int n_inhibitory,
    double duration, std::uint64_t seed) {
  cfg.validate();
  if (lambda_in < 0.0)
    throw config_error("generate_synchronized_population: negative lambda_in");
  if (n_inhibitory < 0)
    throw config_error("generate_synchronized_population: negative n_in");
  if (duration <= 0.0)
    throw config_error("generate_synchronized_population: nonpositive duration");

  constexpr std::uint64_t inh_base = 1ull << 20;
  constexpr std::uint64_t sync_stream = 1ull << 21;

  PopulationActivity pop;
  pop.config = cfg;
  pop.duration = duration;

  const double lambda_new = std::max(0.0, cfg.lambda_new());
  pop.excitatory.reserve(cfg.n_neurons);
  for (int i = 0; i < cfg.n_neurons; ++i)
    pop.excitatory.push_back(
        generate_poisson_train(lambda_new, duration, seed, i));

  pop.sync_events = generate_poisson_train(cfg.lambda_syn, duration, seed,
                                           sync_stream);

  // Exactly round(S*n) distinct participants per event, drawn by partial
  // Fisher-Yates from an event-indexed stream.
  const int k = cfg.participants_per_event();
  if (k > 0 && !pop.sync_events.times.empty()) {
    std::vector<std::vector<double>> inserts(cfg.n_neurons);
    std::vector<int> idx(cfg.n_neurons);
    for (std::size_t e = 0; e < pop.sync_events.times.size(); ++e) {
      std::iota(idx.begin(), idx.end(), 0);
      CounterRng pick(seed, sync_stream + 1 + e);
      for (int j = 0; j < k; ++j) {
        const auto r = j + pick.below(cfg.n_neurons - j);
        std::swap(idx[j], idx[r]);
        inserts[idx[j]].push_back(pop.sync_events.times[e]);
      }
    }
    for (int i = 0; i < cfg.n_neurons; ++i)
      detail::merge_into(pop.excitatory[i], inserts[i], cfg.merge_epsilon);
  }

  pop.inhibitory.reserve(n_inhibitory);
  for (int j = 0; j < n_inhibitory; ++j)
    pop.inhibitory.push_back(
        generate_poisson_train(lambda_in, duration, seed, inh_base + j));

  return pop;
}

inline void write_spike_csv(const std::string& path,
                            const PopulationActivity& pop) {
  std::ofstream out(path);
  if (!out) throw config_error("write_spike_csv: cannot open " + path);
  out << "neuron_id,population,time_s\n";
  for (std::size_t i = 0; i < pop.excitatory.size(); ++i)
    for (double t : pop.excitatory[i].times)
      out << i << ",E," << t << "\n";
  for (std::size_t j = 0; j < pop.inhibitory.size(); ++j)
    for (double t : pop.inhibitory[j].times)
      out << j << ",I," << t << "\n";
}

}  // namespace isich
