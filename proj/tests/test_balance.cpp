#include <catch_amalgamated.hpp>

#include <cmath>

#include "isich/balance.hpp"
#include "isich/spikegen.hpp"
#include "oracles.hpp"

using namespace isich;

TEST_CASE("target steady-state current") {
  BalanceSpec spec;  // V_th = -55
  HhParameters params;  // g_L = 0.05, E_L = -65
  REQUIRE(steady_state_current(spec, params) ==
          Catch::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("solved weights reconstruct the target mean currents") {
  BalanceSpec spec;
  HhParameters params;
  const auto syn = solve_weights(spec, SynapseParameters{}, params);
  const double j_ss = steady_state_current(spec, params);
  const double j_ex =
      mean_synaptic_current(spec.n_ex, spec.lambda_ex_ref, syn.w_ex,
                            syn.tau_ex, syn.E_ex, spec.V_bar);
  const double j_in =
      mean_synaptic_current(spec.n_in, spec.lambda_in, syn.w_in, syn.tau_in,
                            syn.E_in, spec.V_bar);
  REQUIRE(j_ex == Catch::Approx(2.0 * j_ss).epsilon(1e-14));
  REQUIRE(j_in == Catch::Approx(-j_ss).epsilon(1e-14));
  REQUIRE(j_ex + j_in == Catch::Approx(j_ss).epsilon(1e-12));
}

TEST_CASE("weight scaling with population size") {
  BalanceSpec base;
  HhParameters params;
  const auto syn0 = solve_weights(base, SynapseParameters{}, params);

  // Doubling n_ex at fixed total rate (per-neuron rate halved) leaves
  // w_ex unchanged.
  BalanceSpec fixed_total = base;
  fixed_total.n_ex *= 2;
  fixed_total.lambda_ex_ref /= 2.0;
  const auto syn1 = solve_weights(fixed_total, SynapseParameters{}, params);
  REQUIRE(syn1.w_ex == Catch::Approx(syn0.w_ex).epsilon(1e-14));

  // Doubling n_ex with per-neuron rate fixed halves w_ex (and requires
  // the inhibitory side to rebalance).
  BalanceSpec fixed_rate = base;
  fixed_rate.n_ex *= 2;
  fixed_rate.n_in *= 2;
  const auto syn2 = solve_weights(fixed_rate, SynapseParameters{}, params);
  REQUIRE(syn2.w_ex == Catch::Approx(0.5 * syn0.w_ex).epsilon(1e-14));
}

TEST_CASE("rate-balance invariant enforced") {
  BalanceSpec spec;
  spec.lambda_in = 100.0;  // breaks n_ex * lambda_ex_ref == n_in * lambda_in
  REQUIRE_THROWS_AS(solve_weights(spec, SynapseParameters{}, HhParameters{}),
                    config_error);
}

TEST_CASE("linearization point must sit between the reversals") {
  BalanceSpec spec;
  spec.V_bar = 10.0;  // above E_ex
  REQUIRE_THROWS_AS(solve_weights(spec, SynapseParameters{}, HhParameters{}),
                    config_error);
}

TEST_CASE("passive mean voltage sits near V_th with solved weights") {
  BalanceSpec spec;
  spec.n_ex = 200;
  spec.n_in = 50;
  HhParameters params;
  params.g_Na = 0.0;
  params.g_K = 0.0;
  const auto syn = solve_weights(spec, SynapseParameters{}, params);

  SynchronyConfig cfg{spec.lambda_ex_ref, 0.0001, 0.5, spec.n_ex};
  const auto pop = generate_synchronized_population(cfg, spec.lambda_in,
                                                    spec.n_in, 10.0, 21);
  SimOptions opt;
  opt.record_voltage = true;
  const auto res = simulate(params, syn, pop, opt);
  // Mean over the post-transient trace.
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < res.trace_v_mv.size(); ++i) {
    if (res.trace_time_ms[i] < 500.0) continue;
    sum += res.trace_v_mv[i];
    ++n;
  }
  const double v_mean = sum / n;
  REQUIRE(std::fabs(v_mean - spec.V_th) < 2.0);
}
