#include <catch_amalgamated.hpp>

#include <cmath>

#include "isich/quadrature.hpp"

using namespace isich;

TEST_CASE("polynomial integrates exactly") {
  REQUIRE(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
          Catch::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("oscillatory integrand") {
  REQUIRE(integrate([](double x) { return std::sin(x); }, 0.0, 20.0, 1e-12) ==
          Catch::Approx(1.0 - std::cos(20.0)).epsilon(1e-10));
}

TEST_CASE("semi-infinite gaussian tail") {
  const double ref = std::sqrt(M_PI) / 2.0;
  REQUIRE(integrate_to_inf([](double x) { return std::exp(-x * x); }, 0.0,
                           1e-12) == Catch::Approx(ref).epsilon(1e-10));
}

TEST_CASE("left endpoint power singularity") {
  // int_0^1 x^(-1/2) dx = 2, p = 1/2
  REQUIRE(integrate_left_singular(
              [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 0.5) ==
          Catch::Approx(2.0).epsilon(1e-10));
  // int_2^3 (x-2)^(-0.7) dx = (1)^{0.3}/0.3
  REQUIRE(integrate_left_singular(
              [](double x) { return std::pow(x - 2.0, -0.7); }, 2.0, 3.0,
              0.3) == Catch::Approx(1.0 / 0.3).epsilon(1e-9));
}

TEST_CASE("non-finite integrand raises") {
  REQUIRE_THROWS_AS(
      integrate([](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0),
      numerical_error);
}
