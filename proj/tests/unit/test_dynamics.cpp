#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fixtures.hpp"
#include "smc/errors.hpp"
#include "smc/scenarios.hpp"

using namespace smc;
using namespace smc::test;

TEST_CASE("state vector rejects empty and non-finite input") {
  CHECK_THROWS_AS(StateVector(Vector{}), DimensionError);
  CHECK_THROWS_AS(StateVector({1.0, std::numeric_limits<double>::quiet_NaN()}), NumericsError);
  CHECK_THROWS_AS(StateVector({std::numeric_limits<double>::infinity()}), NumericsError);
  const StateVector x{1.0, -3.0};
  CHECK(x.dimension() == 2);
  CHECK(x.max_abs() == 3.0);
}

TEST_CASE("surface value") {
  const auto lin = linear_surface();
  CHECK(surface_value(lin, {1.0, 1.0}) == 2.0);
  CHECK(surface_value(lin, {2.0, -2.0}) == 0.0);
  CHECK(surface_value(quadratic_surface(), {3.0, 0.0}) == 9.0);
  CHECK_THROWS_AS(surface_value(lin, {1.0}), DimensionError);
  CHECK_THROWS_AS(surface_value(lin, {1.0, 2.0, 3.0}), DimensionError);
}

TEST_CASE("surface gradient") {
  const auto lin = linear_surface();
  CHECK(surface_gradient(lin, {-4.0, 7.5}) == Vector{1.0, 1.0});
  CHECK(surface_gradient(quadratic_surface(), {3.0, 0.0}) == Vector{6.0, 1.0});
  CHECK_THROWS_AS(surface_gradient(lin, {1.0}), DimensionError);
}

TEST_CASE("finite-difference gradient") {
  SUBCASE("exact for linear surfaces") {
    const Vector g = surface_gradient_fd(linear_surface(), {0.0, 0.0}, 1e-5);
    CHECK(std::abs(g[0] - 1.0) <= 1e-9);
    CHECK(std::abs(g[1] - 1.0) <= 1e-9);
  }
  SUBCASE("symmetric difference of a quadratic") {
    const Vector g = surface_gradient_fd(quadratic_surface(), {2.0, 0.7}, 1e-5);
    CHECK(std::abs(g[0] - 4.0) <= 1e-8);
  }
  SUBCASE("pendulum surface at (0.5, 0.2)") {
    ScenarioSpec spec{"pendulum", {}, {}};
    const Scenario sc = make_scenario(spec, DisturbanceSignal::zero());
    const StateVector x{0.5, 0.2};
    const Vector analytic = surface_gradient(sc.surface, x);
    const Vector fd = surface_gradient_fd(sc.surface, x, 1e-5);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(std::abs(analytic[i] - fd[i]) <= 1e-6 * std::abs(analytic[i]));
    }
  }
  SUBCASE("step must be positive") {
    CHECK_THROWS_AS(surface_gradient_fd(linear_surface(), {0.0, 0.0}, 0.0), ParameterError);
    CHECK_THROWS_AS(surface_gradient_fd(linear_surface(), {0.0, 0.0}, -1e-5), ParameterError);
  }
}

TEST_CASE("analytic gradients agree with central differences on random states") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  for (const auto& surface : {linear_surface(), quadratic_surface(), trig_surface()}) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const StateVector x{coord(rng), coord(rng)};
      const Vector g = surface_gradient(surface, x);
      const Vector fd = surface_gradient_fd(surface, x, 1e-5);
      const double diff = std::max(std::abs(g[0] - fd[0]), std::abs(g[1] - fd[1]));
      worst = std::max(worst, diff / std::max(max_abs(g), 1e-300));
    }
    INFO(surface.description);
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("sgn") {
  CHECK(sgn(3.2) == 1);
  CHECK(sgn(0.0) == 0);
  CHECK(sgn(-0.0) == 0);
  CHECK(sgn(-0.5) == -1);
  CHECK(sgn(std::numeric_limits<double>::denorm_min()) == 1);
  CHECK_THROWS_AS(sgn(std::numeric_limits<double>::quiet_NaN()), ParameterError);
  CHECK_THROWS_AS(sgn(-std::numeric_limits<double>::infinity()), ParameterError);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> v(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = v(rng);
    CHECK(sgn(-x) == -sgn(x));
  }
}

TEST_CASE("plant derivative") {
  CHECK(eval_plant_derivative(double_integrator(), {1.0, 1.0}, 0.0, -2.0) == Vector{1.0, -2.0});
  CHECK(eval_plant_derivative(double_integrator(), {0.0, 0.0}, 0.0, 0.0) == Vector{0.0, 0.0});
  CHECK(eval_plant_derivative(double_integrator(DisturbanceSignal::constant(1.0)), {0.0, 0.0}, 0.0,
                              0.0) == Vector{0.0, 1.0});
  CHECK_THROWS_AS(eval_plant_derivative(double_integrator(), {0.0, 0.0}, 0.0, NAN), NumericsError);
  CHECK_THROWS_AS(eval_plant_derivative(double_integrator(), {0.0}, 0.0, 0.0), DimensionError);

  SystemModel blowup = double_integrator();
  blowup.drift = [](const StateVector&, double) { return Vector{1e308, 0.0}; };
  blowup.unmatched_disturbance = [](const StateVector&, double) { return Vector{1e308, 0.0}; };
  CHECK_THROWS_AS(eval_plant_derivative(blowup, {0.0, 0.0}, 0.0, 0.0), NumericsError);
}

TEST_CASE("plant derivative is linear in u through b") {
  ScenarioSpec spec{"pendulum", {}, {}};
  const Scenario sc = make_scenario(spec, DisturbanceSignal::sinusoid(0.3, 2.0),
                                    DisturbanceSignal::seeded_random(0.4, 5.0, 9));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    const StateVector x{coord(rng), coord(rng)};
    const double t = std::abs(coord(rng));
    const double u1 = coord(rng);
    const double u2 = coord(rng);
    const Vector a = eval_plant_derivative(sc.model, x, t, u1);
    const Vector b = eval_plant_derivative(sc.model, x, t, u2);
    const Vector gain = sc.model.input_at(x);
    for (std::size_t k = 0; k < 2; ++k) {
      const double scale = std::abs(a[k]) + std::abs(b[k]) + 1.0;
      CHECK(std::abs((a[k] - b[k]) - gain[k] * (u1 - u2)) <= 1e-14 * scale);
    }
  }
}

TEST_CASE("disturbance signals respect their analytic bound") {
  const std::vector<DisturbanceSignal> signals{
      DisturbanceSignal::zero(),
      DisturbanceSignal::constant(-1.5),
      DisturbanceSignal::sinusoid(0.8, 5.0),
      DisturbanceSignal::sinusoid(0.3, 1.0, -0.2),
      DisturbanceSignal::seeded_random(0.5, 10.0, 1),
      DisturbanceSignal::seeded_random(1.0, 0.5, 99, 0.25),
  };
  for (const auto& sig : signals) {
    for (int k = 0; k <= 20000; ++k) {
      const double t = 0.00137 * k;
      REQUIRE(std::abs(sig.value(t)) <= sig.sup_abs());
    }
  }
  CHECK(DisturbanceSignal::constant(-1.5).sup_abs() == 1.5);
  CHECK(DisturbanceSignal::sinusoid(0.3, 1.0, -0.2).sup_abs() == doctest::Approx(0.5));
}

TEST_CASE("seeded random signal is reproducible and seed-dependent") {
  const auto a = DisturbanceSignal::seeded_random(1.0, 10.0, 123);
  const auto b = DisturbanceSignal::seeded_random(1.0, 10.0, 123);
  const auto c = DisturbanceSignal::seeded_random(1.0, 10.0, 124);
  bool differs = false;
  // Evaluation order does not matter.
  for (int k = 500; k >= 0; --k) {
    const double t = 0.0173 * k;
    CHECK(a.value(t) == b.value(t));
    differs = differs || a.value(t) != c.value(t);
  }
  CHECK(differs);
  CHECK_THROWS_AS(DisturbanceSignal::seeded_random(1.0, 0.0, 1), ParameterError);
}

TEST_CASE("unmatched disturbance stays inside its bound vector") {
  ScenarioSpec spec{"double-integrator", {}, {}};
  const Scenario sc = make_scenario(spec, DisturbanceSignal::zero(),
                                    DisturbanceSignal::seeded_random(0.5, 10.0, 4));
  for (int k = 0; k < 5000; ++k) {
    const double t = 0.002 * k;
    const Vector w = sc.model.unmatched_at({0.1, 0.2}, t);
    for (std::size_t i = 0; i < w.size(); ++i) REQUIRE(std::abs(w[i]) <= sc.model.unmatched_bound[i]);
  }
}
