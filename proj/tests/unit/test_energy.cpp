#include <doctest.h>

#include <uavnet/energy.hpp>
#include <uavnet/errors.hpp>

using namespace uavnet;

TEST_CASE("propulsion power at reference parameters") {
  const EnergyParams p;
  // tests/oracles/formulas.py
  CHECK(propulsion_power(10.0, p) == doctest::Approx(126.484265).epsilon(1e-12));
  CHECK_THROWS_AS(propulsion_power(0.0, p), InvalidArgument);
  CHECK_THROWS_AS(propulsion_power(-1.0, p), InvalidArgument);
}

TEST_CASE("blade profile term is additive") {
  const EnergyParams p;
  EnergyParams q = p;
  q.blade_profile_w *= 2.0;
  for (double v : {1.0, 7.5, 30.0}) {
    const double blade = p.blade_profile_w * (1.0 + 3.0 * v * v / (p.tip_speed * p.tip_speed));
    CHECK(propulsion_power(v, q) - propulsion_power(v, p) == doctest::Approx(blade));
  }
}

TEST_CASE("propulsion power is convex and diverges at both ends") {
  const EnergyParams p;
  const double h = 0.01;
  for (int i = 1; i <= 1000; ++i) {
    const double v = 0.05 * i;
    const double second = propulsion_power(v + h, p) - 2 * propulsion_power(v, p) +
                          propulsion_power(v - h, p);
    CHECK(second >= 0.0);
  }
  CHECK(propulsion_power(1e-3, p) > propulsion_power(20.0, p));
  CHECK(propulsion_power(1e3, p) > propulsion_power(20.0, p));
}

TEST_CASE("relocation cost") {
  const EnergyParams p;
  CHECK(relocation_cost(0.0, 10.0, p) == 0.0);
  CHECK(relocation_cost(100.0, 10.0, p) == doctest::Approx(propulsion_power(10.0, p) * 10.0));
  CHECK(relocation_cost(200.0, 10.0, p) == doctest::Approx(2.0 * relocation_cost(100.0, 10.0, p)));
  for (double d : {0.5, 3.0, 77.7, 412.0})
    CHECK(relocation_cost(d, 12.0, p) == doctest::Approx(d * relocation_cost(1.0, 12.0, p)).epsilon(1e-9));
  CHECK_THROWS_AS(relocation_cost(-1.0, 10.0, p), InvalidArgument);
  CHECK_THROWS_AS(relocation_cost(10.0, 0.0, p), InvalidArgument);
}

TEST_CASE("minimum energy speed") {
  // tests/oracles/formulas.py
  CHECK(min_energy_speed(EnergyParams{}) == doctest::Approx(18.3017639338556).epsilon(1e-6));
  CHECK_THROWS_AS(min_energy_speed(EnergyParams{}, 5.0, 1.0), InvalidArgument);
}

TEST_CASE("energy parameters must be positive") {
  EnergyParams p;
  CHECK_NOTHROW(validate(p));
  p.rotor_area = 0.0;
  CHECK_THROWS_AS(validate(p), InvalidArgument);
}
