#include "uavnet/energy.hpp"

#include <cmath>

#include "uavnet/errors.hpp"

namespace uavnet {

void validate(const EnergyParams& p) {
  for (double v : {p.blade_profile_w, p.induced_w, p.tip_speed, p.induced_velocity,
                   p.drag_ratio, p.air_density, p.solidity, p.rotor_area}) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidArgument("energy model parameters must be finite and positive");
  }
}

double propulsion_power(double v, const EnergyParams& p) {
  if (!(v > 0.0)) throw InvalidArgument("propulsion power needs a positive speed");
  const double blade = p.blade_profile_w * (1.0 + 3.0 * v * v / (p.tip_speed * p.tip_speed));
  const double induced = p.induced_w * p.induced_velocity / v;
  const double parasite = 0.5 * p.drag_ratio * p.air_density * p.solidity * p.rotor_area * v * v * v;
  return blade + induced + parasite;
}

double relocation_cost(double distance, double v, const EnergyParams& p) {
  if (!(distance >= 0.0)) throw InvalidArgument("relocation distance must be >= 0");
  return propulsion_power(v, p) * (distance / v);
}

double min_energy_speed(const EnergyParams& p, double lo, double hi, double tol) {
  if (!(lo > 0.0 && hi > lo)) throw InvalidArgument("speed bracket must satisfy 0 < lo < hi");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto per_metre = [&](double v) { return propulsion_power(v, p) / v; };
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = per_metre(c);
  double fd = per_metre(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = per_metre(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = per_metre(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace uavnet
