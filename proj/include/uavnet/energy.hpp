#pragma once

namespace uavnet {

// Rotary-wing propulsion model parameters. Defaults are the reference
// values of the widely used rotary-wing energy model (Zeng et al., 2019).
struct EnergyParams {
  double blade_profile_w = 79.86;  // P0
  double induced_w = 88.63;        // Pi
  double tip_speed = 120.0;        // U_tip, m/s
  double induced_velocity = 4.03;  // v0, m/s
  double drag_ratio = 0.6;         // d0
  double air_density = 1.225;      // rho, kg/m^3
  double solidity = 0.05;          // s
  double rotor_area = 0.503;       // A, m^2
};

void validate(const EnergyParams& params);

/// Propulsion power (W) in level flight at speed v > 0.
double propulsion_power(double speed, const EnergyParams& params);

/// Energy (J) to fly `distance` metres at constant speed v.
double relocation_cost(double distance, double speed, const EnergyParams& params);

/// Speed minimizing energy per metre, by golden-section search on [lo, hi].
double min_energy_speed(const EnergyParams& params, double lo = 0.5, double hi = 60.0,
                        double tol = 1e-6);

}  // namespace uavnet
