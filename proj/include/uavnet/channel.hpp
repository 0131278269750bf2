#pragma once

#include <cmath>

#include "uavnet/rng.hpp"

namespace uavnet {

// LoS link parameters. Bandwidth and noise defaults are not Table-I values;
// they are plausible 73 GHz figures chosen for this simulator.
struct ChannelParams {
  double carrier_ghz = 73.0;
  double alpha_db = 69.8;
  double beta = 2.0;
  double tx_power_dbm = 30.0;
  double tx_gain_db = 0.0;
  double rx_gain_db = 0.0;
  double noise_power_dbm = -85.0;
  double bandwidth_hz = 100e6;
  double rician_k = 2.0;
};

void validate(const ChannelParams& params);

double path_loss_db(double distance_m, const ChannelParams& params);
double received_power_dbm(double distance_m, const ChannelParams& params);

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// |g|^2 with unit mean: Rician (factor K) for LoS, Rayleigh for NLoS.
double sample_gain_sq(bool is_los, double rician_k, Rng& rng);

/// Precomputed linear-domain link budget for the throughput hot path.
class LinkBudget {
 public:
  explicit LinkBudget(const ChannelParams& params);

  const ChannelParams& params() const { return params_; }

  // SNR for unit fading gain at distance d.
  double snr(double distance_m) const;
  double throughput_bps(double distance_m, double gain_sq) const;

 private:
  ChannelParams params_;
  double snr_at_1m_;
  double noise_w_;
};

double throughput_bps(double distance_m, double gain_sq, const ChannelParams& params);

}  // namespace uavnet
