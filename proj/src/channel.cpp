#include "uavnet/channel.hpp"

#include <cmath>
#include <random>

#include "uavnet/errors.hpp"

namespace uavnet {

void validate(const ChannelParams& p) {
  if (!(p.bandwidth_hz > 0.0)) throw InvalidArgument("bandwidth must be positive");
  if (!(p.beta > 0.0)) throw InvalidArgument("path-loss exponent beta must be positive");
  if (!(p.rician_k >= 0.0)) throw InvalidArgument("Rician K factor must be >= 0");
}

double path_loss_db(double d, const ChannelParams& p) {
  if (!(d > 0.0)) throw InvalidArgument("path loss needs a positive distance");
  return p.alpha_db + 10.0 * p.beta * std::log10(d);
}

double received_power_dbm(double d, const ChannelParams& p) {
  return p.tx_power_dbm + p.tx_gain_db + p.rx_gain_db - path_loss_db(d, p);
}

double sample_gain_sq(bool is_los, double rician_k, Rng& rng) {
  if (!(rician_k >= 0.0)) throw InvalidArgument("Rician factor must be >= 0");
  if (!is_los || rician_k == 0.0) {
    return std::exponential_distribution<double>(1.0)(rng);
  }
  // Specular component of power K/(K+1) plus diffuse power 1/(K+1).
  std::normal_distribution<double> normal(0.0, 1.0);
  const double los = std::sqrt(rician_k / (rician_k + 1.0));
  const double sigma = std::sqrt(0.5 / (rician_k + 1.0));
  const double re = los + sigma * normal(rng);
  const double im = sigma * normal(rng);
  return re * re + im * im;
}

LinkBudget::LinkBudget(const ChannelParams& params) : params_(params) {
  validate(params_);
  const double rx_at_1m_w = dbm_to_watts(received_power_dbm(1.0, params_));
  noise_w_ = dbm_to_watts(params_.noise_power_dbm);
  snr_at_1m_ = rx_at_1m_w / noise_w_;
}

double LinkBudget::snr(double d) const {
  if (!(d > 0.0)) throw InvalidArgument("throughput needs a positive distance");
  return params_.beta == 2.0 ? snr_at_1m_ / (d * d) : snr_at_1m_ * std::pow(d, -params_.beta);
}

double LinkBudget::throughput_bps(double d, double gain_sq) const {
  if (!(gain_sq >= 0.0)) throw InvalidArgument("fading gain must be >= 0");
  return params_.bandwidth_hz * std::log2(1.0 + snr(d) * gain_sq);
}

double throughput_bps(double d, double gain_sq, const ChannelParams& params) {
  return LinkBudget(params).throughput_bps(d, gain_sq);
}

}  // namespace uavnet
