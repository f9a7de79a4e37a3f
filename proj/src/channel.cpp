// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

#include "uavqoe/channel.hpp"

#include <algorithm>
#include <cmath>

#include "uavqoe/common.hpp"

namespace uavqoe {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kDegToRad = std::numbers::pi / 180.0;

double attenuation(double p_los, const ChannelParams& params) {
  return p_los * params.mu_los + (1.0 - p_los) * params.mu_nlos;
}

}  // namespace

void ChannelParams::validate() const {
  require(std::isfinite(carrier_frequency_hz) && carrier_frequency_hz > 0.0,
          "channel: carrier frequency must be positive");
  require(std::isfinite(light_speed_mps) && light_speed_mps > 0.0,
          "channel: light speed must be positive");
  require(path_loss_exponent >= 2.0, "channel: path loss exponent must be >= 2");
  require(b1 > 0.0 && b2 > 0.0, "channel: b1 and b2 must be positive");
  require(zeta_deg >= 0.0, "channel: zeta must be >= 0");
  require(mu_los >= 1.0 && mu_nlos > mu_los,
          "channel: need mu_nlos > mu_los >= 1 (linear)");
  require(noise_psd_w_per_hz > 0.0, "channel: noise PSD must be positive");
}

LinkGeometry link_geometry(const Position3& uav, const Position3& user) {
  require(std::isfinite(uav.x) && std::isfinite(uav.y) && std::isfinite(uav.h) &&
              std::isfinite(user.x) && std::isfinite(user.y),
          "link_geometry: non-finite coordinate");
  require(uav.h > 0.0, "link_geometry: UAV altitude must be positive");
  const double dx = uav.x - user.x;
  const double dy = uav.y - user.y;
  const double dh = uav.h - user.h;
  LinkGeometry geom;
  geom.distance = std::sqrt(dh * dh + dx * dx + dy * dy);
  geom.elevation = std::asin(std::min(1.0, dh / geom.distance));
  return geom;
}

double los_probability(double elevation, const ChannelParams& params) {
  const double base = kRadToDeg * elevation - params.zeta_deg;
  if (base <= 0.0) return 0.0;
  return std::clamp(params.b1 * std::pow(base, params.b2), 0.0, 1.0);
}

double channel_gain_with_los(double distance, double p_los, const ChannelParams& params) {
  return 1.0 / (params.k0() * std::pow(distance, params.path_loss_exponent) *
                attenuation(p_los, params));
}

double channel_gain(const LinkGeometry& geom, const ChannelParams& params) {
  return channel_gain_with_los(geom.distance, los_probability(geom.elevation, params), params);
}

double noise_power(double bandwidth_hz, const ChannelParams& params) {
  return bandwidth_hz * params.noise_psd_w_per_hz;
}

double snr(double power_w, double gain, double bandwidth_hz, const ChannelParams& params) {
  return power_w * gain / noise_power(bandwidth_hz, params);
}

double rate(double power_w, double gain, double bandwidth_hz, const ChannelParams& params) {
  return bandwidth_hz * std::log2(1.0 + snr(power_w, gain, bandwidth_hz, params));
}

double min_transmit_power(double distance, double snr_target, double noise_w,
                          const ChannelParams& params) {
  return snr_target * noise_w * params.k0() *
         std::pow(distance, params.path_loss_exponent) * params.mu_nlos;
}

AltitudeBounds altitude_bounds(double distance, double p_max, double snr_target,
                               double noise_w, const ChannelParams& params) {
  AltitudeBounds out;
  const double budget = p_max / (snr_target * params.k0() * noise_w);
  out.upper = std::pow(budget / params.mu_los, 1.0 / params.path_loss_exponent);

  // Required LoS probability, from mixed attenuation <= S.
  const double s = budget / std::pow(distance, params.path_loss_exponent);
  const double required_los =
      s / (params.mu_los - params.mu_nlos) - params.mu_nlos / (params.mu_los - params.mu_nlos);
  if (required_los <= 0.0) {
    out.status = AltitudeBoundStatus::kNoLosRequirement;
    out.lower = distance * std::sin(kDegToRad * params.zeta_deg);
    return out;
  }
  const double m = std::log(required_los / params.b1) / params.b2;
  const double elevation_deg = params.zeta_deg + std::exp(m);
  if (required_los > 1.0 || elevation_deg > 90.0) {
    out.status = AltitudeBoundStatus::kLosUnsatisfiable;
    out.lower = distance;
    return out;
  }
  out.lower = distance * std::sin(kDegToRad * elevation_deg);
  return out;
}

}  // namespace uavqoe
