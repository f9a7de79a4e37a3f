// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

// Air-to-ground link model between an aerial base station and a ground user.
//
// All quantities are SI and linear: watts, hertz, metres, radians. Decibel
// values are converted exactly once, when a scenario is loaded.

#pragma once

#include <numbers>

namespace uavqoe {

/// Radio and environment constants of the air-to-ground channel.
struct ChannelParams {
  double carrier_frequency_hz = 2e9;
  double light_speed_mps = 299792458.0;
  double path_loss_exponent = 2.0;
  double b1 = 0.36;
  double b2 = 0.21;
  /// Elevation offset of the LoS curve, in degrees.
  double zeta_deg = 0.0;
  /// Excess attenuation factors, linear (3 dB and 23 dB by default).
  double mu_los = 1.9952623149688795;
  double mu_nlos = 199.52623149688796;
  /// Noise power spectral density, W/Hz (-170 dBm/Hz).
  double noise_psd_w_per_hz = 1e-20;

  /// Free-space constant (4 pi f_c / c)^2.
  [[nodiscard]] double k0() const {
    const double v = 4.0 * std::numbers::pi * carrier_frequency_hz / light_speed_mps;
    return v * v;
  }

  /// Throws ValidationError when an invariant is broken.
  void validate() const;
};

struct Position3 {
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;
};

struct LinkGeometry {
  double distance = 0.0;
  double elevation = 0.0;  // radians
};

LinkGeometry link_geometry(const Position3& uav, const Position3& user);

/// Clamped LoS probability for an elevation angle in radians.
double los_probability(double elevation, const ChannelParams& params);

/// Linear channel power gain including the LoS/NLoS mixture.
double channel_gain(const LinkGeometry& geom, const ChannelParams& params);

/// Channel gain for a forced LoS probability; used by bound checks.
double channel_gain_with_los(double distance, double p_los, const ChannelParams& params);

double noise_power(double bandwidth_hz, const ChannelParams& params);

double snr(double power_w, double gain, double bandwidth_hz, const ChannelParams& params);

/// Shannon rate in bit/s for the given per-user power and bandwidth.
double rate(double power_w, double gain, double bandwidth_hz, const ChannelParams& params);

/// Worst-case (pure NLoS) transmit power that still meets the SNR target.
double min_transmit_power(double distance, double snr_target, double noise_w,
                          const ChannelParams& params);

enum class AltitudeBoundStatus {
  kOk,
  /// Even a pure NLoS link meets the target at this distance, so no elevation
  /// constraint applies; the lower bound collapses to the zeta elevation.
  kNoLosRequirement,
  /// The needed LoS probability exceeds what any elevation can provide.
  kLosUnsatisfiable,
};

struct AltitudeBounds {
  double lower = 0.0;
  double upper = 0.0;
  AltitudeBoundStatus status = AltitudeBoundStatus::kOk;
  [[nodiscard]] bool empty() const { return status == AltitudeBoundStatus::kLosUnsatisfiable || lower > upper; }
};

/// Altitude interval in which a UAV can serve a user at `distance` with
/// transmit power `p_max` and SNR target `snr_target`.
AltitudeBounds altitude_bounds(double distance, double p_max, double snr_target,
                               double noise_w, const ChannelParams& params);

}  // namespace uavqoe
