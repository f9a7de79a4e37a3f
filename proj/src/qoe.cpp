// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

#include "uavqoe/qoe.hpp"

#include <algorithm>
#include <cmath>

#include "uavqoe/common.hpp"

namespace uavqoe {

void MosProfile::validate() const {
  const std::string where = "mos profile '" + name + "': ";
  require(c1 > 0.0 && c2 > 0.0, where + "c1 and c2 must be positive");
  require(rtt_s > 0.0, where + "rtt must be positive");
  require(page_size_bits > 0.0, where + "page size must be positive");
  require(mss_bits > 0.0, where + "mss must be positive");
  require(xi1 >= 0.0 && xi2 >= 0.0, where + "weights must be non-negative");
  require(std::abs(xi1 + xi2 - 1.0) <= 1e-12, where + "weights must sum to 1");
}

double slow_start_cycles(double rate_bps, const MosProfile& profile) {
  const double by_rate = std::log2(rate_bps * profile.rtt_s / profile.mss_bits + 1.0) - 1.0;
  const double by_size = std::log2(profile.page_size_bits / (2.0 * profile.mss_bits) + 1.0) - 1.0;
  double cycles = std::max(0.0, std::min(by_rate, by_size));
  if (profile.slow_start == SlowStartMode::kFloor) cycles = std::floor(cycles);
  return cycles;
}

double page_delay(double rate_bps, const MosProfile& profile) {
  require(rate_bps > 0.0 && std::isfinite(rate_bps), "page_delay: rate must be positive");
  const double cycles = slow_start_cycles(rate_bps, profile);
  const double rtt = profile.rtt_s;
  const double mss = profile.mss_bits;
  return 3.0 * rtt + profile.page_size_bits / rate_bps + cycles * (mss / rate_bps + rtt) -
         2.0 * mss * (std::exp2(cycles) - 1.0) / rate_bps;
}

double mos(double rate_bps, const MosProfile& profile) {
  const double raw = -profile.c1 * std::log(page_delay(rate_bps, profile)) + profile.c2;
  return std::clamp(raw, kMosMin, kMosMax);
}

double weighted_mos(double delay_component, double rate_component, const MosProfile& profile) {
  return profile.xi1 * delay_component + profile.xi2 * rate_component;
}

}  // namespace uavqoe
