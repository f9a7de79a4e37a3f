// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

// Web-browsing quality of experience: page delay as a function of the link
// rate, and the logarithmic mean opinion score built on top of it.

#pragma once

#include <string>

namespace uavqoe {

inline constexpr double kMosMin = 1.0;
inline constexpr double kMosMax = 4.5;

enum class SlowStartMode {
  kContinuous,  // real-valued cycle count
  kFloor,       // integer number of completed cycles; MOS is then not monotone in rate
};

/// Per-user web-browsing constants. Sizes are in bits, times in seconds.
struct MosProfile {
  std::string name = "default";
  double c1 = 1.120;
  double c2 = 4.6746;
  double rtt_s = 0.1;
  double page_size_bits = 1e6;
  double mss_bits = 11680.0;
  /// Weights of the delay and rate components; the delay component is not
  /// modelled for web browsing, so xi1 defaults to zero.
  double xi1 = 0.0;
  double xi2 = 1.0;
  SlowStartMode slow_start = SlowStartMode::kContinuous;

  void validate() const;
};

/// Number of TCP slow-start cycles with idle periods, clamped at zero.
double slow_start_cycles(double rate_bps, const MosProfile& profile);

/// Page download time in seconds for a link of `rate_bps`.
double page_delay(double rate_bps, const MosProfile& profile);

/// Opinion score in [1, 4.5] for a link of `rate_bps`.
double mos(double rate_bps, const MosProfile& profile);

/// xi1 * delay_component + xi2 * rate_component.
double weighted_mos(double delay_component, double rate_component, const MosProfile& profile);

}  // namespace uavqoe
