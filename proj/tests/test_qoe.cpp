// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracle_values.hpp"
#include "test_util.hpp"
#include "uavqoe/channel.hpp"
#include "uavqoe/common.hpp"
#include "uavqoe/qoe.hpp"

using namespace uavqoe;
using uavqoe::testing::rel_close;

namespace {

// Rate at which the page delay equals `target`, by bisection on a log scale.
double rate_for_delay(double target, const MosProfile& p) {
  double lo = 1.0;
  double hi = 1e12;
  for (int i = 0; i < 400; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (page_delay(mid, p) > target) lo = mid; else hi = mid;
  }
  return std::sqrt(lo * hi);
}

}  // namespace

TEST_SUITE("qoe") {

TEST_CASE("page delay without slow start") {
  const MosProfile p;
  const double r = p.mss_bits / p.rtt_s;
  CHECK(slow_start_cycles(r, p) == 0.0);
  CHECK(rel_close(page_delay(r, p), 3 * p.rtt_s + p.page_size_bits / r, 1e-14));
}

TEST_CASE("page delay at very high rate") {
  const MosProfile p;
  const double l2 = std::log2(p.page_size_bits / (2 * p.mss_bits) + 1) - 1;
  CHECK(rel_close(page_delay(1e15, p), (3 + l2) * p.rtt_s, 1e-6));
}

TEST_CASE("page delay and MOS match the reference values") {
  const MosProfile p;
  CHECK(rel_close(page_delay(1e6, p), oracle::kDelayAt1Mbps));
  CHECK(rel_close(mos(5e5, p), oracle::kMosAt500kbps));
  CHECK(rel_close(mos(1e6, p), oracle::kMosAt1Mbps));
}

TEST_CASE("MOS at delay 1 s and e s") {
  const MosProfile p;
  CHECK(mos(rate_for_delay(1.0, p), p) == kMosMax);
  const double r = rate_for_delay(std::numbers::e, p);
  CHECK(rel_close(-p.c1 * std::log(page_delay(r, p)) + p.c2, 3.5546, 1e-9));
  CHECK(rel_close(mos(r, p), 3.5546, 1e-9));
}

TEST_CASE("page delay is continuous where the cycle limits cross") {
  const MosProfile p;
  const double cross = p.page_size_bits / (2 * p.rtt_s);
  const double at = page_delay(cross, p);
  for (int i = -1000; i <= 1000; ++i) {
    const double r = cross * (1 + i * 1e-9);
    CHECK(std::abs(page_delay(r, p) - at) <= 1e-6);
  }
}

TEST_CASE("MOS is non-decreasing in rate and clamped") {
  const MosProfile p;
  double prev = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double r = std::pow(10.0, 2.0 + i * 6.0 / 20000);
    const double m = mos(r, p);
    CHECK(m >= prev);
    CHECK(m >= kMosMin);
    CHECK(m <= kMosMax);
    prev = m;
  }
}

TEST_CASE("floor slow start is clamped but steps down at cycle thresholds") {
  MosProfile p;
  p.slow_start = SlowStartMode::kFloor;
  double prev = 0.0;
  int drops = 0;
  for (int i = 0; i <= 20000; ++i) {
    const double r = std::pow(10.0, 2.0 + i * 6.0 / 20000);
    const double m = mos(r, p);
    CHECK(m >= kMosMin);
    CHECK(m <= kMosMax);
    if (m < prev) ++drops;
    prev = m;
  }
  CHECK(drops > 0);
}

TEST_CASE("MOS falls as the user moves away horizontally") {
  const ChannelParams ch;
  const MosProfile p;
  const double h = 100.0;
  // Ten users share 0.1 W and 1 MHz; keep the rate under the clamp.
  double prev = 5.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = 50.0 + 5.0 * i;
    const double g = channel_gain(link_geometry({0, 0, h}, {x, 0, 0}), ch);
    const double m = mos(rate(0.01, g, 1e5, ch), p);
    if (prev < kMosMax && m > kMosMin) CHECK(m < prev);
    prev = m;
  }
}

TEST_CASE("invalid rates and profiles are rejected") {
  const MosProfile p;
  CHECK_THROWS_AS(page_delay(0.0, p), ValidationError);
  CHECK_THROWS_AS(mos(-1.0, p), ValidationError);
  MosProfile q;
  q.xi1 = 0.5;
  CHECK_THROWS_AS(q.validate(), ValidationError);
  q = {};
  q.rtt_s = 0.0;
  CHECK_THROWS_AS(q.validate(), ValidationError);
}

TEST_CASE("weighted MOS") {
  MosProfile p;
  CHECK(weighted_mos(2.0, 3.0, p) == 3.0);
  p.xi1 = 0.25;
  p.xi2 = 0.75;
  CHECK(weighted_mos(2.0, 4.0, p) == 3.5);
}

}  // TEST_SUITE
