// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through its C header only.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "uavqoe/uavqoe.h"

namespace fs = std::filesystem;

namespace {

std::string temp_dir(const char* name) {
  const fs::path p = fs::temp_directory_path() / (std::string("uavqoe_capi_") + name);
  fs::remove_all(p);
  return p.string();
}

uavqoe_scenario* small_scenario() {
  uavqoe_scenario* s = nullptr;
  const char* json = R"({
    "arena": {"x_max_m": 200, "y_max_m": 200, "step_horizontal_m": 40, "step_vertical_m": 50,
              "horizon_s": 5},
    "uav": {"count": 2},
    "qlearning": {"episodes": 30, "max_steps_per_episode": 20},
    "user_generator": {"count": 8, "seed": 3}
  })";
  REQUIRE(uavqoe_scenario_parse(json, &s) == UAVQOE_OK);
  return s;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version and error reporting") {
  CHECK(std::strlen(uavqoe_version()) > 0);
  uavqoe_scenario* s = nullptr;
  CHECK(uavqoe_scenario_parse("{ not json", &s) == UAVQOE_VALIDATION_ERROR);
  CHECK(s == nullptr);
  CHECK(std::string(uavqoe_last_error()).find("line") != std::string::npos);
  CHECK(uavqoe_scenario_load("/nonexistent/x.json", &s) == UAVQOE_VALIDATION_ERROR);
  CHECK(uavqoe_scenario_parse(nullptr, &s) == UAVQOE_VALIDATION_ERROR);
  uavqoe_scenario_free(nullptr);
  uavqoe_experiment_free(nullptr);
  uavqoe_report_free(nullptr);
}

TEST_CASE("scenario accessors and JSON export") {
  uavqoe_scenario* s = nullptr;
  REQUIRE(uavqoe_scenario_generate(25, 3, 500, 400, 9, &s) == UAVQOE_OK);
  size_t users = 0;
  int uavs = 0;
  CHECK(uavqoe_scenario_user_count(s, &users) == UAVQOE_OK);
  CHECK(uavqoe_scenario_uav_count(s, &uavs) == UAVQOE_OK);
  CHECK(users == 25);
  CHECK(uavs == 3);

  size_t needed = 0;
  CHECK(uavqoe_scenario_to_json(s, nullptr, 0, &needed) == UAVQOE_OK);
  std::vector<char> buf(needed);
  CHECK(uavqoe_scenario_to_json(s, buf.data(), buf.size(), &needed) == UAVQOE_OK);
  char tiny[4];
  CHECK(uavqoe_scenario_to_json(s, tiny, sizeof tiny, nullptr) == UAVQOE_VALIDATION_ERROR);

  uavqoe_scenario* back = nullptr;
  REQUIRE(uavqoe_scenario_parse(buf.data(), &back) == UAVQOE_OK);
  size_t again = 0;
  uavqoe_scenario_to_json(back, nullptr, 0, &again);
  std::vector<char> buf2(again);
  uavqoe_scenario_to_json(back, buf2.data(), buf2.size(), nullptr);
  CHECK(std::string(buf.data()) == std::string(buf2.data()));

  const std::string path = temp_dir("save.json");
  CHECK(uavqoe_scenario_save(s, path.c_str()) == UAVQOE_OK);
  uavqoe_scenario* loaded = nullptr;
  CHECK(uavqoe_scenario_load(path.c_str(), &loaded) == UAVQOE_OK);
  CHECK(uavqoe_scenario_save(s, "/nonexistent/dir/x.json") == UAVQOE_RUNTIME_ERROR);
  uavqoe_scenario_free(loaded);
  uavqoe_scenario_free(back);
  uavqoe_scenario_free(s);
}

TEST_CASE("experiment setters validate their input") {
  uavqoe_experiment* e = nullptr;
  REQUIRE(uavqoe_experiment_create(UAVQOE_MODE_DEPLOY, temp_dir("setters").c_str(), &e) == UAVQOE_OK);
  CHECK(uavqoe_experiment_set_algorithms(e, "qlearning,bogus") == UAVQOE_VALIDATION_ERROR);
  CHECK(uavqoe_experiment_set_jobs(e, 0) == UAVQOE_VALIDATION_ERROR);
  CHECK(uavqoe_experiment_set_episodes(e, 0) == UAVQOE_VALIDATION_ERROR);
  CHECK(uavqoe_experiment_set_epsilon(e, 1.5) == UAVQOE_VALIDATION_ERROR);
  CHECK(uavqoe_experiment_set_sweep(e, "bogus", nullptr, 0) == UAVQOE_VALIDATION_ERROR);
  CHECK(uavqoe_experiment_create(static_cast<uavqoe_mode>(9), "x", &e) == UAVQOE_VALIDATION_ERROR);

  uavqoe_scenario* s = small_scenario();
  CHECK(uavqoe_experiment_run(e, s, nullptr) == UAVQOE_VALIDATION_ERROR);
  CHECK(std::string(uavqoe_last_error()).find("seed") != std::string::npos);
  uavqoe_scenario_free(s);
  uavqoe_experiment_free(e);
}

TEST_CASE("deployment sweep through the C interface") {
  uavqoe_scenario* s = small_scenario();
  uavqoe_experiment* e = nullptr;
  REQUIRE(uavqoe_experiment_create(UAVQOE_MODE_DEPLOY, temp_dir("sweep").c_str(), &e) == UAVQOE_OK);
  const double power[] = {5, 20};
  const uint64_t seeds[] = {1, 2};
  CHECK(uavqoe_experiment_set_algorithms(e, "kmeans,exhaustive") == UAVQOE_OK);
  CHECK(uavqoe_experiment_set_sweep(e, "power_dbm", power, 2) == UAVQOE_OK);
  CHECK(uavqoe_experiment_set_seeds(e, seeds, 2) == UAVQOE_OK);
  CHECK(uavqoe_experiment_set_jobs(e, 2) == UAVQOE_OK);
  uavqoe_report* r = nullptr;
  REQUIRE(uavqoe_experiment_run(e, s, &r) == UAVQOE_OK);
  CHECK(uavqoe_report_row_count(r) == 8);
  for (size_t i = 0; i < uavqoe_report_row_count(r); ++i) {
    CHECK(uavqoe_report_total_mos(r, i) >= 8.0);
    CHECK(uavqoe_report_total_mos(r, i) <= 8 * 4.5);
    CHECK(uavqoe_report_sum_rate(r, i) > 0.0);
    CHECK(uavqoe_report_slots_at_least_static(r, i) == -1);
  }
  CHECK(std::string(uavqoe_report_algorithm(r, 0)) == "kmeans");
  CHECK(uavqoe_report_seed(r, 1) == 1);
  CHECK(uavqoe_report_sweep_value(r, 7) == 20.0);
  CHECK(uavqoe_report_algorithm(r, 8) == nullptr);
  CHECK(std::isnan(uavqoe_report_total_mos(r, 8)));
  uavqoe_report_free(r);
  uavqoe_experiment_free(e);
  uavqoe_scenario_free(s);
}

TEST_CASE("unwritable output directory is a runtime error") {
  uavqoe_scenario* s = small_scenario();
  uavqoe_experiment* e = nullptr;
  REQUIRE(uavqoe_experiment_create(UAVQOE_MODE_CLUSTER, "/proc/uavqoe/out", &e) == UAVQOE_OK);
  const uint64_t seed = 1;
  uavqoe_experiment_set_seeds(e, &seed, 1);
  CHECK(uavqoe_experiment_run(e, s, nullptr) == UAVQOE_RUNTIME_ERROR);
  uavqoe_experiment_free(e);
  uavqoe_scenario_free(s);
}

}  // TEST_SUITE
