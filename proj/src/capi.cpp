// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

#include "uavqoe/uavqoe.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <limits>
#include <new>
#include <string>

#include "uavqoe/experiment.hpp"
#include "uavqoe/scenario.hpp"

struct uavqoe_scenario {
  uavqoe::Scenario value;
};

struct uavqoe_experiment {
  uavqoe::ExperimentSpec spec;
};

struct uavqoe_report {
  uavqoe::RunReport value;
};

namespace {

thread_local std::string last_error;

uavqoe_status fail(uavqoe_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
uavqoe_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return UAVQOE_OK;
  } catch (const uavqoe::ValidationError& e) {
    return fail(UAVQOE_VALIDATION_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(UAVQOE_RUNTIME_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(UAVQOE_RUNTIME_ERROR, e.what());
  } catch (...) {
    return fail(UAVQOE_RUNTIME_ERROR, "unknown error");
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) throw uavqoe::ValidationError(std::string(what) + " must not be NULL");
}

const uavqoe::ReportRow* row_at(const uavqoe_report* report, size_t row) {
  if (report == nullptr || row >= report->value.rows.size()) return nullptr;
  return &report->value.rows[row];
}

}  // namespace

extern "C" {

const char* uavqoe_version(void) { return "0.1.0"; }

const char* uavqoe_last_error(void) { return last_error.c_str(); }

uavqoe_status uavqoe_scenario_load(const char* path, uavqoe_scenario** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new uavqoe_scenario{uavqoe::load_scenario(path)};
  });
}

uavqoe_status uavqoe_scenario_parse(const char* json, uavqoe_scenario** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new uavqoe_scenario{uavqoe::parse_scenario(json)};
  });
}

uavqoe_status uavqoe_scenario_generate(int users, int uavs, double x_max_m, double y_max_m,
                                       uint64_t seed, uavqoe_scenario** out) {
  return guarded([&] {
    need(out, "out");
    uavqoe::GeneratorSpec spec;
    spec.users = users;
    spec.uavs = uavs;
    spec.arena.x_max_m = x_max_m;
    spec.arena.y_max_m = y_max_m;
    spec.seed = seed;
    *out = new uavqoe_scenario{uavqoe::generate_scenario(spec)};
  });
}

uavqoe_status uavqoe_scenario_save(const uavqoe_scenario* scenario, const char* path) {
  return guarded([&] {
    need(scenario, "scenario");
    need(path, "path");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw uavqoe::RuntimeError(std::string("cannot open ") + path + " for writing");
    out << uavqoe::write_scenario(scenario->value);
    if (!out) throw uavqoe::RuntimeError(std::string("failed writing ") + path);
  });
}

uavqoe_status uavqoe_scenario_to_json(const uavqoe_scenario* scenario, char* buf, size_t size,
                                      size_t* needed) {
  return guarded([&] {
    need(scenario, "scenario");
    const std::string text = uavqoe::write_scenario(scenario->value);
    if (needed != nullptr) *needed = text.size() + 1;
    if (buf == nullptr) return;
    if (size < text.size() + 1) throw uavqoe::ValidationError("buffer too small for scenario JSON");
    std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

uavqoe_status uavqoe_scenario_user_count(const uavqoe_scenario* scenario, size_t* out) {
  return guarded([&] {
    need(scenario, "scenario");
    need(out, "out");
    *out = scenario->value.world.users.size();
  });
}

uavqoe_status uavqoe_scenario_uav_count(const uavqoe_scenario* scenario, int* out) {
  return guarded([&] {
    need(scenario, "scenario");
    need(out, "out");
    *out = scenario->value.uav_count;
  });
}

void uavqoe_scenario_free(uavqoe_scenario* scenario) { delete scenario; }

uavqoe_status uavqoe_experiment_create(uavqoe_mode mode, const char* output_dir,
                                       uavqoe_experiment** out) {
  return guarded([&] {
    need(output_dir, "output_dir");
    need(out, "out");
    auto* exp = new uavqoe_experiment;
    switch (mode) {
      case UAVQOE_MODE_CLUSTER: exp->spec.mode = uavqoe::RunMode::kCluster; break;
      case UAVQOE_MODE_DEPLOY: exp->spec.mode = uavqoe::RunMode::kDeploy; break;
      case UAVQOE_MODE_MOVE: exp->spec.mode = uavqoe::RunMode::kMove; break;
      default:
        delete exp;
        throw uavqoe::ValidationError("unknown run mode");
    }
    exp->spec.output_dir = output_dir;
    *out = exp;
  });
}

uavqoe_status uavqoe_experiment_set_id(uavqoe_experiment* exp, const char* id) {
  return guarded([&] {
    need(exp, "experiment");
    need(id, "id");
    exp->spec.id = id;
  });
}

uavqoe_status uavqoe_experiment_set_algorithms(uavqoe_experiment* exp, const char* list) {
  return guarded([&] {
    need(exp, "experiment");
    need(list, "list");
    exp->spec.algorithms = uavqoe::parse_algorithms(list);
  });
}

uavqoe_status uavqoe_experiment_set_sweep(uavqoe_experiment* exp, const char* axis,
                                          const double* values, size_t count) {
  return guarded([&] {
    need(exp, "experiment");
    need(axis, "axis");
    if (count > 0) need(values, "values");
    exp->spec.axis = uavqoe::parse_axis(axis);
    exp->spec.sweep_values.assign(values, values + count);
  });
}

uavqoe_status uavqoe_experiment_set_seeds(uavqoe_experiment* exp, const uint64_t* seeds,
                                          size_t count) {
  return guarded([&] {
    need(exp, "experiment");
    if (count > 0) need(seeds, "seeds");
    exp->spec.seeds.assign(seeds, seeds + count);
  });
}

uavqoe_status uavqoe_experiment_set_jobs(uavqoe_experiment* exp, int jobs) {
  return guarded([&] {
    need(exp, "experiment");
    uavqoe::require(jobs >= 1, "jobs must be >= 1");
    exp->spec.jobs = jobs;
  });
}

uavqoe_status uavqoe_experiment_set_timing(uavqoe_experiment* exp, int enabled) {
  return guarded([&] {
    need(exp, "experiment");
    exp->spec.timing = enabled != 0;
  });
}

uavqoe_status uavqoe_experiment_set_episodes(uavqoe_experiment* exp, int episodes) {
  return guarded([&] {
    need(exp, "experiment");
    uavqoe::require(episodes >= 1, "episodes must be >= 1");
    exp->spec.episodes = episodes;
  });
}

uavqoe_status uavqoe_experiment_set_epsilon(uavqoe_experiment* exp, double epsilon) {
  return guarded([&] {
    need(exp, "experiment");
    uavqoe::require(epsilon >= 0.0 && epsilon <= 1.0, "epsilon must be in [0, 1]");
    exp->spec.epsilon = epsilon;
  });
}

uavqoe_status uavqoe_experiment_set_qtable_export(uavqoe_experiment* exp, const char* dir) {
  return guarded([&] {
    need(exp, "experiment");
    exp->spec.qtable_out_dir = dir == nullptr ? "" : dir;
  });
}

uavqoe_status uavqoe_experiment_set_qtable_import(uavqoe_experiment* exp, const char* dir) {
  return guarded([&] {
    need(exp, "experiment");
    exp->spec.qtable_in_dir = dir == nullptr ? "" : dir;
  });
}

uavqoe_status uavqoe_experiment_run(const uavqoe_experiment* exp, const uavqoe_scenario* scenario,
                                    uavqoe_report** out) {
  return guarded([&] {
    need(exp, "experiment");
    need(scenario, "scenario");
    uavqoe::RunReport report = uavqoe::run_experiment(scenario->value, exp->spec);
    if (out != nullptr) *out = new uavqoe_report{std::move(report)};
  });
}

void uavqoe_experiment_free(uavqoe_experiment* exp) { delete exp; }

size_t uavqoe_report_row_count(const uavqoe_report* report) {
  return report == nullptr ? 0 : report->value.rows.size();
}

size_t uavqoe_report_warning_count(const uavqoe_report* report) {
  return report == nullptr ? 0 : report->value.warnings;
}

const char* uavqoe_report_algorithm(const uavqoe_report* report, size_t row) {
  const auto* r = row_at(report, row);
  return r == nullptr ? nullptr : r->algorithm.c_str();
}

uint64_t uavqoe_report_seed(const uavqoe_report* report, size_t row) {
  const auto* r = row_at(report, row);
  return r == nullptr ? 0 : r->seed;
}

double uavqoe_report_sweep_value(const uavqoe_report* report, size_t row) {
  const auto* r = row_at(report, row);
  return r == nullptr ? std::numeric_limits<double>::quiet_NaN() : r->sweep_value;
}

double uavqoe_report_total_mos(const uavqoe_report* report, size_t row) {
  const auto* r = row_at(report, row);
  return r == nullptr ? std::numeric_limits<double>::quiet_NaN() : r->total_mos;
}

double uavqoe_report_sum_rate(const uavqoe_report* report, size_t row) {
  const auto* r = row_at(report, row);
  return r == nullptr ? std::numeric_limits<double>::quiet_NaN() : r->sum_rate;
}

int uavqoe_report_slots_at_least_static(const uavqoe_report* report, size_t row) {
  const auto* r = row_at(report, row);
  return r == nullptr ? -1 : r->slots_at_least_static;
}

void uavqoe_report_free(uavqoe_report* report) { delete report; }

}  // extern "C"
