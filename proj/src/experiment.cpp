// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

#include "uavqoe/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "uavqoe/csv.hpp"

namespace uavqoe {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Sub-stream identifiers so each component of a run gets its own generator.
constexpr std::uint64_t kClusterStream = 1;
constexpr std::uint64_t kDeployStream = 2;
constexpr std::uint64_t kKMeansStream = 3;
constexpr std::uint64_t kRandomStream = 4;
constexpr std::uint64_t kMoveStream = 5;

constexpr const char* kReportHeader =
    "experiment,seed,sweep_axis,sweep_value,algorithm,total_mos,cluster_mos,sum_rate_bps,"
    "evaluations,position_evaluations,slots_at_least_static\n";
constexpr const char* kPerUserHeader =
    "experiment,seed,sweep_value,algorithm,user,cluster,x,y,rate_bps,snr,mos,meets_target\n";
constexpr const char* kPositionsHeader =
    "experiment,seed,sweep_value,algorithm,uav_id,i,j,k,x,y,h,cluster,cluster_mos\n";
constexpr const char* kTrajectoryHeader =
    "experiment,seed,sweep_value,algorithm,time,uav_id,x,y,h,cluster,cluster_mos,total_mos\n";
constexpr const char* kRewardsHeader = "experiment,seed,sweep_value,phase,uav_id,episode,reward\n";
constexpr const char* kWarningsHeader =
    "experiment,seed,sweep_value,algorithm,kind,user,required_power_w,allocated_power_w,message\n";
constexpr const char* kTimingHeader = "experiment,seed,sweep_value,algorithm,wall_clock_s\n";
constexpr const char* kClustersHeader = "experiment,seed,sweep_value,user,x,y,cluster\n";
constexpr const char* kPartitionHeader =
    "experiment,seed,sweep_value,cluster,size,centroid_x,centroid_y,sse\n";

// Everything one (sweep value, seed) cell emits, already formatted.
struct CellOutput {
  std::vector<ReportRow> rows;
  std::string report, per_user, positions, trajectory, rewards, warnings, timing, clusters,
      partition;
  std::size_t warning_count = 0;
};

struct Placement {
  std::string algorithm;
  std::vector<GridCell> positions;
  Partition partition;
  std::uint64_t evaluations = 0;
  std::uint64_t position_evaluations = 0;
  double wall_clock_s = 0.0;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int integral_value(double value, const char* what) {
  require(value >= 1.0 && value == std::floor(value) && value <= 1e9,
          std::string("sweep: ") + what + " values must be positive integers");
  return static_cast<int>(value);
}

std::string join_values(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ';';
    out += format_double(values[i]);
  }
  return out;
}

class Cell {
 public:
  Cell(const Scenario& base, const ExperimentSpec& spec, double sweep_value, std::size_t point,
       std::uint64_t seed)
      : spec_(spec), sweep_value_(sweep_value), point_(point), seed_(seed) {
    scenario_ = base;
    if (spec.episodes > 0) scenario_.qlearning.episodes = spec.episodes;
    if (spec.epsilon >= 0.0) scenario_.qlearning.epsilon = spec.epsilon;
    scenario_ = apply_sweep(scenario_, spec.axis, sweep_value);
  }

  CellOutput run() {
    partition_world();
    if (spec_.mode == RunMode::kCluster) return std::move(out_);
    if (spec_.mode == RunMode::kDeploy) {
      for (const Algorithm a : spec_.algorithms) record_deployment(deploy(a));
    } else {
      const Placement q = deploy(Algorithm::kQLearning);
      record_deployment(q);
      run_movement(q.positions);
    }
    return std::move(out_);
  }

 private:
  CsvRow prefix() const {
    CsvRow row;
    row.field(spec_.id).field(seed_).field(sweep_value_);
    return row;
  }

  void partition_world() {
    world_ = scenario_.world;
    GaConfig ga = scenario_.clustering;
    ga.seed = mix_seed(seed_, kClusterStream);
    const auto points = world_.user_positions();
    const ClusterResult result = gak_means(points, scenario_.uav_count, ga);
    world_.apply_partition(result.partition);
    for (std::size_t u = 0; u < world_.users.size(); ++u) {
      out_.clusters += prefix()
                           .field(world_.users[u].id)
                           .field(points[u].x)
                           .field(points[u].y)
                           .field(world_.users[u].cluster)
                           .line();
    }
    for (int c = 0; c < result.partition.cluster_count(); ++c) {
      const auto& centroid = result.partition.centroids[static_cast<std::size_t>(c)];
      out_.partition += prefix()
                            .field(c)
                            .field(result.partition.members(c).size())
                            .field(centroid.x)
                            .field(centroid.y)
                            .field(result.sse)
                            .line();
    }
  }

  QLearnConfig qconfig(std::uint64_t stream) const {
    QLearnConfig q = scenario_.qlearning;
    q.seed = mix_seed(seed_, stream);
    return q;
  }

  std::string qtable_path(const std::string& dir, const char* phase, std::size_t uav) const {
    return (fs::path(dir) / (std::string(phase) + "_seed" + std::to_string(seed_) + "_point" +
                             std::to_string(point_) + "_uav" + std::to_string(uav) + ".csv"))
        .string();
  }

  void export_tables(const std::vector<QTable>& tables, const char* phase) const {
    if (spec_.qtable_out_dir.empty()) return;
    for (std::size_t n = 0; n < tables.size(); ++n) {
      const std::string path = qtable_path(spec_.qtable_out_dir, phase, n);
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) throw RuntimeError("cannot open " + path + " for writing");
      tables[n].write_csv(out);
    }
  }

  void record_rewards(const std::vector<std::vector<double>>& rewards, const char* phase) {
    for (std::size_t n = 0; n < rewards.size(); ++n) {
      for (std::size_t e = 0; e < rewards[n].size(); ++e) {
        out_.rewards += prefix().field(phase).field(n).field(e).field(rewards[n][e]).line();
      }
    }
  }

  Placement deploy(Algorithm algorithm) {
    const auto start = Clock::now();
    Placement p;
    p.algorithm = std::string(algorithm_name(algorithm));
    p.partition = current_partition(world_);
    auto take = [&p](const BaselineResult& r) {
      p.positions = r.positions;
      p.partition = r.partition;
      p.evaluations = r.evaluations;
      p.position_evaluations = r.position_evaluations;
    };
    switch (algorithm) {
      case Algorithm::kQLearning: {
        const DeploymentResult d = train_deployment(world_, qconfig(kDeployStream));
        p.positions = d.positions;
        p.evaluations = d.evaluations;
        p.position_evaluations = d.steps;
        record_rewards(d.episode_rewards, "deploy");
        export_tables(d.tables, "deploy");
        break;
      }
      case Algorithm::kKMeans:
        take(kmeans_deploy(world_, mix_seed(seed_, kKMeansStream)));
        break;
      case Algorithm::kIgk: {
        GaConfig ga = scenario_.clustering;
        ga.seed = mix_seed(seed_, kClusterStream);
        take(igk_deploy(world_, ga));
        break;
      }
      case Algorithm::kExhaustive:
        take(exhaustive_deploy_all(world_, scenario_.exhaustive_cap));
        break;
      case Algorithm::kRandom:
        take(random_deploy(world_, mix_seed(seed_, kRandomStream)));
        break;
    }
    p.wall_clock_s = seconds_since(start);
    return p;
  }

  void check_power(const World& placed, const Snapshot& snap, const std::string& algorithm) {
    for (std::size_t u = 0; u < placed.users.size(); ++u) {
      const UserState& user = placed.users[u];
      const std::size_t c = static_cast<std::size_t>(user.cluster);
      const Allocation alloc = allocate(placed.cluster_members(user.cluster).size(),
                                        placed.bandwidth_hz, placed.p_max_w);
      const Position3 uav = placed.arena.position(placed.uavs[c].cell);
      const double distance =
          link_geometry(uav, {user.position.x, user.position.y, 0.0}).distance;
      const double required = min_transmit_power(
          distance, user.snr_target, noise_power(alloc.bandwidth_hz, placed.channel), placed.channel);
      if (required > alloc.power_w) {
        out_.warnings += prefix()
                             .field(algorithm)
                             .field("power")
                             .field(user.id)
                             .field(required)
                             .field(alloc.power_w)
                             .field(snap.users[u].meets_target ? "target met through LoS"
                                                               : "SNR target missed")
                             .line();
        ++out_.warning_count;
      }
    }
  }

  void record_deployment(const Placement& p) {
    World placed = world_;
    placed.apply_partition(p.partition);
    for (std::size_t n = 0; n < p.positions.size(); ++n) placed.uavs[n].cell = p.positions[n];
    const Snapshot snap = snapshot_mos(placed);

    ReportRow row;
    row.seed = seed_;
    row.sweep_value = sweep_value_;
    row.algorithm = p.algorithm;
    row.total_mos = snap.total_mos;
    row.cluster_mos = snap.cluster_mos;
    row.sum_rate = snap.sum_rate;
    row.evaluations = p.evaluations;
    row.position_evaluations = p.position_evaluations;
    row.wall_clock_s = p.wall_clock_s;
    add_row(row);

    for (const UserLink& link : snap.users) {
      const UserState& user = placed.users[static_cast<std::size_t>(link.user)];
      out_.per_user += prefix()
                           .field(p.algorithm)
                           .field(user.id)
                           .field(link.cluster)
                           .field(user.position.x)
                           .field(user.position.y)
                           .field(link.rate_bps)
                           .field(link.snr)
                           .field(link.mos)
                           .field(link.meets_target ? 1 : 0)
                           .line();
    }
    for (std::size_t n = 0; n < p.positions.size(); ++n) {
      const GridCell& c = p.positions[n];
      const Position3 pos = placed.arena.position(c);
      out_.positions += prefix()
                            .field(p.algorithm)
                            .field(n)
                            .field(c.i)
                            .field(c.j)
                            .field(c.k)
                            .field(pos.x)
                            .field(pos.y)
                            .field(pos.h)
                            .field(n)
                            .field(snap.cluster_mos[n])
                            .line();
    }
    check_power(placed, snap, p.algorithm);
  }

  void add_row(const ReportRow& row) {
    CsvRow csv;
    csv.field(spec_.id)
        .field(row.seed)
        .field(axis_name(spec_.axis))
        .field(row.sweep_value)
        .field(row.algorithm)
        .field(row.total_mos)
        .field(join_values(row.cluster_mos))
        .field(row.sum_rate)
        .field(row.evaluations)
        .field(row.position_evaluations)
        .field(row.slots_at_least_static);
    out_.report += csv.line();
    if (spec_.timing) {
      out_.timing += prefix().field(row.algorithm).field(row.wall_clock_s).line();
    }
    out_.rows.push_back(row);
  }

  MovementPolicy load_policy() const {
    MovementPolicy policy;
    policy.slots = world_.arena.slots();
    for (std::size_t n = 0; n < world_.uavs.size(); ++n) {
      const std::string path = qtable_path(spec_.qtable_in_dir, "move", n);
      std::ifstream in(path, std::ios::binary);
      if (!in) throw ValidationError("cannot open q-table " + path);
      try {
        policy.tables.push_back(QTable::read_csv(in));
      } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
      }
    }
    return policy;
  }

  void record_trace(const std::string& algorithm, const MovementTrace& trace,
                    const MovementTrace* reference, double wall_clock_s) {
    ReportRow row;
    row.seed = seed_;
    row.sweep_value = sweep_value_;
    row.algorithm = algorithm;
    row.total_mos = trace.horizon_mos;
    row.cluster_mos.assign(world_.uavs.size(), 0.0);
    for (std::size_t t = 1; t < trace.total_mos.size(); ++t) {
      for (std::size_t n = 0; n < row.cluster_mos.size(); ++n) row.cluster_mos[n] += trace.cluster_mos[t][n];
      row.sum_rate += trace.sum_rate[t];
    }
    if (reference != nullptr) {
      row.slots_at_least_static = 0;
      for (std::size_t t = 1; t < trace.total_mos.size(); ++t) {
        if (trace.total_mos[t] >= reference->total_mos[t]) ++row.slots_at_least_static;
      }
    }
    row.wall_clock_s = wall_clock_s;
    add_row(row);

    for (std::size_t t = 0; t < trace.positions.size(); ++t) {
      for (std::size_t n = 0; n < trace.positions[t].size(); ++n) {
        const Position3 pos = world_.arena.position(trace.positions[t][n]);
        out_.trajectory += prefix()
                               .field(algorithm)
                               .field(t)
                               .field(n)
                               .field(pos.x)
                               .field(pos.y)
                               .field(pos.h)
                               .field(n)
                               .field(trace.cluster_mos[t][n])
                               .field(trace.total_mos[t])
                               .line();
      }
    }
  }

  void run_movement(const std::vector<GridCell>& start_cells) {
    const std::uint64_t trajectory_seed = mix_seed(scenario_.world.mobility.seed, seed_);

    auto start = Clock::now();
    const MovementTrace still = static_movement_baseline(world_, start_cells, trajectory_seed);
    const double still_s = seconds_since(start);

    start = Clock::now();
    MovementPolicy policy;
    if (spec_.qtable_in_dir.empty()) {
      policy = train_movement(world_, start_cells, trajectory_seed, qconfig(kMoveStream));
      record_rewards(policy.episode_rewards, "move");
    } else {
      policy = load_policy();
    }
    export_tables(policy.tables, "move");
    const MovementTrace learned = test_movement(world_, start_cells, policy, trajectory_seed);
    record_trace("qlearning-move", learned, &still, seconds_since(start));
    record_trace("static", still, &still, still_s);

    if (world_.arena.cell_count() <= scenario_.exhaustive_cap) {
      start = Clock::now();
      const MovementTrace igk =
          igk_movement_baseline(world_, start_cells, trajectory_seed, scenario_.exhaustive_cap);
      record_trace("igk-move", igk, &still, seconds_since(start));
    } else {
      out_.warnings += prefix()
                           .field("igk-move")
                           .field("cap")
                           .field(-1)
                           .field(0.0)
                           .field(0.0)
                           .field("grid exceeds the exhaustive cap; baseline skipped")
                           .line();
      ++out_.warning_count;
    }
  }

  const ExperimentSpec& spec_;
  double sweep_value_;
  std::size_t point_;
  std::uint64_t seed_;
  Scenario scenario_;
  World world_;
  CellOutput out_;
};

void write_file(const fs::path& path, const char* header, const std::vector<CellOutput>& cells,
                std::string CellOutput::*member) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RuntimeError("cannot open " + path.string() + " for writing");
  out << header;
  for (const auto& cell : cells) out << cell.*member;
  if (!out) throw RuntimeError("failed writing " + path.string());
}

}  // namespace

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kQLearning: return "qlearning";
    case Algorithm::kKMeans: return "kmeans";
    case Algorithm::kIgk: return "igk";
    case Algorithm::kExhaustive: return "exhaustive";
    case Algorithm::kRandom: return "random";
  }
  return "unknown";
}

std::vector<Algorithm> parse_algorithms(std::string_view list) {
  static constexpr Algorithm kAll[] = {Algorithm::kQLearning, Algorithm::kKMeans, Algorithm::kIgk,
                                       Algorithm::kExhaustive, Algorithm::kRandom};
  std::vector<Algorithm> out;
  for (const std::string& token : split_csv_line(list)) {
    if (token == "all") {
      for (const Algorithm a : kAll) {
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
      }
      continue;
    }
    bool found = false;
    for (const Algorithm a : kAll) {
      if (token == algorithm_name(a)) {
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
        found = true;
      }
    }
    require(found, "unknown algorithm \"" + token +
                       "\" (expected qlearning, kmeans, igk, exhaustive, random or all)");
  }
  return out;
}

std::string_view axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kNone: return "none";
    case SweepAxis::kPowerDbm: return "power_dbm";
    case SweepAxis::kUsers: return "users";
    case SweepAxis::kClusters: return "clusters";
    case SweepAxis::kEpisodes: return "episodes";
  }
  return "none";
}

SweepAxis parse_axis(std::string_view name) {
  for (const SweepAxis a : {SweepAxis::kNone, SweepAxis::kPowerDbm, SweepAxis::kUsers,
                            SweepAxis::kClusters, SweepAxis::kEpisodes}) {
    if (name == axis_name(a)) return a;
  }
  if (name == "power") return SweepAxis::kPowerDbm;
  throw ValidationError("unknown sweep axis \"" + std::string(name) +
                        "\" (expected power_dbm, users, clusters or episodes)");
}

void ExperimentSpec::validate() const {
  require(!seeds.empty(), "experiment: the seed list is empty");
  require(std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() == seeds.size(),
          "experiment: seeds must be distinct");
  require(!output_dir.empty(), "experiment: an output directory is required");
  require(jobs >= 1, "experiment: jobs must be >= 1");
  require(mode != RunMode::kDeploy || !algorithms.empty(), "experiment: no algorithm selected");
  require(!id.empty() && id.find_first_of(",\n\r") == std::string::npos,
          "experiment: id must be non-empty and free of commas and newlines");
  if (axis == SweepAxis::kNone) {
    require(sweep_values.empty(), "experiment: sweep values given without a sweep axis");
  } else {
    require(!sweep_values.empty(), "experiment: sweep axis given without values");
    for (const double v : sweep_values) {
      require(std::isfinite(v) && v > 0.0, "experiment: sweep values must be positive");
    }
  }
  require(episodes == -1 || episodes >= 1, "experiment: episodes must be >= 1");
  require(epsilon < 0.0 ? epsilon == -1.0 : epsilon <= 1.0, "experiment: epsilon must be in [0, 1]");
  require(qtable_in_dir.empty() || mode == RunMode::kMove,
          "experiment: q-table import only applies to movement runs");
}

Scenario apply_sweep(const Scenario& scenario, SweepAxis axis, double value) {
  Scenario s = scenario;
  switch (axis) {
    case SweepAxis::kNone:
      break;
    case SweepAxis::kPowerDbm:
      require(std::isfinite(value), "sweep: power must be finite");
      s.world.p_max_w = dbm_to_watt(value);
      break;
    case SweepAxis::kUsers: {
      const int n = integral_value(value, "user count");
      require(static_cast<std::size_t>(n) <= s.world.users.size(),
              "sweep: the scenario holds only " + std::to_string(s.world.users.size()) + " users");
      s.world.users.resize(static_cast<std::size_t>(n));
      break;
    }
    case SweepAxis::kClusters:
      s.uav_count = integral_value(value, "cluster count");
      break;
    case SweepAxis::kEpisodes:
      s.qlearning.episodes = integral_value(value, "episode count");
      break;
  }
  s.validate();
  return s;
}

RunReport run_experiment(const Scenario& scenario, const ExperimentSpec& spec) {
  spec.validate();
  scenario.validate();

  const std::vector<double> points =
      spec.axis == SweepAxis::kNone ? std::vector<double>{0.0} : spec.sweep_values;
  struct Job {
    double value;
    std::size_t point;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (const std::uint64_t seed : spec.seeds) jobs.push_back({points[p], p, seed});
  }
  // Surface bad sweep values before any work starts.
  for (const double v : points) {
    Scenario s = scenario;
    if (spec.episodes > 0) s.qlearning.episodes = spec.episodes;
    if (spec.epsilon >= 0.0) s.qlearning.epsilon = spec.epsilon;
    (void)apply_sweep(s, spec.axis, v);
  }

  std::error_code ec;
  fs::create_directories(spec.output_dir, ec);
  if (ec) throw RuntimeError("cannot create " + spec.output_dir + ": " + ec.message());
  if (!spec.qtable_out_dir.empty()) {
    fs::create_directories(spec.qtable_out_dir, ec);
    if (ec) throw RuntimeError("cannot create " + spec.qtable_out_dir + ": " + ec.message());
  }

  std::vector<CellOutput> outputs(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        outputs[i] = Cell(scenario, spec, jobs[i].value, jobs[i].point, jobs[i].seed).run();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(spec.jobs), jobs.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const fs::path dir(spec.output_dir);
  if (spec.mode == RunMode::kCluster) {
    write_file(dir / "clusters.csv", kClustersHeader, outputs, &CellOutput::clusters);
    write_file(dir / "partition.csv", kPartitionHeader, outputs, &CellOutput::partition);
  } else {
    write_file(dir / "report.csv", kReportHeader, outputs, &CellOutput::report);
    write_file(dir / "per_user.csv", kPerUserHeader, outputs, &CellOutput::per_user);
    write_file(dir / "positions.csv", kPositionsHeader, outputs, &CellOutput::positions);
    write_file(dir / "episode_rewards.csv", kRewardsHeader, outputs, &CellOutput::rewards);
    write_file(dir / "warnings.csv", kWarningsHeader, outputs, &CellOutput::warnings);
    if (spec.mode == RunMode::kMove) {
      write_file(dir / "trajectory.csv", kTrajectoryHeader, outputs, &CellOutput::trajectory);
    }
    if (spec.timing) write_file(dir / "timing.csv", kTimingHeader, outputs, &CellOutput::timing);
  }

  RunReport report;
  for (auto& cell : outputs) {
    for (auto& row : cell.rows) report.rows.push_back(std::move(row));
    report.warnings += cell.warning_count;
  }
  return report;
}

}  // namespace uavqoe
