// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

#include "uavqoe/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace uavqoe {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError("scenario: " + path + ": " + what);
}

// Read-only view of one JSON object that remembers which keys were consumed,
// so stray keys (usually typos) are reported instead of silently ignored.
class Fields {
 public:
  Fields(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail(path_, "expected an object");
  }

  [[nodiscard]] bool has(const std::string& key) const { return node_.contains(key); }

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  [[nodiscard]] std::string path(const std::string& key) const { return path_ + "." + key; }

  double number(const std::string& key, double fallback) {
    const json* v = get(key);
    if (v == nullptr) return fallback;
    if (!v->is_number()) fail(path(key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) fail(path(key), "expected a finite number");
    return d;
  }

  double required_number(const std::string& key) {
    if (!has(key)) fail(path(key), "required field is missing");
    return number(key, 0.0);
  }

  long long integer(const std::string& key, long long fallback) {
    const json* v = get(key);
    if (v == nullptr) return fallback;
    if (!v->is_number_integer()) fail(path(key), "expected an integer");
    if (v->is_number_unsigned() &&
        v->get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<long long>::max())) {
      fail(path(key), "integer out of range");
    }
    return v->get<long long>();
  }

  int small_integer(const std::string& key, int fallback) {
    const long long v = integer(key, fallback);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      fail(path(key), "integer out of range");
    }
    return static_cast<int>(v);
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    const json* v = get(key);
    if (v == nullptr) return fallback;
    if (!v->is_number_unsigned()) fail(path(key), "expected a non-negative integer");
    return v->get<std::uint64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = get(key);
    if (v == nullptr) return fallback;
    if (!v->is_boolean()) fail(path(key), "expected true or false");
    return v->get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const json* v = get(key);
    if (v == nullptr) return fallback;
    if (!v->is_string()) fail(path(key), "expected a string");
    return v->get<std::string>();
  }

  // Value given either in dB (key_db) or linear (key); never both.
  double linear_or_db(const std::string& key, const std::string& db_key, double fallback,
                      double (*convert)(double)) {
    if (has(key) && has(db_key)) fail(path(key), "give either " + key + " or " + db_key + ", not both");
    if (has(db_key)) return convert(number(db_key, 0.0));
    return number(key, fallback);
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.contains(it.key())) fail(path(it.key()), "unknown field");
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

double from_db(double db) { return db_to_linear(db); }
double from_dbm(double dbm) { return dbm_to_watt(dbm); }

void read_arena(Fields& f, Arena& a) {
  a.x_max_m = f.number("x_max_m", a.x_max_m);
  a.y_max_m = f.number("y_max_m", a.y_max_m);
  a.h_min_m = f.number("h_min_m", a.h_min_m);
  a.h_max_m = f.number("h_max_m", a.h_max_m);
  a.step_horizontal_m = f.number("step_horizontal_m", a.step_horizontal_m);
  a.step_vertical_m = f.number("step_vertical_m", a.step_vertical_m);
  a.timeslot_s = f.number("timeslot_s", a.timeslot_s);
  a.horizon_s = f.number("horizon_s", a.horizon_s);
  f.finish();
}

void read_channel(Fields& f, ChannelParams& c) {
  c.carrier_frequency_hz = f.number("carrier_frequency_hz", c.carrier_frequency_hz);
  c.light_speed_mps = f.number("light_speed_mps", c.light_speed_mps);
  c.path_loss_exponent = f.number("path_loss_exponent", c.path_loss_exponent);
  c.b1 = f.number("b1", c.b1);
  c.b2 = f.number("b2", c.b2);
  c.zeta_deg = f.number("zeta_deg", c.zeta_deg);
  c.mu_los = f.linear_or_db("mu_los", "mu_los_db", c.mu_los, from_db);
  c.mu_nlos = f.linear_or_db("mu_nlos", "mu_nlos_db", c.mu_nlos, from_db);
  c.noise_psd_w_per_hz = f.linear_or_db("noise_psd_w_per_hz", "noise_psd_dbm_per_hz",
                                        c.noise_psd_w_per_hz, from_dbm);
  f.finish();
}

MosProfile read_profile(Fields& f) {
  MosProfile p;
  p.name = f.text("name", p.name);
  p.c1 = f.number("c1", p.c1);
  p.c2 = f.number("c2", p.c2);
  p.rtt_s = f.number("rtt_s", p.rtt_s);
  p.page_size_bits = f.number("page_size_bits", p.page_size_bits);
  p.mss_bits = f.number("mss_bits", p.mss_bits);
  p.xi1 = f.number("xi1", p.xi1);
  p.xi2 = f.number("xi2", p.xi2);
  const std::string mode = f.text("slow_start", "continuous");
  if (mode == "continuous") {
    p.slow_start = SlowStartMode::kContinuous;
  } else if (mode == "floor") {
    p.slow_start = SlowStartMode::kFloor;
  } else {
    fail(f.path("slow_start"), "expected \"continuous\" or \"floor\"");
  }
  f.finish();
  return p;
}

int profile_index(Fields& f, const std::vector<MosProfile>& profiles) {
  const json* v = f.get("profile");
  if (v == nullptr) return 0;
  if (v->is_string()) {
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      if (profiles[i].name == v->get<std::string>()) return static_cast<int>(i);
    }
    fail(f.path("profile"), "no MOS profile named \"" + v->get<std::string>() + "\"");
  }
  if (!v->is_number_integer()) fail(f.path("profile"), "expected a profile index or name");
  const long long idx = v->get<long long>();
  if (idx < 0 || static_cast<std::size_t>(idx) >= profiles.size()) {
    fail(f.path("profile"), "profile index out of range");
  }
  return static_cast<int>(idx);
}

std::vector<UserState> uniform_users(int count, const Arena& arena, std::uint64_t seed,
                                     double snr_target, int profile) {
  Rng rng(seed);
  std::vector<UserState> users;
  users.reserve(static_cast<std::size_t>(count));
  for (int u = 0; u < count; ++u) {
    UserState s;
    s.id = u;
    s.position.x = rng.uniform(0.0, arena.x_max_m);
    s.position.y = rng.uniform(0.0, arena.y_max_m);
    s.snr_target = snr_target;
    s.profile = profile;
    users.push_back(s);
  }
  return users;
}

void read_qlearning(Fields& f, QLearnConfig& q) {
  q.learning_rate = f.number("learning_rate", q.learning_rate);
  q.discount = f.number("discount", q.discount);
  q.epsilon = f.number("epsilon", q.epsilon);
  q.episodes = f.small_integer("episodes", q.episodes);
  q.max_steps_per_episode = f.small_integer("max_steps_per_episode", q.max_steps_per_episode);
  q.seed = f.unsigned_integer("seed", q.seed);
  q.epsilon_decay = f.boolean("epsilon_decay", q.epsilon_decay);
  q.warmup_episodes = f.small_integer("warmup_episodes", q.warmup_episodes);
  if (const json* r = f.get("reward")) {
    Fields rf(*r, f.path("reward"));
    q.reward.improve = rf.number("improve", q.reward.improve);
    q.reward.equal = rf.number("equal", q.reward.equal);
    q.reward.worsen = rf.number("worsen", q.reward.worsen);
    rf.finish();
  }
  const std::string ref = f.text("movement_reference", "stay");
  if (ref == "stay") {
    q.movement_reference = MovementReference::kStay;
  } else if (ref == "previous") {
    q.movement_reference = MovementReference::kPrevious;
  } else {
    fail(f.path("movement_reference"), "expected \"stay\" or \"previous\"");
  }
  f.finish();
}

Scenario from_json(const json& root) {
  Scenario s;
  Fields top(root, "$");
  if (const json* v = top.get("arena")) {
    Fields f(*v, top.path("arena"));
    read_arena(f, s.world.arena);
  }
  if (const json* v = top.get("channel")) {
    Fields f(*v, top.path("channel"));
    read_channel(f, s.world.channel);
  }
  if (const json* v = top.get("uav")) {
    Fields f(*v, top.path("uav"));
    s.uav_count = f.small_integer("count", s.uav_count);
    s.world.p_max_w = f.linear_or_db("max_power_w", "max_power_dbm", s.world.p_max_w, from_dbm);
    s.world.bandwidth_hz = f.number("bandwidth_hz", s.world.bandwidth_hz);
    f.finish();
  }
  if (const json* v = top.get("mos_profiles")) {
    if (!v->is_array() || v->empty()) fail(top.path("mos_profiles"), "expected a non-empty array");
    s.world.profiles.clear();
    std::set<std::string> names;
    for (std::size_t i = 0; i < v->size(); ++i) {
      Fields f((*v)[i], top.path("mos_profiles") + "[" + std::to_string(i) + "]");
      s.world.profiles.push_back(read_profile(f));
      if (!names.insert(s.world.profiles.back().name).second) {
        fail(f.path("name"), "duplicate profile name");
      }
    }
  }
  if (top.has("users") == top.has("user_generator")) {
    fail("$", "exactly one of \"users\" and \"user_generator\" is required");
  }
  if (const json* v = top.get("users")) {
    if (!v->is_array()) fail(top.path("users"), "expected an array");
    for (std::size_t i = 0; i < v->size(); ++i) {
      Fields f((*v)[i], top.path("users") + "[" + std::to_string(i) + "]");
      UserState u;
      u.id = f.small_integer("id", static_cast<int>(i));
      u.position.x = f.required_number("x");
      u.position.y = f.required_number("y");
      u.snr_target = f.linear_or_db("snr_target", "snr_target_db", u.snr_target, from_db);
      u.profile = profile_index(f, s.world.profiles);
      f.finish();
      s.world.users.push_back(u);
    }
  }
  if (const json* v = top.get("user_generator")) {
    Fields f(*v, top.path("user_generator"));
    const int count = f.small_integer("count", 0);
    if (count < 1) fail(f.path("count"), "must be >= 1");
    const std::uint64_t seed = f.unsigned_integer("seed", 1);
    const double target = f.linear_or_db("snr_target", "snr_target_db", 1.0, from_db);
    const int profile = profile_index(f, s.world.profiles);
    f.finish();
    s.world.users = uniform_users(count, s.world.arena, seed, target, profile);
  }
  if (const json* v = top.get("mobility")) {
    Fields f(*v, top.path("mobility"));
    s.world.mobility.c_max_mps = f.number("c_max_mps", s.world.mobility.c_max_mps);
    s.world.mobility.seed = f.unsigned_integer("seed", s.world.mobility.seed);
    f.finish();
  }
  if (const json* v = top.get("clustering")) {
    Fields f(*v, top.path("clustering"));
    s.clustering.population_size = f.small_integer("population_size", s.clustering.population_size);
    s.clustering.generations = f.small_integer("generations", s.clustering.generations);
    s.clustering.mutation_rate = f.number("mutation_rate", s.clustering.mutation_rate);
    s.clustering.seed = f.unsigned_integer("seed", s.clustering.seed);
    f.finish();
  }
  if (const json* v = top.get("qlearning")) {
    Fields f(*v, top.path("qlearning"));
    read_qlearning(f, s.qlearning);
  }
  s.exhaustive_cap = top.unsigned_integer("exhaustive_cap", s.exhaustive_cap);
  top.finish();
  s.validate();
  return s;
}

std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  // nlohmann reports the byte after the offending character.
  if (column > 1) --column;
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

void Scenario::validate() const {
  require(uav_count >= 1, "scenario: $.uav.count must be >= 1");
  require(!world.users.empty(), "scenario: at least one user is required");
  require(world.users.size() >= static_cast<std::size_t>(uav_count),
          "scenario: fewer users than UAVs");
  require(exhaustive_cap >= 1, "scenario: $.exhaustive_cap must be >= 1");
  World probe = world;
  probe.uavs.assign(static_cast<std::size_t>(uav_count), UavState{});
  for (auto& u : probe.users) u.cluster = 0;
  probe.validate();
  clustering.validate();
  qlearning.validate();
}

Scenario parse_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    const auto cut = what.find("syntax error");
    if (cut != std::string::npos) what = what.substr(cut);
    throw ValidationError("scenario: JSON syntax error at " + location(text, e.byte) + ": " + what);
  }
  return from_json(root);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("scenario: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_scenario(buffer.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string write_scenario(const Scenario& s) {
  json root = json::object();
  const Arena& a = s.world.arena;
  root["arena"] = {{"x_max_m", a.x_max_m},
                   {"y_max_m", a.y_max_m},
                   {"h_min_m", a.h_min_m},
                   {"h_max_m", a.h_max_m},
                   {"step_horizontal_m", a.step_horizontal_m},
                   {"step_vertical_m", a.step_vertical_m},
                   {"timeslot_s", a.timeslot_s},
                   {"horizon_s", a.horizon_s}};
  const ChannelParams& c = s.world.channel;
  root["channel"] = {{"carrier_frequency_hz", c.carrier_frequency_hz},
                     {"light_speed_mps", c.light_speed_mps},
                     {"path_loss_exponent", c.path_loss_exponent},
                     {"b1", c.b1},
                     {"b2", c.b2},
                     {"zeta_deg", c.zeta_deg},
                     {"mu_los", c.mu_los},
                     {"mu_nlos", c.mu_nlos},
                     {"noise_psd_w_per_hz", c.noise_psd_w_per_hz}};
  root["uav"] = {{"count", s.uav_count},
                 {"max_power_w", s.world.p_max_w},
                 {"bandwidth_hz", s.world.bandwidth_hz}};
  json profiles = json::array();
  for (const auto& p : s.world.profiles) {
    profiles.push_back({{"name", p.name},
                        {"c1", p.c1},
                        {"c2", p.c2},
                        {"rtt_s", p.rtt_s},
                        {"page_size_bits", p.page_size_bits},
                        {"mss_bits", p.mss_bits},
                        {"xi1", p.xi1},
                        {"xi2", p.xi2},
                        {"slow_start", p.slow_start == SlowStartMode::kFloor ? "floor" : "continuous"}});
  }
  root["mos_profiles"] = profiles;
  json users = json::array();
  for (const auto& u : s.world.users) {
    users.push_back({{"id", u.id},
                     {"x", u.position.x},
                     {"y", u.position.y},
                     {"snr_target", u.snr_target},
                     {"profile", u.profile}});
  }
  root["users"] = users;
  root["mobility"] = {{"c_max_mps", s.world.mobility.c_max_mps}, {"seed", s.world.mobility.seed}};
  root["clustering"] = {{"population_size", s.clustering.population_size},
                        {"generations", s.clustering.generations},
                        {"mutation_rate", s.clustering.mutation_rate},
                        {"seed", s.clustering.seed}};
  const QLearnConfig& q = s.qlearning;
  root["qlearning"] = {
      {"learning_rate", q.learning_rate},
      {"discount", q.discount},
      {"epsilon", q.epsilon},
      {"episodes", q.episodes},
      {"max_steps_per_episode", q.max_steps_per_episode},
      {"seed", q.seed},
      {"epsilon_decay", q.epsilon_decay},
      {"warmup_episodes", q.warmup_episodes},
      {"reward", {{"improve", q.reward.improve}, {"equal", q.reward.equal}, {"worsen", q.reward.worsen}}},
      {"movement_reference", q.movement_reference == MovementReference::kPrevious ? "previous" : "stay"}};
  root["exhaustive_cap"] = s.exhaustive_cap;
  return root.dump(2) + "\n";
}

Scenario generate_scenario(const GeneratorSpec& spec) {
  require(spec.users >= 1, "generate: user count must be >= 1");
  require(spec.uavs >= 1, "generate: UAV count must be >= 1");
  spec.arena.validate();
  Scenario s;
  s.world.arena = spec.arena;
  s.uav_count = spec.uavs;
  s.world.users = uniform_users(spec.users, spec.arena, spec.seed, 1.0, 0);
  s.world.mobility.seed = spec.seed;
  s.clustering.seed = spec.seed;
  s.qlearning.seed = spec.seed;
  s.validate();
  return s;
}

}  // namespace uavqoe
