#include <dqoes/scenario.hpp>

#include <dqoes/rng.hpp>

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace dqoes {

using nlohmann::json;

std::size_t ScenarioConfig::container_count() const {
  return generator ? generator->count : containers.size();
}

void ScenarioConfig::validate() const {
  if (workers < 1) throw ConfigError("workers.count: must be >= 1");
  if (!(total_capacity > 0.0)) throw ConfigError("workers.total_capacity: must be positive");
  try {
    ControllerParams{alpha, beta, total_capacity}.validate();
    listener.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (profiles.empty()) throw ConfigError("profiles: at least one profile is required");
  for (const auto& p : profiles) {
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("profiles: ") + e.what());
    }
  }
  if (generator && !containers.empty())
    throw ConfigError("containers: explicit list and generator are mutually exclusive");
  if (!generator && containers.empty())
    throw ConfigError("containers: either a container list or a generator is required");
  if (generator) {
    if (generator->count < 1) throw ConfigError("generator.count: must be >= 1");
    if (!(generator->objective_min > 0.0))
      throw ConfigError("generator.objective_range: lower bound must be positive");
    if (!(generator->objective_min <= generator->objective_max))
      throw ConfigError("generator.objective_range: lower bound must not exceed upper bound");
  }
  for (std::size_t i = 0; i < containers.size(); ++i) {
    const auto& entry = containers[i];
    if (!(entry.objective > 0.0))
      throw ConfigError("containers[" + std::to_string(i) + "].objective: must be positive");
    const bool known = std::any_of(profiles.begin(), profiles.end(),
                                   [&](const ModelProfile& p) { return p.name == entry.profile; });
    if (!known)
      throw ConfigError("containers[" + std::to_string(i) + "].profile: unknown profile '" +
                        entry.profile + "'");
  }
  SubmissionSchedule schedule{schedule_kind, container_count(), schedule_gap,
                              schedule_window_begin, schedule_window_end, seed};
  try {
    schedule.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("schedule: ") + e.what());
  }
  if (!(duration > 0.0)) throw ConfigError("duration: must be positive");
  double max_submit = 0.0;
  switch (schedule_kind) {
    case SubmissionSchedule::Kind::Burst: break;
    case SubmissionSchedule::Kind::Fixed:
      max_submit = schedule_gap * static_cast<double>(container_count() - 1);
      break;
    case SubmissionSchedule::Kind::Random: max_submit = schedule_window_end; break;
  }
  if (duration <= max_submit)
    throw ConfigError("duration: must exceed the last submission time (" +
                      std::to_string(max_submit) + ")");
}

namespace {

ControllerKind parse_controller(const std::string& value) {
  if (value == "dqoes") return ControllerKind::Dqoes;
  if (value == "even") return ControllerKind::Even;
  throw ConfigError("controller: expected \"dqoes\" or \"even\", got \"" + value + "\"");
}

const char* controller_name(ControllerKind kind) {
  return kind == ControllerKind::Dqoes ? "dqoes" : "even";
}

ScenarioConfig from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
  ScenarioConfig cfg;
  try {
    if (doc.contains("workers")) {
      const auto& workers = doc.at("workers");
      cfg.workers = workers.value("count", std::size_t{1});
      cfg.total_capacity = workers.value("total_capacity", 8.0);
    }
    if (doc.contains("controller")) cfg.controller = parse_controller(doc.at("controller"));
    cfg.alpha = doc.value("alpha", 0.10);
    cfg.beta = doc.value("beta", 0.10);
    if (doc.contains("listener")) {
      const auto& listener = doc.at("listener");
      cfg.listener.initial_interval = listener.value("initial_interval", 10.0);
      cfg.listener.min_interval = listener.value("min_interval", 5.0);
      cfg.listener.max_interval = listener.value("max_interval", 80.0);
      cfg.listener.streak_threshold = listener.value("streak_threshold", 2);
    }
    if (doc.contains("profiles")) {
      for (const auto& p : doc.at("profiles")) {
        ModelProfile profile;
        profile.name = p.at("name");
        profile.work = p.at("work");
        profile.noise_sigma = p.value("noise_sigma", 0.011);
        cfg.profiles.push_back(std::move(profile));
      }
    } else {
      cfg.profiles = standard_profiles();
    }
    if (doc.contains("containers")) {
      for (const auto& c : doc.at("containers"))
        cfg.containers.push_back({c.at("profile"), c.at("objective")});
    }
    if (doc.contains("generator")) {
      const auto& g = doc.at("generator");
      ScenarioConfig::Generator gen;
      gen.count = g.at("count");
      const auto& range = g.at("objective_range");
      gen.objective_min = range.at(0);
      gen.objective_max = range.at(1);
      cfg.generator = gen;
    }
    if (doc.contains("schedule")) {
      const auto& schedule = doc.at("schedule");
      const std::string kind = schedule.value("kind", "burst");
      if (kind == "burst") {
        cfg.schedule_kind = SubmissionSchedule::Kind::Burst;
      } else if (kind == "fixed") {
        cfg.schedule_kind = SubmissionSchedule::Kind::Fixed;
        cfg.schedule_gap = schedule.at("gap");
      } else if (kind == "random") {
        cfg.schedule_kind = SubmissionSchedule::Kind::Random;
        const auto& window = schedule.at("window");
        cfg.schedule_window_begin = window.at(0);
        cfg.schedule_window_end = window.at(1);
      } else {
        throw ConfigError("schedule.kind: expected burst, fixed or random, got \"" + kind + "\"");
      }
    }
    cfg.duration = doc.value("duration", 0.0);
    cfg.seed = doc.value("seed", std::uint64_t{0});
    cfg.output = doc.value("output", std::string{});
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

json canonical_json(const ScenarioConfig& cfg, bool include_controller) {
  json doc;
  doc["workers"] = {{"count", cfg.workers}, {"total_capacity", cfg.total_capacity}};
  if (include_controller) doc["controller"] = controller_name(cfg.controller);
  doc["alpha"] = cfg.alpha;
  doc["beta"] = cfg.beta;
  doc["listener"] = {{"initial_interval", cfg.listener.initial_interval},
                     {"min_interval", cfg.listener.min_interval},
                     {"max_interval", cfg.listener.max_interval},
                     {"streak_threshold", cfg.listener.streak_threshold}};
  json profiles = json::array();
  for (const auto& p : cfg.profiles)
    profiles.push_back({{"name", p.name}, {"work", p.work}, {"noise_sigma", p.noise_sigma}});
  doc["profiles"] = profiles;
  if (cfg.generator) {
    doc["generator"] = {{"count", cfg.generator->count},
                        {"objective_range", {cfg.generator->objective_min, cfg.generator->objective_max}}};
  } else {
    json containers = json::array();
    for (const auto& c : cfg.containers)
      containers.push_back({{"profile", c.profile}, {"objective", c.objective}});
    doc["containers"] = containers;
  }
  switch (cfg.schedule_kind) {
    case SubmissionSchedule::Kind::Burst:
      doc["schedule"] = {{"kind", "burst"}};
      break;
    case SubmissionSchedule::Kind::Fixed:
      doc["schedule"] = {{"kind", "fixed"}, {"gap", cfg.schedule_gap}};
      break;
    case SubmissionSchedule::Kind::Random:
      doc["schedule"] = {{"kind", "random"},
                         {"window", {cfg.schedule_window_begin, cfg.schedule_window_end}}};
      break;
  }
  doc["duration"] = cfg.duration;
  doc["seed"] = cfg.seed;
  return doc;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  return from_json(doc);
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::vector<PlannedContainer> plan_containers(const ScenarioConfig& config) {
  config.validate();
  struct Assignment {
    ModelProfile profile;
    double objective;
  };
  std::vector<Assignment> assignments;
  if (config.generator) {
    Rng objective_rng(derive_seed(config.seed, "objectives"));
    Rng profile_rng(derive_seed(config.seed, "profiles"));
    for (std::size_t i = 0; i < config.generator->count; ++i) {
      const double objective =
          objective_rng.uniform(config.generator->objective_min, config.generator->objective_max);
      const auto& profile = config.profiles[profile_rng.below(config.profiles.size())];
      assignments.push_back({profile, objective});
    }
  } else {
    for (const auto& entry : config.containers) {
      const auto profile =
          std::find_if(config.profiles.begin(), config.profiles.end(),
                       [&](const ModelProfile& p) { return p.name == entry.profile; });
      assignments.push_back({*profile, entry.objective});
    }
  }

  SubmissionSchedule schedule{config.schedule_kind, assignments.size(), config.schedule_gap,
                              config.schedule_window_begin, config.schedule_window_end,
                              config.seed};
  std::vector<PlannedContainer> planned;
  planned.reserve(assignments.size());
  for (const auto& [index, submit_time] : make_schedule(schedule)) {
    PlannedContainer pc;
    pc.id = static_cast<ContainerId>(index) + 1;
    pc.profile = assignments[index].profile;
    pc.objective = assignments[index].objective;
    pc.submit_time = submit_time;
    planned.push_back(std::move(pc));
  }
  return planned;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  SimulationSettings settings;
  settings.worker_count = config.workers;
  settings.total_capacity = config.total_capacity;
  settings.controller = config.controller;
  settings.alpha = config.alpha;
  settings.beta = config.beta;
  settings.listener = config.listener;
  settings.seed = config.seed;

  Simulation sim(settings);
  for (const auto& pc : plan_containers(config))
    sim.schedule(pc.profile, pc.objective, pc.submit_time);
  sim.run_until(config.duration);

  ScenarioResult result;
  result.reports = sim.reports();
  result.summary = std::move(sim.summary());
  return result;
}

std::uint64_t config_fingerprint(const ScenarioConfig& config) {
  const std::string canonical = canonical_json(config, /*include_controller=*/false).dump();
  return fnv1a(canonical);
}

}  // namespace dqoes
