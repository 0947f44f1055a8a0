#pragma once

#include <dqoes/simulation.hpp>

#include <optional>
#include <stdexcept>

namespace dqoes {

/// Configuration problem: unreadable value, violated invariant. Carries a
/// field-level message.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem problem while reading or writing run artifacts.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  std::size_t workers = 1;
  double total_capacity = 8.0;
  ControllerKind controller = ControllerKind::Dqoes;
  double alpha = 0.10;
  double beta = 0.10;
  ListenerConfig listener;
  std::vector<ModelProfile> profiles;

  struct ContainerEntry {
    std::string profile;
    double objective = 0.0;
  };
  std::vector<ContainerEntry> containers;

  struct Generator {
    std::size_t count = 0;
    double objective_min = 0.0;
    double objective_max = 0.0;
  };
  std::optional<Generator> generator;  // exclusive with `containers`

  SubmissionSchedule::Kind schedule_kind = SubmissionSchedule::Kind::Burst;
  double schedule_gap = 0.0;
  double schedule_window_begin = 0.0;
  double schedule_window_end = 0.0;

  double duration = 0.0;
  std::uint64_t seed = 0;
  std::string output;  // optional output directory

  std::size_t container_count() const;

  /// Throws ConfigError with a field-level message on any violation.
  void validate() const;
};

/// Parse and validate a JSON config document.
ScenarioConfig parse_config(const std::string& json_text);

/// Read, parse and validate a config file. IoError if unreadable.
ScenarioConfig load_config(const std::string& path);

/// Materialized per-container assignment, in submission order.
struct PlannedContainer {
  ContainerId id = 0;
  ModelProfile profile;
  double objective = 0.0;
  double submit_time = 0.0;
};

/// Resolve profiles/objectives/schedule into concrete containers.
/// Deterministic per config seed.
std::vector<PlannedContainer> plan_containers(const ScenarioConfig& config);

struct ScenarioResult {
  ClusterSummary summary;
  std::vector<StepReport> reports;
};

/// Build the cluster, register objectives, place containers per schedule,
/// advance virtual time to `duration`. Deterministic per seed.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// Hash of the canonicalized config with controller and output removed.
std::uint64_t config_fingerprint(const ScenarioConfig& config);

}  // namespace dqoes
