#pragma once

#include <dqoes/cluster.hpp>
#include <dqoes/worker.hpp>

#include <memory>

namespace dqoes {

/// Virtual-time step. Two orders of magnitude below batch durations keeps
/// control-timing quantization error under 2% of the smallest objective.
inline constexpr double kDefaultTick = 0.5;

struct SimulationSettings {
  std::size_t worker_count = 1;
  double total_capacity = 8.0;  // T_R per worker
  ControllerKind controller = ControllerKind::Dqoes;
  double alpha = 0.10;
  double beta = 0.10;
  ListenerConfig listener;
  double tick = kDefaultTick;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Deterministic cluster simulator. Workers advance in index order under a
/// shared virtual clock; arrivals due in the same tick land as one cohort;
/// control steps fire at tick boundaries once their schedule comes due.
class Simulation {
 public:
  explicit Simulation(SimulationSettings settings);

  /// Queue a container before or during the run; ids are assigned 1..N in
  /// call order. Placement happens at submit time.
  ContainerId schedule(const ModelProfile& profile, double objective, double submit_time);

  /// Queue a container at the current virtual time (next tick boundary).
  ContainerId inject(const ModelProfile& profile, double objective);

  /// Advance virtual time to `t` (inclusive of control steps at t).
  void run_until(double t);

  double now() const { return now_; }
  const SimulationSettings& settings() const { return settings_; }
  Worker& worker(int id);  // 1-based
  const Worker& worker(int id) const;
  std::size_t worker_count() const { return workers_.size(); }
  const ObjectiveRegistry& registry() const { return registry_; }
  ClusterSummary& summary() { return summary_; }
  const ClusterSummary& summary() const { return summary_; }

  /// Global report stream, ordered by (time, worker).
  const std::vector<StepReport>& reports() const { return reports_; }

 private:
  struct Arrival {
    double time = 0.0;
    ContainerId id = 0;
    ModelProfile profile;
    double objective = 0.0;
  };

  void place_due_arrivals(double now);

  SimulationSettings settings_;
  std::vector<std::unique_ptr<Worker>> workers_;
  std::vector<Arrival> pending_;  // sorted by (time, id)
  ContainerId next_id_ = 1;
  double now_ = 0.0;
  std::uint64_t tick_index_ = 0;
  ObjectiveRegistry registry_;
  ClusterSummary summary_;
  std::vector<StepReport> reports_;
};

}  // namespace dqoes
