#pragma once

#include <dqoes/model.hpp>

namespace dqoes {

/// Everything the controller needs to know about one worker at one instant.
/// `snapshots` covers measurable containers only; `limits` and
/// `container_count` cover all containers on the worker.
struct WorkerSnapshot {
  int worker_id = 0;
  double time = 0.0;
  ControllerParams params;
  std::size_t container_count = 0;
  std::vector<QualitySnapshot> snapshots;
  std::map<ContainerId, double> objectives;
  std::map<ContainerId, double> limits;
};

/// G iff quality > alpha*objective, B iff quality < -alpha*objective,
/// S otherwise. Boundary equality classifies as Satisfied.
ServiceClass classify(double quality, double objective, double alpha);

/// Classify every snapshot and accumulate per-class quality and usage sums.
/// Throws std::invalid_argument if a snapshot has no registered objective.
ClassAggregates aggregate(std::span<const QualitySnapshot> snapshots,
                          const std::map<ContainerId, double>& objectives,
                          double alpha);

/// Multiplicative limit update for every container in G and B:
///   G: L' = L * (1 - (q/Q_G) * (R_G/T_R) * beta), floored at T_R/(2|C|)
///   B: L' = L * (1 + (q/Q_B) * (R_G/T_R) * beta), capped at T_R
/// Satisfied containers get no entry. `container_count` is |C| at plan time.
LimitPlan plan_limits(const std::map<ContainerId, double>& current_limits,
                      std::span<const QualitySnapshot> snapshots,
                      const ClassAggregates& aggregates,
                      const ControllerParams& params,
                      std::size_t container_count,
                      int worker_id, double now);

/// aggregate + plan_limits over one worker snapshot. Deterministic.
LimitPlan control_step(const WorkerSnapshot& worker);

}  // namespace dqoes
