#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dqoes {

using ContainerId = std::uint32_t;

/// Classification of a container against its objective within tolerance alpha.
/// Outperform: faster than the target band. Satisfied: inside the band.
/// Underperform: slower than the band.
enum class ServiceClass { Outperform, Satisfied, Underperform };

/// Single-letter form used in reports and CSV output (G / S / B).
char class_letter(ServiceClass cls);

/// Which limit policy a worker runs.
enum class ControllerKind { Dqoes, Even };

/// Tunables of the per-worker controller.
struct ControllerParams {
  double alpha = 0.10;           // tolerance fraction of the objective
  double beta = 0.10;            // adjustment gain per control step
  double total_capacity = 8.0;   // CPU-cores available on the worker

  /// Throws std::invalid_argument unless 0 < alpha < 1, 0 < beta <= 1,
  /// total_capacity > 0.
  void validate() const;

  /// Lower bound for any planned limit: capacity / (2 * containers).
  double floor_limit(std::size_t container_count) const;
};

/// quality = objective - perf, in seconds. Positive means faster than the
/// target. Both inputs must be strictly positive.
double quality(double objective, double perf);

/// One measurement of one container at a control instant. Immutable.
struct QualitySnapshot {
  ContainerId container_id = 0;
  double time = 0.0;     // simulated seconds
  double usage = 0.0;    // CPU-cores, time-averaged effective share
  double perf = 0.0;     // seconds per batch, smoothed
  double quality = 0.0;  // objective - perf
};

/// Sum of qualities over one worker's snapshots. Empty set -> 0.
double worker_quality(std::span<const QualitySnapshot> snapshots);

/// Per-class sums produced by one classification pass over a worker.
struct ClassAggregates {
  std::vector<ContainerId> outperform_ids;
  std::vector<ContainerId> satisfied_ids;
  std::vector<ContainerId> underperform_ids;
  double outperform_quality = 0.0;    // Q_G, >= 0
  double underperform_quality = 0.0;  // Q_B, <= 0
  double outperform_usage = 0.0;      // R_G, CPU-cores
  double underperform_usage = 0.0;    // R_B, CPU-cores

  std::size_t satisfied_count() const { return satisfied_ids.size(); }
};

/// The controller's output for one worker: new limit per adjusted container.
/// Satisfied containers never appear.
struct LimitPlan {
  int worker_id = 0;
  double created_at = 0.0;
  std::map<ContainerId, double> entries;  // container -> new limit, CPU-cores
};

/// Domain view of one served model.
struct ContainerState {
  ContainerId id = 0;
  std::string model;
  double objective = 0.0;  // seconds per batch, client target
  double perf = 0.0;       // latest smoothed measurement
  double usage = 0.0;      // latest measured CPU-cores
  double limit = 0.0;      // current CPU cap
  std::optional<ServiceClass> cls;  // unset until first measurement
};

}  // namespace dqoes
