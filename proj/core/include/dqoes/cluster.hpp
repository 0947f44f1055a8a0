#pragma once

#include <dqoes/worker.hpp>

#include <cstdint>
#include <map>
#include <span>

namespace dqoes {

/// Manager-side record of every container's target, keyed cluster-wide.
class ObjectiveRegistry {
 public:
  struct Entry {
    std::string model;
    double objective = 0.0;
    double submit_time = 0.0;
  };

  /// Throws on duplicate id or non-positive objective.
  void add(ContainerId id, std::string model, double objective, double submit_time);

  const Entry& at(ContainerId id) const;
  bool contains(ContainerId id) const { return entries_.count(id) != 0; }
  std::size_t size() const { return entries_.size(); }
  const std::map<ContainerId, Entry>& entries() const { return entries_; }

 private:
  std::map<ContainerId, Entry> entries_;
};

/// Spread placement: the worker with the fewest containers, ties broken by
/// lowest index. Returns a 0-based index; throws if `counts` is empty.
std::size_t place(std::span<const std::size_t> counts);

struct SteadyStateOptions {
  double tail_fraction = 0.20;      // final fraction of control steps examined
  double satisfied_fraction = 0.90; // S-residency required to count as satisfied
};

struct WorkerCensus {
  std::size_t outperform = 0;
  std::size_t satisfied = 0;
  std::size_t underperform = 0;

  std::size_t total() const { return outperform + satisfied + underperform; }
};

/// Manager-side accumulation of worker step reports, queryable at any
/// virtual time, plus steady-state readings off trajectory tails.
class ClusterSummary {
 public:
  /// Appends one report. Reports must arrive in non-decreasing time order
  /// per worker; anything else is rejected (std::invalid_argument).
  void collect(const StepReport& report);

  std::vector<int> worker_ids() const;
  const std::vector<StepReport>& reports(int worker_id) const;
  bool empty() const { return by_worker_.empty(); }

  /// Class census at the latest step <= time.
  WorkerCensus census_at(int worker_id, double time) const;

  /// (time, |S|) per control step for one worker.
  std::vector<std::pair<double, std::size_t>> satisfied_trajectory(int worker_id) const;

  /// Containers in S for >= satisfied_fraction of the final tail_fraction of
  /// this worker's control steps.
  std::vector<ContainerId> steady_satisfied(int worker_id, SteadyStateOptions opt = {}) const;

  /// Mean post-plan share per container over the tail steps.
  std::map<ContainerId, double> steady_mean_share(int worker_id, SteadyStateOptions opt = {}) const;

  /// Mean measured perf over all tail rows of one worker.
  double steady_mean_perf(int worker_id, SteadyStateOptions opt = {}) const;

  /// Latest class per container over the tail.
  std::map<ContainerId, ServiceClass> steady_class(int worker_id, SteadyStateOptions opt = {}) const;

  /// Sum of |quality| over every tail row of every worker.
  double steady_quality_abs_sum(SteadyStateOptions opt = {}) const;

  /// Last time any step changed limits, 0 if none did.
  double last_limit_change(int worker_id) const;

  /// Hash of the (worker, container, model, objective) placement table;
  /// identical for runs of the same scenario regardless of controller.
  std::uint64_t fingerprint() const;

 private:
  std::span<const StepReport> tail(int worker_id, double tail_fraction) const;

  std::map<int, std::vector<StepReport>> by_worker_;
};

}  // namespace dqoes
