#pragma once

#include <dqoes/controller.hpp>
#include <dqoes/listener.hpp>
#include <dqoes/model.hpp>
#include <dqoes/rng.hpp>
#include <dqoes/workload.hpp>

#include <deque>
#include <optional>

namespace dqoes {

/// Smoothing window for perf: arithmetic mean of the last N batch durations.
inline constexpr std::size_t kPerfWindow = 3;

struct ContainerSpec {
  ContainerId id = 0;
  ModelProfile profile;
  double objective = 0.0;
};

/// Soft-limit contention: limits are honored as-is while they fit in the
/// node, and rescaled proportionally once their sum exceeds capacity.
std::map<ContainerId, double> effective_shares(const std::map<ContainerId, double>& limits,
                                               double total_capacity);

struct BatchRecord {
  double finish_time = 0.0;
  double duration = 0.0;
};

struct CompletionEvent {
  ContainerId container_id = 0;
  double finish_time = 0.0;
  double duration = 0.0;
};

/// One line of a per-step report: the container as the controller saw it,
/// plus the limit and effective share after the plan was applied.
struct ContainerRow {
  ContainerId id = 0;
  std::string model;
  double objective = 0.0;
  double perf = 0.0;
  double quality = 0.0;
  ServiceClass cls = ServiceClass::Satisfied;
  double limit = 0.0;
  double share = 0.0;
};

struct StepReport {
  int worker_id = 0;
  double time = 0.0;
  std::vector<ContainerRow> rows;  // sorted by container id
  double outperform_quality = 0.0;
  double underperform_quality = 0.0;
  std::size_t satisfied = 0;
  double interval_after = 0.0;
  bool limits_changed = false;
  bool triggered = false;  // the listener demanded an immediate rerun
};

/// Simulated worker node: executes batches under CPU contention, measures
/// per-container performance, runs the controller on the adaptive listener's
/// cadence, and applies limit plans.
class Worker {
 public:
  Worker(int id, ControllerParams params, ListenerConfig listener_cfg,
         ControllerKind kind, std::uint64_t noise_seed_base);

  int id() const { return id_; }
  std::size_t container_count() const { return containers_.size(); }
  const ControllerParams& params() const { return params_; }
  const ListenerState& listener() const { return listener_; }
  double next_control_at() const { return next_control_at_; }

  /// Register one container. Initial limit is an equal share of capacity
  /// over the container count after this arrival; existing limits are not
  /// touched. Flags the listener to force a control run at the next
  /// observation. Throws on duplicate id or non-positive objective.
  void submit(const ContainerSpec& spec, double now);

  /// Register simultaneous arrivals as one cohort: every new container gets
  /// an equal share of capacity over the count after the whole cohort.
  void submit_batch(std::span<const ContainerSpec> specs, double now);

  /// Advance execution from `now` by `dt`. Batch completions are resolved at
  /// exact instants inside the tick; surplus progress carries into the next
  /// batch, so noise-free durations are exactly work / share.
  std::vector<CompletionEvent> tick(double now, double dt);

  /// Snapshot one container: perf is the mean of the last kPerfWindow batch
  /// durations, usage the time-averaged effective share since the previous
  /// snapshot. Returns nullopt until the first batch completes. Advances the
  /// usage-accounting mark.
  std::optional<QualitySnapshot> measure(ContainerId id, double now);

  /// Replace limits atomically for every plan entry. A plan referencing an
  /// unknown container is rejected whole (std::invalid_argument).
  void apply_plan(const LimitPlan& plan);

  /// One scheduled control pass: measure -> classify -> plan -> apply ->
  /// listener observation. Returns nullopt (and keeps the interval) when no
  /// container is measurable. Reschedules next_control_at either way.
  std::optional<StepReport> control_loop_step(double now);

  std::map<ContainerId, double> limits() const;
  std::map<ContainerId, double> shares() const;
  const ContainerState& state(ContainerId id) const;
  std::vector<ContainerId> container_ids() const;

 private:
  struct RunningContainer {
    ContainerState state;
    ModelProfile profile;
    double batch_progress = 0.0;    // core-seconds into the current batch
    double batch_started_at = 0.0;
    double batch_work = 0.0;        // effective work of the in-flight batch
    std::deque<BatchRecord> recent; // last kPerfWindow completions
    std::size_t completed = 0;
    double cpu_total = 0.0;         // integral of effective share over time
    double mark_time = 0.0;
    double mark_cpu = 0.0;
    Rng noise;

    RunningContainer(ContainerSpec spec, double now, std::uint64_t noise_seed);
    double draw_batch_work();
  };

  RunningContainer& find(ContainerId id);
  const RunningContainer& find(ContainerId id) const;

  int id_;
  ControllerParams params_;
  ControllerKind kind_;
  ListenerState listener_;
  double next_control_at_;
  std::uint64_t noise_seed_base_;
  std::vector<RunningContainer> containers_;  // submission order
};

}  // namespace dqoes
