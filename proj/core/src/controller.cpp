#include <dqoes/controller.hpp>

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace dqoes {

ServiceClass classify(double quality, double objective, double alpha) {
  if (!(objective > 0.0)) throw std::invalid_argument("classify: objective must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("classify: alpha must be in (0, 1)");
  const double band = alpha * objective;
  if (quality > band) return ServiceClass::Outperform;
  if (quality < -band) return ServiceClass::Underperform;
  return ServiceClass::Satisfied;
}

ClassAggregates aggregate(std::span<const QualitySnapshot> snapshots,
                          const std::map<ContainerId, double>& objectives,
                          double alpha) {
  ClassAggregates agg;
  for (const auto& snap : snapshots) {
    auto it = objectives.find(snap.container_id);
    if (it == objectives.end())
      throw std::invalid_argument("aggregate: no objective for container " +
                                  std::to_string(snap.container_id));
    switch (classify(snap.quality, it->second, alpha)) {
      case ServiceClass::Outperform:
        agg.outperform_ids.push_back(snap.container_id);
        agg.outperform_quality += snap.quality;
        agg.outperform_usage += snap.usage;
        break;
      case ServiceClass::Underperform:
        agg.underperform_ids.push_back(snap.container_id);
        agg.underperform_quality += snap.quality;
        agg.underperform_usage += snap.usage;
        break;
      case ServiceClass::Satisfied:
        agg.satisfied_ids.push_back(snap.container_id);
        break;
    }
  }
  return agg;
}

LimitPlan plan_limits(const std::map<ContainerId, double>& current_limits,
                      std::span<const QualitySnapshot> snapshots,
                      const ClassAggregates& aggregates,
                      const ControllerParams& params,
                      std::size_t container_count,
                      int worker_id, double now) {
  params.validate();
  if (aggregates.outperform_ids.size() + aggregates.satisfied_ids.size() +
          aggregates.underperform_ids.size() != snapshots.size())
    throw std::invalid_argument("plan_limits: aggregates do not cover the snapshot set");

  // Q_G > 0 whenever G is nonempty (every member has q > alpha*o > 0);
  // symmetrically Q_B < 0 for nonempty B.
  assert(aggregates.outperform_ids.empty() || aggregates.outperform_quality > 0.0);
  assert(aggregates.underperform_ids.empty() || aggregates.underperform_quality < 0.0);

  LimitPlan plan;
  plan.worker_id = worker_id;
  plan.created_at = now;

  const double capacity = params.total_capacity;
  const double usage_fraction = aggregates.outperform_usage / capacity;  // R_G / T_R
  const double floor = params.floor_limit(container_count);

  for (const auto& snap : snapshots) {
    auto lim = current_limits.find(snap.container_id);
    if (lim == current_limits.end())
      throw std::invalid_argument("plan_limits: no current limit for container " +
                                  std::to_string(snap.container_id));
    const bool good = std::find(aggregates.outperform_ids.begin(), aggregates.outperform_ids.end(),
                                snap.container_id) != aggregates.outperform_ids.end();
    const bool bad = !good && std::find(aggregates.underperform_ids.begin(),
                                        aggregates.underperform_ids.end(),
                                        snap.container_id) != aggregates.underperform_ids.end();
    if (good) {
      double next = lim->second *
                    (1.0 - (snap.quality / aggregates.outperform_quality) * usage_fraction * params.beta);
      next = std::max(next, floor);
      plan.entries.emplace(snap.container_id, next);
    } else if (bad) {
      // The increase is funded by what G released, hence R_G here as well.
      double next = lim->second *
                    (1.0 + (snap.quality / aggregates.underperform_quality) * usage_fraction * params.beta);
      next = std::min(next, capacity);
      plan.entries.emplace(snap.container_id, next);
    }
    // Satisfied containers keep their limits and stay out of the plan.
  }
  return plan;
}

LimitPlan control_step(const WorkerSnapshot& worker) {
  const ClassAggregates agg = aggregate(worker.snapshots, worker.objectives, worker.params.alpha);
  return plan_limits(worker.limits, worker.snapshots, agg, worker.params,
                     worker.container_count, worker.worker_id, worker.time);
}

}  // namespace dqoes
