#include <dqoes/baseline.hpp>

namespace dqoes {

LimitPlan even_share_step(const WorkerSnapshot& worker) {
  LimitPlan plan;
  plan.worker_id = worker.worker_id;
  plan.created_at = worker.time;
  if (worker.limits.empty()) return plan;
  const double share = worker.params.total_capacity / static_cast<double>(worker.limits.size());
  for (const auto& [id, _] : worker.limits) plan.entries.emplace(id, share);
  return plan;
}

}  // namespace dqoes
