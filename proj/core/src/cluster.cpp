#include <dqoes/cluster.hpp>

#include <dqoes/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dqoes {

void ObjectiveRegistry::add(ContainerId id, std::string model, double objective,
                            double submit_time) {
  if (!(objective > 0.0))
    throw std::invalid_argument("registry: objective must be positive for container " +
                                std::to_string(id));
  auto [_, inserted] = entries_.emplace(id, Entry{std::move(model), objective, submit_time});
  if (!inserted)
    throw std::invalid_argument("registry: duplicate container id " + std::to_string(id));
}

const ObjectiveRegistry::Entry& ObjectiveRegistry::at(ContainerId id) const {
  auto it = entries_.find(id);
  if (it == entries_.end())
    throw std::invalid_argument("registry: unknown container id " + std::to_string(id));
  return it->second;
}

std::size_t place(std::span<const std::size_t> counts) {
  if (counts.empty()) throw std::invalid_argument("place: no workers registered");
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i)
    if (counts[i] < counts[best]) best = i;
  return best;
}

void ClusterSummary::collect(const StepReport& report) {
  auto& steps = by_worker_[report.worker_id];
  if (!steps.empty() && report.time < steps.back().time)
    throw std::invalid_argument("summary: out-of-order report for worker " +
                                std::to_string(report.worker_id));
  steps.push_back(report);
}

std::vector<int> ClusterSummary::worker_ids() const {
  std::vector<int> ids;
  ids.reserve(by_worker_.size());
  for (const auto& [id, _] : by_worker_) ids.push_back(id);
  return ids;
}

const std::vector<StepReport>& ClusterSummary::reports(int worker_id) const {
  auto it = by_worker_.find(worker_id);
  if (it == by_worker_.end())
    throw std::invalid_argument("summary: no reports for worker " + std::to_string(worker_id));
  return it->second;
}

WorkerCensus ClusterSummary::census_at(int worker_id, double time) const {
  const auto& steps = reports(worker_id);
  WorkerCensus census;
  const StepReport* latest = nullptr;
  for (const auto& step : steps) {
    if (step.time > time) break;
    latest = &step;
  }
  if (latest == nullptr) return census;
  for (const auto& row : latest->rows) {
    switch (row.cls) {
      case ServiceClass::Outperform: ++census.outperform; break;
      case ServiceClass::Satisfied: ++census.satisfied; break;
      case ServiceClass::Underperform: ++census.underperform; break;
    }
  }
  return census;
}

std::vector<std::pair<double, std::size_t>> ClusterSummary::satisfied_trajectory(
    int worker_id) const {
  std::vector<std::pair<double, std::size_t>> out;
  for (const auto& step : reports(worker_id)) out.emplace_back(step.time, step.satisfied);
  return out;
}

std::span<const StepReport> ClusterSummary::tail(int worker_id, double tail_fraction) const {
  const auto& steps = reports(worker_id);
  if (steps.empty()) return {};
  const auto take = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(static_cast<double>(steps.size()) * tail_fraction)));
  return std::span<const StepReport>(steps).last(std::min(take, steps.size()));
}

std::vector<ContainerId> ClusterSummary::steady_satisfied(int worker_id,
                                                          SteadyStateOptions opt) const {
  const auto window = tail(worker_id, opt.tail_fraction);
  std::map<ContainerId, std::size_t> in_s;
  for (const auto& step : window)
    for (const auto& row : step.rows)
      if (row.cls == ServiceClass::Satisfied) ++in_s[row.id];
  std::vector<ContainerId> satisfied;
  const double needed = opt.satisfied_fraction * static_cast<double>(window.size());
  for (const auto& [id, count] : in_s)
    if (static_cast<double>(count) >= needed) satisfied.push_back(id);
  return satisfied;
}

std::map<ContainerId, double> ClusterSummary::steady_mean_share(int worker_id,
                                                                SteadyStateOptions opt) const {
  const auto window = tail(worker_id, opt.tail_fraction);
  std::map<ContainerId, std::pair<double, std::size_t>> acc;
  for (const auto& step : window)
    for (const auto& row : step.rows) {
      auto& [sum, n] = acc[row.id];
      sum += row.share;
      ++n;
    }
  std::map<ContainerId, double> mean;
  for (const auto& [id, sn] : acc) mean.emplace(id, sn.first / static_cast<double>(sn.second));
  return mean;
}

double ClusterSummary::steady_mean_perf(int worker_id, SteadyStateOptions opt) const {
  const auto window = tail(worker_id, opt.tail_fraction);
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& step : window)
    for (const auto& row : step.rows) {
      sum += row.perf;
      ++n;
    }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

std::map<ContainerId, ServiceClass> ClusterSummary::steady_class(int worker_id,
                                                                 SteadyStateOptions opt) const {
  std::map<ContainerId, ServiceClass> cls;
  for (const auto& step : tail(worker_id, opt.tail_fraction))
    for (const auto& row : step.rows) cls[row.id] = row.cls;
  return cls;
}

double ClusterSummary::steady_quality_abs_sum(SteadyStateOptions opt) const {
  double sum = 0.0;
  for (const auto& [worker_id, _] : by_worker_)
    for (const auto& step : tail(worker_id, opt.tail_fraction))
      for (const auto& row : step.rows) sum += std::abs(row.quality);
  return sum;
}

double ClusterSummary::last_limit_change(int worker_id) const {
  double last = 0.0;
  for (const auto& step : reports(worker_id))
    if (step.limits_changed) last = step.time;
  return last;
}

std::uint64_t ClusterSummary::fingerprint() const {
  // One record per (worker, container): model and objective. Sorted map
  // iteration keeps the hash order-canonical.
  std::map<std::pair<int, ContainerId>, std::pair<std::string, double>> table;
  for (const auto& [worker_id, steps] : by_worker_)
    for (const auto& step : steps)
      for (const auto& row : step.rows)
        table.emplace(std::make_pair(worker_id, row.id), std::make_pair(row.model, row.objective));
  std::uint64_t hash = 0xcbf29ce484222325ull;
  char buf[128];
  for (const auto& [key, value] : table) {
    std::snprintf(buf, sizeof buf, "%d|%u|%s|%.4f;", key.first, key.second,
                  value.first.c_str(), value.second);
    hash = fnv1a(buf, hash);
  }
  return hash;
}

}  // namespace dqoes
