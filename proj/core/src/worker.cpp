#include <dqoes/worker.hpp>

#include <dqoes/baseline.hpp>

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace dqoes {

namespace {
constexpr double kLimitEpsilon = 1e-12;
}

std::map<ContainerId, double> effective_shares(const std::map<ContainerId, double>& limits,
                                               double total_capacity) {
  double total = 0.0;
  for (const auto& [_, limit] : limits) total += limit;
  std::map<ContainerId, double> shares;
  if (total <= total_capacity || limits.empty()) {
    shares = limits;
  } else {
    const double scale = total_capacity / total;
    for (const auto& [id, limit] : limits) shares.emplace(id, limit * scale);
  }
  return shares;
}

Worker::RunningContainer::RunningContainer(ContainerSpec spec, double now, std::uint64_t noise_seed)
    : profile(std::move(spec.profile)), noise(noise_seed) {
  state.id = spec.id;
  state.model = profile.name;
  state.objective = spec.objective;
  batch_started_at = now;
  mark_time = now;
  batch_work = draw_batch_work();
}

double Worker::RunningContainer::draw_batch_work() {
  if (profile.noise_sigma == 0.0) return profile.work;
  const double draw = noise.uniform(-profile.noise_sigma, profile.noise_sigma);
  return profile.work * (1.0 + draw);
}

Worker::Worker(int id, ControllerParams params, ListenerConfig listener_cfg,
               ControllerKind kind, std::uint64_t noise_seed_base)
    : id_(id),
      params_(params),
      kind_(kind),
      listener_(ListenerState::initial(listener_cfg)),
      next_control_at_(listener_cfg.initial_interval),
      noise_seed_base_(noise_seed_base) {
  params_.validate();
}

Worker::RunningContainer& Worker::find(ContainerId id) {
  for (auto& c : containers_)
    if (c.state.id == id) return c;
  throw std::invalid_argument("worker " + std::to_string(id_) + ": unknown container " +
                              std::to_string(id));
}

const Worker::RunningContainer& Worker::find(ContainerId id) const {
  return const_cast<Worker*>(this)->find(id);
}

void Worker::submit(const ContainerSpec& spec, double now) {
  submit_batch(std::span<const ContainerSpec>(&spec, 1), now);
}

void Worker::submit_batch(std::span<const ContainerSpec> specs, double now) {
  if (specs.empty()) return;
  for (const auto& spec : specs) {
    spec.profile.validate();
    if (!(spec.objective > 0.0))
      throw std::invalid_argument("submit: objective must be positive for container " +
                                  std::to_string(spec.id));
    for (const auto& existing : containers_)
      if (existing.state.id == spec.id)
        throw std::invalid_argument("submit: duplicate container id " + std::to_string(spec.id));
  }
  for (const auto& spec : specs)
    containers_.emplace_back(spec, now, derive_seed(noise_seed_base_, "noise", spec.id));
  // Arrivals in one cohort all start at an equal share of the new count.
  // The sum of limits may now exceed capacity; contention absorbs it.
  const double initial = params_.total_capacity / static_cast<double>(containers_.size());
  for (const auto& spec : specs) find(spec.id).state.limit = initial;
  listener_.pending_trigger = true;
}

std::vector<CompletionEvent> Worker::tick(double now, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("tick: dt must be positive");
  std::vector<CompletionEvent> events;
  const auto share_map = shares();
  for (auto& c : containers_) {
    const double share = share_map.at(c.state.id);
    c.cpu_total += share * dt;
    if (share <= 0.0) continue;
    // Resolve completions at exact instants inside the tick; leftover tick
    // time feeds the next batch so durations carry no grid bias.
    double cursor = now;
    double time_left = dt;
    while (true) {
      const double needed = (c.batch_work - c.batch_progress) / share;
      if (needed <= time_left + 1e-12) {
        cursor += needed;
        time_left -= needed;
        const double duration = cursor - c.batch_started_at;
        c.recent.push_back({cursor, duration});
        if (c.recent.size() > kPerfWindow) c.recent.pop_front();
        ++c.completed;
        events.push_back({c.state.id, cursor, duration});
        c.batch_started_at = cursor;
        c.batch_progress = 0.0;
        c.batch_work = c.draw_batch_work();
      } else {
        c.batch_progress += share * time_left;
        break;
      }
    }
  }
  return events;
}

std::optional<QualitySnapshot> Worker::measure(ContainerId id, double now) {
  RunningContainer& c = find(id);
  if (c.completed == 0) return std::nullopt;

  double sum = 0.0;
  for (const auto& rec : c.recent) sum += rec.duration;
  const double perf = sum / static_cast<double>(c.recent.size());

  const double elapsed = now - c.mark_time;
  double usage;
  if (elapsed > 0.0) {
    usage = (c.cpu_total - c.mark_cpu) / elapsed;
  } else {
    usage = shares().at(id);
  }
  c.mark_time = now;
  c.mark_cpu = c.cpu_total;

  QualitySnapshot snap;
  snap.container_id = id;
  snap.time = now;
  snap.usage = usage;
  snap.perf = perf;
  snap.quality = quality(c.state.objective, perf);
  c.state.perf = perf;
  c.state.usage = usage;
  return snap;
}

void Worker::apply_plan(const LimitPlan& plan) {
  if (plan.worker_id != id_)
    throw std::invalid_argument("apply_plan: plan for worker " + std::to_string(plan.worker_id) +
                                " applied to worker " + std::to_string(id_));
  // Validate the whole plan before touching anything.
  for (const auto& [cid, _] : plan.entries) find(cid);
  for (const auto& [cid, limit] : plan.entries) find(cid).state.limit = limit;
}

std::map<ContainerId, double> Worker::limits() const {
  std::map<ContainerId, double> out;
  for (const auto& c : containers_) out.emplace(c.state.id, c.state.limit);
  return out;
}

std::map<ContainerId, double> Worker::shares() const {
  return effective_shares(limits(), params_.total_capacity);
}

const ContainerState& Worker::state(ContainerId id) const { return find(id).state; }

std::vector<ContainerId> Worker::container_ids() const {
  std::vector<ContainerId> ids;
  ids.reserve(containers_.size());
  for (const auto& c : containers_) ids.push_back(c.state.id);
  return ids;
}

std::optional<StepReport> Worker::control_loop_step(double now) {
  WorkerSnapshot ws;
  ws.worker_id = id_;
  ws.time = now;
  ws.params = params_;
  ws.container_count = containers_.size();
  ws.limits = limits();
  for (auto& c : containers_) {
    if (auto snap = measure(c.state.id, now)) {
      ws.snapshots.push_back(*snap);
      ws.objectives.emplace(c.state.id, c.state.objective);
    }
  }
  if (ws.snapshots.empty()) {
    next_control_at_ = now + listener_.interval;
    return std::nullopt;
  }

  const ClassAggregates agg = aggregate(ws.snapshots, ws.objectives, params_.alpha);
  const LimitPlan plan = kind_ == ControllerKind::Dqoes
                             ? plan_limits(ws.limits, ws.snapshots, agg, params_,
                                           ws.container_count, id_, now)
                             : even_share_step(ws);

  bool changed = false;
  for (const auto& [cid, next] : plan.entries)
    if (std::abs(next - ws.limits.at(cid)) > kLimitEpsilon) changed = true;
  apply_plan(plan);

  auto [next_state, decision] =
      observe(listener_, agg.outperform_quality, agg.underperform_quality, agg.satisfied_count());
  listener_ = next_state;

  StepReport report;
  report.worker_id = id_;
  report.time = now;
  report.outperform_quality = agg.outperform_quality;
  report.underperform_quality = agg.underperform_quality;
  report.satisfied = agg.satisfied_count();
  report.interval_after = listener_.interval;
  report.limits_changed = changed;
  report.triggered = decision.run_controller_now;

  const auto post_shares = shares();
  for (const auto& snap : ws.snapshots) {
    const RunningContainer& c = find(snap.container_id);
    ContainerRow row;
    row.id = snap.container_id;
    row.model = c.profile.name;
    row.objective = c.state.objective;
    row.perf = snap.perf;
    row.quality = snap.quality;
    row.cls = classify(snap.quality, c.state.objective, params_.alpha);
    row.limit = c.state.limit;
    row.share = post_shares.at(snap.container_id);
    report.rows.push_back(std::move(row));
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const ContainerRow& a, const ContainerRow& b) { return a.id < b.id; });
  for (const auto& row : report.rows) find(row.id).state.cls = row.cls;

  next_control_at_ = now + listener_.interval;
  return report;
}

}  // namespace dqoes
