#include <dqoes/simulation.hpp>

#include <dqoes/rng.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqoes {

void SimulationSettings::validate() const {
  if (worker_count < 1) throw std::invalid_argument("simulation: worker_count must be >= 1");
  if (!(tick > 0.0)) throw std::invalid_argument("simulation: tick must be positive");
  ControllerParams{alpha, beta, total_capacity}.validate();
  listener.validate();
}

Simulation::Simulation(SimulationSettings settings) : settings_(settings) {
  settings_.validate();
  const ControllerParams params{settings_.alpha, settings_.beta, settings_.total_capacity};
  for (std::size_t i = 0; i < settings_.worker_count; ++i) {
    const int worker_id = static_cast<int>(i) + 1;
    workers_.push_back(std::make_unique<Worker>(
        worker_id, params, settings_.listener, settings_.controller,
        derive_seed(settings_.seed, "worker", static_cast<std::uint64_t>(worker_id))));
  }
}

ContainerId Simulation::schedule(const ModelProfile& profile, double objective,
                                 double submit_time) {
  profile.validate();
  if (submit_time < now_)
    throw std::invalid_argument("schedule: submit_time lies in the past");
  Arrival arrival{submit_time, next_id_++, profile, objective};
  auto pos = std::upper_bound(pending_.begin(), pending_.end(), arrival,
                              [](const Arrival& a, const Arrival& b) {
                                return std::tie(a.time, a.id) < std::tie(b.time, b.id);
                              });
  pending_.insert(pos, std::move(arrival));
  return next_id_ - 1;
}

ContainerId Simulation::inject(const ModelProfile& profile, double objective) {
  return schedule(profile, objective, now_);
}

Worker& Simulation::worker(int id) {
  if (id < 1 || static_cast<std::size_t>(id) > workers_.size())
    throw std::invalid_argument("simulation: no worker " + std::to_string(id));
  return *workers_[static_cast<std::size_t>(id) - 1];
}

const Worker& Simulation::worker(int id) const {
  return const_cast<Simulation*>(this)->worker(id);
}

void Simulation::place_due_arrivals(double now) {
  // Arrivals due at this tick are placed one by one (spread: fewest
  // containers, lowest index) but initialized per worker as one cohort.
  std::map<int, std::vector<ContainerSpec>> cohorts;
  std::size_t taken = 0;
  for (const auto& arrival : pending_) {
    if (arrival.time > now + 1e-9) break;
    std::vector<std::size_t> counts;
    counts.reserve(workers_.size());
    for (const auto& w : workers_) counts.push_back(w->container_count());
    for (const auto& [worker_id, cohort] : cohorts)
      counts[static_cast<std::size_t>(worker_id) - 1] += cohort.size();
    const int worker_id = static_cast<int>(place(counts)) + 1;
    cohorts[worker_id].push_back({arrival.id, arrival.profile, arrival.objective});
    registry_.add(arrival.id, arrival.profile.name, arrival.objective, now);
    ++taken;
  }
  pending_.erase(pending_.begin(), pending_.begin() + static_cast<std::ptrdiff_t>(taken));
  for (const auto& [worker_id, cohort] : cohorts)
    worker(worker_id).submit_batch(cohort, now);
}

void Simulation::run_until(double t) {
  const double dt = settings_.tick;
  while (now_ + dt <= t + 1e-9) {
    place_due_arrivals(now_);
    for (auto& w : workers_) w->tick(now_, dt);
    ++tick_index_;
    now_ = static_cast<double>(tick_index_) * dt;
    for (auto& w : workers_) {
      if (now_ + 1e-9 >= w->next_control_at()) {
        if (auto report = w->control_loop_step(now_)) {
          summary_.collect(*report);
          reports_.push_back(std::move(*report));
        }
      }
    }
  }
}

}  // namespace dqoes
