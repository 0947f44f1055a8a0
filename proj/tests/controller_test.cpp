#include <dqoes/baseline.hpp>
#include <dqoes/controller.hpp>
#include <dqoes/rng.hpp>

#include <doctest.h>

#include <stdexcept>

#include "alg1_reference.hpp"

#include <algorithm>
#include <cmath>

using namespace dqoes;

namespace {

QualitySnapshot snap(ContainerId id, double objective, double perf, double usage) {
  QualitySnapshot s;
  s.container_id = id;
  s.usage = usage;
  s.perf = perf;
  s.quality = objective - perf;
  return s;
}

WorkerSnapshot random_worker(Rng& rng) {
  WorkerSnapshot w;
  w.worker_id = 1;
  w.params = {0.1, 0.1, 8.0};
  const std::size_t n = 1 + static_cast<std::size_t>(rng.below(10));
  w.container_count = n;
  const double floor = w.params.floor_limit(n);
  double usage_total = 0.0;
  for (ContainerId id = 1; id <= n; ++id) {
    const double objective = rng.uniform(5.0, 95.0);
    const double perf = rng.uniform(5.0, 120.0);
    const double limit = rng.uniform(floor, 8.0);
    const double usage = rng.uniform(0.01, limit);
    w.objectives[id] = objective;
    w.limits[id] = limit;
    w.snapshots.push_back(snap(id, objective, perf, usage));
    usage_total += usage;
  }
  // Usages above capacity cannot occur in the runtime; rescale like
  // contention would.
  if (usage_total > w.params.total_capacity) {
    const double scale = w.params.total_capacity / usage_total;
    for (auto& s : w.snapshots) s.usage *= scale;
  }
  return w;
}

}  // namespace

TEST_CASE("classify thresholds at alpha times the objective") {
  CHECK(classify(-1.12, 35.0, 0.1) == ServiceClass::Satisfied);
  CHECK(classify(-7.57, 40.0, 0.1) == ServiceClass::Underperform);
  CHECK(classify(-11.61, 20.0, 0.1) == ServiceClass::Underperform);
  CHECK(classify(10.0, 40.0, 0.1) == ServiceClass::Outperform);
  // boundary equality stays Satisfied on both sides
  CHECK(classify(0.1 * 40.0, 40.0, 0.1) == ServiceClass::Satisfied);
  CHECK(classify(-0.1 * 40.0, 40.0, 0.1) == ServiceClass::Satisfied);
}

TEST_CASE("classify rejects invalid arguments") {
  CHECK_THROWS_AS(classify(0.0, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(classify(0.0, 10.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(classify(0.0, 10.0, 1.0), std::invalid_argument);
}

TEST_CASE("aggregate sums per class") {
  std::vector<QualitySnapshot> snaps{snap(1, 40.0, 30.0, 0.2), snap(2, 40.0, 50.0, 0.3)};
  std::map<ContainerId, double> objectives{{1, 40.0}, {2, 40.0}};
  const auto agg = aggregate(snaps, objectives, 0.1);
  CHECK(agg.outperform_quality == doctest::Approx(10.0));
  CHECK(agg.outperform_usage == doctest::Approx(0.2));
  CHECK(agg.underperform_quality == doctest::Approx(-10.0));
  CHECK(agg.underperform_usage == doctest::Approx(0.3));
  CHECK(agg.satisfied_count() == 0);
}

TEST_CASE("aggregate of in-band containers is all satisfied") {
  std::vector<QualitySnapshot> snaps{snap(1, 40.0, 39.0, 0.5), snap(2, 50.0, 52.0, 0.5)};
  std::map<ContainerId, double> objectives{{1, 40.0}, {2, 50.0}};
  const auto agg = aggregate(snaps, objectives, 0.1);
  CHECK(agg.outperform_quality == 0.0);
  CHECK(agg.underperform_quality == 0.0);
  CHECK(agg.satisfied_count() == 2);
}

TEST_CASE("aggregate of nothing is all zeros") {
  const auto agg = aggregate({}, {}, 0.1);
  CHECK(agg.outperform_quality == 0.0);
  CHECK(agg.underperform_quality == 0.0);
  CHECK(agg.outperform_usage == 0.0);
  CHECK(agg.underperform_usage == 0.0);
  CHECK(agg.satisfied_count() == 0);
}

TEST_CASE("aggregate demands an objective per container") {
  std::vector<QualitySnapshot> snaps{snap(7, 40.0, 30.0, 0.2)};
  CHECK_THROWS_AS(aggregate(snaps, {}, 0.1), std::invalid_argument);
}

TEST_CASE("plan_limits evaluates the multiplicative updates") {
  // One outperformer with the whole Q_G, one underperformer with the whole
  // Q_B, R_G at half capacity.
  ControllerParams params{0.1, 0.1, 8.0};
  std::vector<QualitySnapshot> snaps{snap(1, 10.0, 5.0, 4.0), snap(2, 10.0, 30.0, 1.0)};
  std::map<ContainerId, double> objectives{{1, 10.0}, {2, 10.0}};
  std::map<ContainerId, double> limits{{1, 6.4}, {2, 3.2}};
  const auto agg = aggregate(snaps, objectives, 0.1);
  const auto plan = plan_limits(limits, snaps, agg, params, 2, 1, 0.0);
  // G: 0.8*T_R * (1 - 1 * 0.5 * 0.1) = 0.76*T_R
  CHECK(plan.entries.at(1) == doctest::Approx(6.08));
  // B: 0.4*T_R * (1 + 1 * 0.5 * 0.1) = 0.42*T_R
  CHECK(plan.entries.at(2) == doctest::Approx(3.36));
}

TEST_CASE("plan_limits clamps to the per-container floor") {
  ControllerParams params{0.1, 0.1, 8.0};
  // 10 containers on the worker, one measured, in G, with a limit so low the
  // update would cross the floor 0.05*T_R.
  std::vector<QualitySnapshot> snaps{snap(1, 10.0, 5.0, 3.2)};
  std::map<ContainerId, double> objectives{{1, 10.0}};
  std::map<ContainerId, double> limits{{1, 0.25}};
  const auto agg = aggregate(snaps, objectives, 0.1);
  const auto plan = plan_limits(limits, snaps, agg, params, 10, 1, 0.0);
  // raw: 0.25 * (1 - 1 * 0.4 * 0.1) = 0.24 < 0.4 -> floor
  CHECK(plan.entries.at(1) == doctest::Approx(0.4));
}

TEST_CASE("plan_limits caps increases at capacity") {
  ControllerParams params{0.1, 0.5, 8.0};
  std::vector<QualitySnapshot> snaps{snap(1, 10.0, 5.0, 7.0), snap(2, 10.0, 90.0, 0.5)};
  std::map<ContainerId, double> objectives{{1, 10.0}, {2, 10.0}};
  std::map<ContainerId, double> limits{{1, 4.0}, {2, 7.5}};
  const auto agg = aggregate(snaps, objectives, 0.1);
  const auto plan = plan_limits(limits, snaps, agg, params, 2, 1, 0.0);
  CHECK(plan.entries.at(2) == doctest::Approx(8.0));
}

TEST_CASE("satisfied containers stay out of the plan") {
  ControllerParams params{0.1, 0.1, 8.0};
  std::vector<QualitySnapshot> snaps{snap(1, 40.0, 39.0, 0.8)};
  std::map<ContainerId, double> objectives{{1, 40.0}};
  std::map<ContainerId, double> limits{{1, 0.8}};
  const auto agg = aggregate(snaps, objectives, 0.1);
  const auto plan = plan_limits(limits, snaps, agg, params, 1, 1, 0.0);
  CHECK(plan.entries.empty());
}

TEST_CASE("control_step with all underperformers leaves limits alone") {
  // Identical unachievable objectives, equal limits: G empty means R_G = 0,
  // so the B updates are all factor-one.
  WorkerSnapshot w;
  w.worker_id = 1;
  w.params = {0.1, 0.1, 8.0};
  w.container_count = 10;
  for (ContainerId id = 1; id <= 10; ++id) {
    w.objectives[id] = 20.0;
    w.limits[id] = 0.8;
    w.snapshots.push_back(snap(id, 20.0, 31.61, 0.8));
  }
  const auto plan = control_step(w);
  for (const auto& [id, next] : plan.entries) CHECK(next == doctest::Approx(0.8));
}

TEST_CASE("control_step moves one G down and one B up") {
  WorkerSnapshot w;
  w.worker_id = 1;
  w.params = {0.1, 0.1, 8.0};
  w.container_count = 2;
  w.objectives = {{1, 40.0}, {2, 40.0}};
  w.limits = {{1, 4.0}, {2, 4.0}};
  w.snapshots = {snap(1, 40.0, 20.0, 4.0), snap(2, 40.0, 80.0, 4.0)};
  const auto plan = control_step(w);
  CHECK(plan.entries.at(1) < 4.0);
  CHECK(plan.entries.at(2) > 4.0);
}

TEST_CASE("control_step of an all-satisfied worker is an empty plan") {
  WorkerSnapshot w;
  w.worker_id = 1;
  w.params = {0.1, 0.1, 8.0};
  w.container_count = 3;
  for (ContainerId id = 1; id <= 3; ++id) {
    w.objectives[id] = 40.0;
    w.limits[id] = 2.0;
    w.snapshots.push_back(snap(id, 40.0, 41.0, 2.0));
  }
  CHECK(control_step(w).entries.empty());
}

TEST_CASE("control_step matches the reference implementation") {
  Rng rng(31337);
  for (int round = 0; round < 300; ++round) {
    const WorkerSnapshot w = random_worker(rng);
    const auto plan = control_step(w);
    const auto expected = dqoes_test::alg1_reference(w);
    REQUIRE(plan.entries.size() == expected.size());
    for (const auto& [id, limit] : expected) {
      REQUIRE(plan.entries.count(id) == 1);
      CHECK(std::abs(plan.entries.at(id) - limit) <= 1e-9 * std::max(1.0, std::abs(limit)));
    }
  }
}

TEST_CASE("planned limits stay within floor and capacity") {
  Rng rng(77);
  for (int round = 0; round < 300; ++round) {
    const WorkerSnapshot w = random_worker(rng);
    const auto plan = control_step(w);
    const double floor = w.params.floor_limit(w.container_count);
    for (const auto& [id, limit] : plan.entries) {
      CHECK(limit >= floor - 1e-12);
      CHECK(limit <= w.params.total_capacity + 1e-12);
    }
  }
}

TEST_CASE("classification partitions every worker") {
  Rng rng(88);
  for (int round = 0; round < 200; ++round) {
    const WorkerSnapshot w = random_worker(rng);
    const auto agg = aggregate(w.snapshots, w.objectives, w.params.alpha);
    CHECK(agg.outperform_ids.size() + agg.satisfied_ids.size() + agg.underperform_ids.size() ==
          w.snapshots.size());
    CHECK(agg.outperform_quality >= 0.0);
    CHECK(agg.underperform_quality <= 0.0);
  }
}

TEST_CASE("stronger outperformers are cut at least as hard") {
  // Within G, relative reduction is monotone in q_i.
  Rng rng(99);
  for (int round = 0; round < 200; ++round) {
    const WorkerSnapshot w = random_worker(rng);
    const auto agg = aggregate(w.snapshots, w.objectives, w.params.alpha);
    if (agg.outperform_ids.size() < 2) continue;
    const auto plan = control_step(w);
    std::map<ContainerId, double> q_of;
    for (const auto& s : w.snapshots) q_of[s.container_id] = s.quality;
    for (std::size_t i = 0; i < agg.outperform_ids.size(); ++i) {
      for (std::size_t j = 0; j < agg.outperform_ids.size(); ++j) {
        const ContainerId a = agg.outperform_ids[i], b = agg.outperform_ids[j];
        if (q_of[a] <= q_of[b]) continue;
        // reduction before clamping is proportional to q; the floor can only
        // soften the stronger cut, so compare raw factors
        const double factor_a = plan.entries.at(a) / w.limits.at(a);
        const double factor_b = plan.entries.at(b) / w.limits.at(b);
        CHECK(factor_a <= factor_b + 1e-9);
      }
    }
  }
}

TEST_CASE("no outperformers means no increases") {
  Rng rng(111);
  int seen = 0;
  for (int round = 0; round < 400 && seen < 50; ++round) {
    WorkerSnapshot w = random_worker(rng);
    // force G empty: every perf at least objective
    for (auto& s : w.snapshots) {
      const double objective = w.objectives[s.container_id];
      if (s.perf < objective) s.perf = objective + rng.uniform(0.0, 50.0);
      s.quality = objective - s.perf;
    }
    const auto agg = aggregate(w.snapshots, w.objectives, w.params.alpha);
    if (!agg.outperform_ids.empty()) continue;
    ++seen;
    const auto plan = control_step(w);
    for (const auto& [id, next] : plan.entries) CHECK(next <= w.limits.at(id) + 1e-12);
  }
  CHECK(seen > 0);
}

TEST_CASE("per-step change is bounded by beta before clamping") {
  Rng rng(222);
  for (int round = 0; round < 200; ++round) {
    const WorkerSnapshot w = random_worker(rng);
    const auto plan = control_step(w);
    const double floor = w.params.floor_limit(w.container_count);
    for (const auto& [id, next] : plan.entries) {
      const double previous = w.limits.at(id);
      if (next == floor || next == w.params.total_capacity) continue;  // clamped
      CHECK(next >= previous * (1.0 - w.params.beta) - 1e-12);
      CHECK(next <= previous * (1.0 + w.params.beta) + 1e-12);
    }
  }
}

TEST_CASE("even share sets every limit to capacity over count") {
  WorkerSnapshot w;
  w.worker_id = 3;
  w.params = {0.1, 0.1, 8.0};
  w.container_count = 10;
  for (ContainerId id = 1; id <= 10; ++id) w.limits[id] = 0.1 * id;
  const auto plan = even_share_step(w);
  CHECK(plan.entries.size() == 10);
  for (const auto& [_, limit] : plan.entries) CHECK(limit == doctest::Approx(0.8));

  WorkerSnapshot single;
  single.worker_id = 1;
  single.params = {0.1, 0.1, 8.0};
  single.container_count = 1;
  single.limits[1] = 2.0;
  CHECK(even_share_step(single).entries.at(1) == doctest::Approx(8.0));

  WorkerSnapshot empty;
  empty.params = {0.1, 0.1, 8.0};
  CHECK(even_share_step(empty).entries.empty());
}

TEST_CASE("even share recomputes when the count grows") {
  WorkerSnapshot w;
  w.params = {0.1, 0.1, 8.0};
  w.container_count = 9;
  for (ContainerId id = 1; id <= 9; ++id) w.limits[id] = 8.0 / 9.0;
  for (const auto& [_, limit] : even_share_step(w).entries)
    CHECK(limit == doctest::Approx(8.0 / 9.0));
  w.limits[10] = 0.8;
  w.container_count = 10;
  const auto plan = even_share_step(w);
  CHECK(plan.entries.size() == 10);
  for (const auto& [_, limit] : plan.entries) CHECK(limit == doctest::Approx(0.8));
}
