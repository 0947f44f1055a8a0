#include <dqoes/rng.hpp>
#include <dqoes/workload.hpp>

#include <doctest.h>

#include <stdexcept>

#include <cmath>

using namespace dqoes;

TEST_CASE("batch_time reproduces the even-share calibration point") {
  ModelProfile resnet{"ResNet-50", 25.29, 0.011};
  CHECK(batch_time(resnet, 0.8, 0.0) == doctest::Approx(31.61).epsilon(1e-3));
  CHECK(batch_time(resnet, 0.8, 0.0) == doctest::Approx(31.6125));
}

TEST_CASE("batch_time halves when the share doubles") {
  ModelProfile profile{"m", 30.0, 0.0};
  const double slow = batch_time(profile, 0.5, 0.0);
  const double fast = batch_time(profile, 1.0, 0.0);
  CHECK(slow == doctest::Approx(2.0 * fast));
}

TEST_CASE("batch_time at the share that meets a 40s objective") {
  ModelProfile resnet{"ResNet-50", 25.29, 0.011};
  CHECK(batch_time(resnet, 0.632, 0.0) == doctest::Approx(40.015822784810126));
}

TEST_CASE("batch_time times share recovers the work") {
  Rng rng(5);
  ModelProfile profile{"m", 25.29, 0.0};
  for (int i = 0; i < 200; ++i) {
    const double share = rng.uniform(0.05, 8.0);
    CHECK(batch_time(profile, share, 0.0) * share == doctest::Approx(profile.work).epsilon(1e-12));
  }
}

TEST_CASE("batch_time rejects a non-positive share") {
  ModelProfile profile{"m", 30.0, 0.0};
  CHECK_THROWS_AS(batch_time(profile, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(batch_time(profile, -1.0, 0.0), std::invalid_argument);
}

TEST_CASE("profile validation") {
  CHECK_NOTHROW((ModelProfile{"ok", 20.0, 0.0}).validate());
  CHECK_THROWS_AS((ModelProfile{"", 20.0, 0.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((ModelProfile{"bad", 0.0, 0.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((ModelProfile{"bad", 20.0, 0.3}).validate(), std::invalid_argument);
}

TEST_CASE("standard profiles cover the tested model set") {
  const auto& profiles = standard_profiles();
  CHECK(profiles.size() == 5);
  CHECK(standard_profile("ResNet-50").work == doctest::Approx(25.29));
  for (const auto& p : profiles) {
    CHECK_NOTHROW(p.validate());
    if (p.name != "ResNet-50") {
      CHECK(p.work >= 15.0);
      CHECK(p.work <= 45.0);
    }
  }
  CHECK_THROWS_AS(standard_profile("AlexNet"), std::invalid_argument);
}

TEST_CASE("burst schedule launches everything at zero") {
  SubmissionSchedule schedule{SubmissionSchedule::Kind::Burst, 10};
  const auto entries = make_schedule(schedule);
  REQUIRE(entries.size() == 10);
  for (const auto& [index, time] : entries) CHECK(time == 0.0);
}

TEST_CASE("fixed schedule spaces launches by the gap") {
  SubmissionSchedule schedule;
  schedule.kind = SubmissionSchedule::Kind::Fixed;
  schedule.count = 10;
  schedule.gap = 50.0;
  const auto entries = make_schedule(schedule);
  REQUIRE(entries.size() == 10);
  for (std::size_t i = 0; i < entries.size(); ++i)
    CHECK(entries[i].second == doctest::Approx(50.0 * static_cast<double>(i)));
  CHECK(entries.back().second == doctest::Approx(450.0));
}

TEST_CASE("random schedule is sorted, in-window and deterministic") {
  SubmissionSchedule schedule;
  schedule.kind = SubmissionSchedule::Kind::Random;
  schedule.count = 25;
  schedule.window_begin = 0.0;
  schedule.window_end = 300.0;
  schedule.seed = 42;
  const auto a = make_schedule(schedule);
  const auto b = make_schedule(schedule);
  REQUIRE(a.size() == 25);
  CHECK(a == b);
  for (std::size_t i = 0; i + 1 < a.size(); ++i) CHECK(a[i].second <= a[i + 1].second);
  for (const auto& [_, time] : a) {
    CHECK(time >= 0.0);
    CHECK(time <= 300.0);
  }
  schedule.seed = 43;
  CHECK(make_schedule(schedule) != a);
}

TEST_CASE("schedule validation") {
  SubmissionSchedule zero{SubmissionSchedule::Kind::Burst, 0};
  CHECK_THROWS_AS(make_schedule(zero), std::invalid_argument);
  SubmissionSchedule bad_gap;
  bad_gap.kind = SubmissionSchedule::Kind::Fixed;
  bad_gap.count = 3;
  bad_gap.gap = 0.0;
  CHECK_THROWS_AS(make_schedule(bad_gap), std::invalid_argument);
  SubmissionSchedule bad_window;
  bad_window.kind = SubmissionSchedule::Kind::Random;
  bad_window.count = 3;
  bad_window.window_begin = 10.0;
  bad_window.window_end = 5.0;
  CHECK_THROWS_AS(make_schedule(bad_window), std::invalid_argument);
}

TEST_CASE("random schedule with a degenerate window launches at one instant") {
  SubmissionSchedule schedule;
  schedule.kind = SubmissionSchedule::Kind::Random;
  schedule.count = 5;
  schedule.window_begin = 120.0;
  schedule.window_end = 120.0;
  schedule.seed = 1;
  for (const auto& [_, time] : make_schedule(schedule)) CHECK(time == doctest::Approx(120.0));
}
