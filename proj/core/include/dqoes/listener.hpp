#pragma once

#include <cstddef>
#include <utility>

namespace dqoes {

struct ListenerConfig {
  double initial_interval = 10.0;  // IV_0, simulated seconds
  double min_interval = 5.0;       // IV_min
  double max_interval = 80.0;      // IV_max
  int streak_threshold = 2;        // consecutive converging observations before doubling

  void validate() const;  // throws std::invalid_argument
};

/// Adaptive control-period state for one worker.
struct ListenerState {
  ListenerConfig config;
  double interval = 10.0;
  int streak = 0;
  double prev_outperform_quality = 0.0;    // Q_G at the previous observation
  double prev_underperform_quality = 0.0;  // Q_B
  std::size_t prev_satisfied = 0;          // Q_S = |S|
  bool pending_trigger = false;            // set on container arrival

  static ListenerState initial(const ListenerConfig& cfg);
};

struct ListenerDecision {
  double new_interval = 0.0;
  bool run_controller_now = false;
};

/// One observation of (Q_G, Q_B, Q_S).
///
/// Converging (Q_G strictly decreased and Q_B strictly increased, or both
/// already at zero) grows a streak; at the threshold the interval doubles,
/// clamped to IV_max. A drop in |S| -- or a pending arrival trigger -- halves
/// the interval, clamped to IV_min, and demands an immediate controller run.
/// Anything else keeps the interval and resets the streak.
std::pair<ListenerState, ListenerDecision> observe(ListenerState state,
                                                   double outperform_quality,
                                                   double underperform_quality,
                                                   std::size_t satisfied);

}  // namespace dqoes
