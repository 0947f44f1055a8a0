#include <dqoes/listener.hpp>

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace dqoes {

void ListenerConfig::validate() const {
  if (!(min_interval > 0.0)) throw std::invalid_argument("listener: min_interval must be positive");
  if (!(max_interval >= min_interval))
    throw std::invalid_argument("listener: max_interval must be >= min_interval");
  if (!(initial_interval >= min_interval && initial_interval <= max_interval))
    throw std::invalid_argument("listener: initial_interval must lie within [min, max]");
  if (streak_threshold < 1) throw std::invalid_argument("listener: streak_threshold must be >= 1");
}

ListenerState ListenerState::initial(const ListenerConfig& cfg) {
  cfg.validate();
  ListenerState state;
  state.config = cfg;
  state.interval = cfg.initial_interval;
  return state;
}

std::pair<ListenerState, ListenerDecision> observe(ListenerState state,
                                                   double outperform_quality,
                                                   double underperform_quality,
                                                   std::size_t satisfied) {
  assert(outperform_quality >= 0.0);
  assert(underperform_quality <= 0.0);

  const ListenerConfig& cfg = state.config;
  ListenerDecision decision;

  // Both sums approaching zero counts as converging; so does having reached
  // zero, which a strict comparison alone would treat as stagnation and
  // leave the interval stuck below IV_max at steady state.
  const bool converging = (outperform_quality < state.prev_outperform_quality &&
                           underperform_quality > state.prev_underperform_quality) ||
                          (outperform_quality == 0.0 && underperform_quality == 0.0);
  const bool regressed = satisfied < state.prev_satisfied;

  if (state.pending_trigger || (!converging && regressed)) {
    state.interval = std::max(state.interval / 2.0, cfg.min_interval);
    state.streak = 0;
    state.pending_trigger = false;
    decision.run_controller_now = true;
  } else if (converging) {
    ++state.streak;
    if (state.streak >= cfg.streak_threshold) {
      state.interval = std::min(state.interval * 2.0, cfg.max_interval);
      state.streak = 0;
    }
  } else {
    state.streak = 0;
  }

  state.prev_outperform_quality = outperform_quality;
  state.prev_underperform_quality = underperform_quality;
  state.prev_satisfied = satisfied;
  decision.new_interval = state.interval;
  return {state, decision};
}

}  // namespace dqoes
