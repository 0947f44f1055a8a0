#pragma once

#include <dqoes/controller.hpp>

namespace dqoes {

/// Even-share policy: every container's limit set to T_R / |C|.
/// Ignores objectives entirely. Empty worker -> empty plan.
LimitPlan even_share_step(const WorkerSnapshot& worker);

}  // namespace dqoes
