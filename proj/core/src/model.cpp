#include <dqoes/model.hpp>

#include <stdexcept>

namespace dqoes {

char class_letter(ServiceClass cls) {
  switch (cls) {
    case ServiceClass::Outperform: return 'G';
    case ServiceClass::Satisfied: return 'S';
    case ServiceClass::Underperform: return 'B';
  }
  return '?';
}

void ControllerParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("controller: alpha must be in (0, 1)");
  if (!(beta > 0.0 && beta <= 1.0))
    throw std::invalid_argument("controller: beta must be in (0, 1]");
  if (!(total_capacity > 0.0))
    throw std::invalid_argument("controller: total_capacity must be positive");
}

double ControllerParams::floor_limit(std::size_t container_count) const {
  if (container_count == 0)
    throw std::invalid_argument("floor_limit: container count is zero");
  return total_capacity / (2.0 * static_cast<double>(container_count));
}

double quality(double objective, double perf) {
  if (!(objective > 0.0)) throw std::invalid_argument("quality: objective must be positive");
  if (!(perf > 0.0)) throw std::invalid_argument("quality: perf must be positive");
  return objective - perf;
}

double worker_quality(std::span<const QualitySnapshot> snapshots) {
  double sum = 0.0;
  for (const auto& snap : snapshots) sum += snap.quality;
  return sum;
}

}  // namespace dqoes
