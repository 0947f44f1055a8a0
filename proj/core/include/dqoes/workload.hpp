#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dqoes {

/// Synthetic inference model: `work` CPU-core-seconds per 100-image batch.
struct ModelProfile {
  std::string name;
  double work = 0.0;           // core-seconds per batch
  double noise_sigma = 0.011;  // relative jitter bound, 0 <= sigma < 0.2

  void validate() const;  // throws std::invalid_argument
};

/// Batch duration at a fixed CPU share: (work / share) * (1 + noise_draw).
/// Share must be positive; |noise_draw| is expected within noise_sigma.
double batch_time(const ModelProfile& profile, double cpu_share, double noise_draw);

/// The five built-in profiles. ResNet-50's work coefficient is calibrated so
/// ten containers on an even 0.8-core share deliver 31.61 s batches; the
/// others are fixed constants reflecting relative CPU cost.
const std::vector<ModelProfile>& standard_profiles();

/// Look up a standard profile by name; throws std::invalid_argument if absent.
const ModelProfile& standard_profile(const std::string& name);

struct SubmissionSchedule {
  enum class Kind { Burst, Fixed, Random };
  Kind kind = Kind::Burst;
  std::size_t count = 1;
  double gap = 0.0;           // Fixed: seconds between launches
  double window_begin = 0.0;  // Random: earliest launch
  double window_end = 0.0;    // Random: latest launch
  std::uint64_t seed = 0;     // Random: generator seed

  void validate() const;  // throws std::invalid_argument
};

/// (container_index, submit_time) pairs, non-decreasing in time.
/// Burst -> all zero. Fixed -> 0, gap, 2*gap, ... Random -> sorted uniform
/// draws from the window, deterministic per seed.
std::vector<std::pair<std::size_t, double>> make_schedule(const SubmissionSchedule& schedule);

}  // namespace dqoes
