#pragma once

#include <dqoes/cluster.hpp>
#include <dqoes/scenario.hpp>

#include <iosfwd>
#include <optional>

namespace dqoes {

/// CSV header, exactly as written:
/// time,worker_id,container_id,model,objective,perf,quality,class,limit,share
extern const char* const kCsvHeader;

/// One row per (control step x container), floats at 4 decimal places,
/// ordered by (time, worker_id, container_id). Byte-deterministic.
void export_csv(std::span<const StepReport> reports, std::ostream& out);

/// Same, to a file. Throws IoError on failure.
void export_csv(std::span<const StepReport> reports, const std::string& path);

/// Rebuild a summary from an exported CSV. Throws IoError / ConfigError.
ClusterSummary read_csv(const std::string& path);

struct ComparisonReport {
  std::vector<int> worker_ids;
  std::vector<std::size_t> satisfied_a;  // per worker, steady state
  std::vector<std::size_t> satisfied_b;
  std::size_t total_a = 0;
  std::size_t total_b = 0;
  std::optional<double> ratio;  // empty when total_b == 0
  double quality_abs_a = 0.0;   // sum |q| over steady tail
  double quality_abs_b = 0.0;

  std::string ratio_text() const;  // "3.20x" or ">= 16x" when b is zero
  std::string to_text() const;
};

/// Steady-state comparison of two runs of the same scenario (same placement
/// fingerprint; typically the controllers differ). Throws std::invalid_argument
/// on mismatched fingerprints.
ComparisonReport compare(const ClusterSummary& a, const ClusterSummary& b);

enum class TrajectoryKind { Quality, Share };

/// Per-container trajectory chart (one polyline per container) as a
/// standalone SVG file. Throws IoError on write failure.
void write_trajectory_svg(const ClusterSummary& summary, TrajectoryKind kind,
                          const std::string& path);

/// Machine-readable run summary (per-worker steady state, |S| trajectory,
/// fingerprints) as JSON. Throws IoError on write failure.
void write_summary_json(const ClusterSummary& summary, std::uint64_t config_hash,
                        const std::string& path);

}  // namespace dqoes
