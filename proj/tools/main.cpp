#include <dqoes/report.hpp>
#include <dqoes/scenario.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

int run_command(const std::string& config_path, std::optional<std::uint64_t> seed,
                std::string out_dir) {
  dqoes::ScenarioConfig config = dqoes::load_config(config_path);
  if (seed) {
    config.seed = *seed;
    config.validate();
  }
  if (out_dir.empty()) out_dir = config.output.empty() ? "." : config.output;
  fs::create_directories(out_dir);

  const dqoes::ScenarioResult result = dqoes::run_scenario(config);

  const fs::path csv_path = fs::path(out_dir) / "run.csv";
  const fs::path summary_path = fs::path(out_dir) / "summary.json";
  dqoes::export_csv(result.reports, csv_path.string());
  dqoes::write_summary_json(result.summary, dqoes::config_fingerprint(config),
                            summary_path.string());

  std::cout << "wrote " << csv_path.string() << " (" << result.reports.size()
            << " control steps)\n";
  std::cout << "wrote " << summary_path.string() << "\n";
  for (int worker_id : result.summary.worker_ids()) {
    const auto satisfied = result.summary.steady_satisfied(worker_id);
    std::cout << "worker " << worker_id << ": steady satisfied " << satisfied.size() << "\n";
  }
  return kExitOk;
}

int compare_command(const std::string& csv_a, const std::string& csv_b) {
  const dqoes::ClusterSummary a = dqoes::read_csv(csv_a);
  const dqoes::ClusterSummary b = dqoes::read_csv(csv_b);
  const dqoes::ComparisonReport report = dqoes::compare(a, b);
  std::cout << report.to_text();
  return kExitOk;
}

int plot_command(const std::string& csv_path, const std::string& out_dir) {
  const dqoes::ClusterSummary summary = dqoes::read_csv(csv_path);
  const fs::path source(csv_path);
  const fs::path dir = out_dir.empty() ? source.parent_path() : fs::path(out_dir);
  if (!dir.empty()) fs::create_directories(dir);
  const std::string stem = source.stem().string();
  const fs::path quality_path = dir / (stem + "_quality.svg");
  const fs::path share_path = dir / (stem + "_shares.svg");
  dqoes::write_trajectory_svg(summary, dqoes::TrajectoryKind::Quality, quality_path.string());
  dqoes::write_trajectory_svg(summary, dqoes::TrajectoryKind::Share, share_path.string());
  std::cout << "wrote " << quality_path.string() << "\n";
  std::cout << "wrote " << share_path.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QoE-differentiated CPU-limit scheduling simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run a scenario config and export CSV + summary");
  run->add_option("config", config_path, "Scenario config (JSON)")->required();
  run->add_option("--seed", seed, "Override the config's seed");
  run->add_option("--out", out_dir, "Output directory");

  std::string csv_a, csv_b;
  auto* cmp = app.add_subcommand("compare", "Compare two runs of the same scenario");
  cmp->add_option("csv_a", csv_a, "First run CSV")->required();
  cmp->add_option("csv_b", csv_b, "Second run CSV")->required();

  std::string plot_csv, plot_out;
  auto* plot = app.add_subcommand("plot", "Render quality and share trajectories as SVG");
  plot->add_option("csv", plot_csv, "Run CSV")->required();
  plot->add_option("--out", plot_out, "Output directory (default: next to the CSV)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(config_path, seed, out_dir);
    if (cmp->parsed()) return compare_command(csv_a, csv_b);
    if (plot->parsed()) return plot_command(plot_csv, plot_out);
  } catch (const dqoes::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const dqoes::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
