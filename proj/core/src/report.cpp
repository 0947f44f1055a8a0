#include <dqoes/report.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace dqoes {

const char* const kCsvHeader =
    "time,worker_id,container_id,model,objective,perf,quality,class,limit,share";

namespace {

std::string fixed4(double value) {
  if (value == 0.0) value = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

ServiceClass class_from_letter(const std::string& letter) {
  if (letter == "G") return ServiceClass::Outperform;
  if (letter == "S") return ServiceClass::Satisfied;
  if (letter == "B") return ServiceClass::Underperform;
  throw ConfigError("csv: unknown class '" + letter + "'");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

void export_csv(std::span<const StepReport> reports, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& report : reports) {
    for (const auto& row : report.rows) {
      out << fixed4(report.time) << ',' << report.worker_id << ',' << row.id << ',' << row.model
          << ',' << fixed4(row.objective) << ',' << fixed4(row.perf) << ',' << fixed4(row.quality)
          << ',' << class_letter(row.cls) << ',' << fixed4(row.limit) << ',' << fixed4(row.share)
          << '\n';
    }
  }
}

void export_csv(std::span<const StepReport> reports, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  export_csv(reports, out);
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

ClusterSummary read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("csv: empty file '" + path + "'");
  if (line != kCsvHeader) throw ConfigError("csv: unexpected header in '" + path + "'");

  ClusterSummary summary;
  StepReport current;
  bool have_current = false;

  auto flush = [&] {
    if (!have_current) return;
    current.satisfied = 0;
    current.outperform_quality = 0.0;
    current.underperform_quality = 0.0;
    for (const auto& row : current.rows) {
      switch (row.cls) {
        case ServiceClass::Satisfied: ++current.satisfied; break;
        case ServiceClass::Outperform: current.outperform_quality += row.quality; break;
        case ServiceClass::Underperform: current.underperform_quality += row.quality; break;
      }
    }
    summary.collect(current);
    current = StepReport{};
  };

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 10)
      throw ConfigError("csv: line " + std::to_string(line_no) + ": expected 10 fields");
    try {
      const double time = std::stod(fields[0]);
      const int worker_id = std::stoi(fields[1]);
      ContainerRow row;
      row.id = static_cast<ContainerId>(std::stoul(fields[2]));
      row.model = fields[3];
      row.objective = std::stod(fields[4]);
      row.perf = std::stod(fields[5]);
      row.quality = std::stod(fields[6]);
      row.cls = class_from_letter(fields[7]);
      row.limit = std::stod(fields[8]);
      row.share = std::stod(fields[9]);
      if (!have_current || time != current.time || worker_id != current.worker_id) {
        flush();
        current.time = time;
        current.worker_id = worker_id;
        have_current = true;
      }
      current.rows.push_back(std::move(row));
    } catch (const std::invalid_argument&) {
      throw ConfigError("csv: line " + std::to_string(line_no) + ": malformed field");
    } catch (const std::out_of_range&) {
      throw ConfigError("csv: line " + std::to_string(line_no) + ": value out of range");
    }
  }
  flush();
  return summary;
}

std::string ComparisonReport::ratio_text() const {
  char buf[64];
  if (ratio) {
    std::snprintf(buf, sizeof buf, "%.2fx", *ratio);
  } else {
    std::snprintf(buf, sizeof buf, ">= %zux", total_a);
  }
  return buf;
}

std::string ComparisonReport::to_text() const {
  std::ostringstream out;
  out << "worker  satisfied_a  satisfied_b\n";
  for (std::size_t i = 0; i < worker_ids.size(); ++i)
    out << "  " << worker_ids[i] << "       " << satisfied_a[i] << "            " << satisfied_b[i]
        << "\n";
  out << "total   " << total_a << " vs " << total_b << "  (ratio " << ratio_text() << ")\n";
  out << "sum|q|  a=" << fixed4(quality_abs_a) << "  b=" << fixed4(quality_abs_b) << "\n";
  return out.str();
}

ComparisonReport compare(const ClusterSummary& a, const ClusterSummary& b) {
  if (a.fingerprint() != b.fingerprint())
    throw std::invalid_argument("compare: mismatched scenario fingerprints");
  ComparisonReport report;
  report.worker_ids = a.worker_ids();
  for (int worker_id : report.worker_ids) {
    report.satisfied_a.push_back(a.steady_satisfied(worker_id).size());
    report.satisfied_b.push_back(b.steady_satisfied(worker_id).size());
    report.total_a += report.satisfied_a.back();
    report.total_b += report.satisfied_b.back();
  }
  if (report.total_b > 0)
    report.ratio = static_cast<double>(report.total_a) / static_cast<double>(report.total_b);
  report.quality_abs_a = a.steady_quality_abs_sum();
  report.quality_abs_b = b.steady_quality_abs_sum();
  return report;
}

namespace {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

void write_svg(const std::vector<Series>& series, const std::string& y_label,
               const std::string& path) {
  const int width = 960, height = 540;
  const int margin_left = 60, margin_right = 150, margin_top = 20, margin_bottom = 40;
  const double plot_w = width - margin_left - margin_right;
  const double plot_h = height - margin_top - margin_bottom;

  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool first = true;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (first) {
        x_min = x_max = x;
        y_min = y_max = y;
        first = false;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  auto sx = [&](double x) { return margin_left + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return margin_top + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h; };
  auto coord = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes
  out << "<line x1=\"" << margin_left << "\" y1=\"" << margin_top + plot_h << "\" x2=\""
      << margin_left + plot_w << "\" y2=\"" << margin_top + plot_h
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << margin_left << "\" y1=\"" << margin_top << "\" x2=\"" << margin_left
      << "\" y2=\"" << margin_top + plot_h << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 5.0;
    const double yv = y_min + (y_max - y_min) * i / 5.0;
    out << "<text x=\"" << coord(sx(xv)) << "\" y=\"" << height - 15
        << "\" font-size=\"11\" text-anchor=\"middle\">" << coord(xv) << "</text>\n";
    out << "<text x=\"" << margin_left - 6 << "\" y=\"" << coord(sy(yv) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << coord(yv) << "</text>\n";
  }
  out << "<text x=\"" << margin_left + plot_w / 2 << "\" y=\"" << height - 2
      << "\" font-size=\"12\" text-anchor=\"middle\">time (s)</text>\n";
  out << "<text x=\"14\" y=\"" << margin_top + plot_h / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << margin_top + plot_h / 2 << ")\">" << y_label << "</text>\n";

  std::size_t idx = 0;
  for (const auto& s : series) {
    const int hue = static_cast<int>((idx * 360) / std::max<std::size_t>(1, series.size()));
    out << "<polyline fill=\"none\" stroke=\"hsl(" << hue
        << ",70%,45%)\" stroke-width=\"1.3\" points=\"";
    for (const auto& [x, y] : s.points) out << coord(sx(x)) << "," << coord(sy(y)) << " ";
    out << "\"/>\n";
    const double ly = margin_top + 14.0 * static_cast<double>(idx + 1);
    out << "<line x1=\"" << margin_left + plot_w + 8 << "\" y1=\"" << coord(ly - 4) << "\" x2=\""
        << margin_left + plot_w + 28 << "\" y2=\"" << coord(ly - 4) << "\" stroke=\"hsl(" << hue
        << ",70%,45%)\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << margin_left + plot_w + 32 << "\" y=\"" << coord(ly)
        << "\" font-size=\"11\">" << s.label << "</text>\n";
    ++idx;
  }
  out << "</svg>\n";
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace

void write_trajectory_svg(const ClusterSummary& summary, TrajectoryKind kind,
                          const std::string& path) {
  std::map<std::pair<int, ContainerId>, Series> by_container;
  for (int worker_id : summary.worker_ids()) {
    for (const auto& step : summary.reports(worker_id)) {
      for (const auto& row : step.rows) {
        auto& series = by_container[{worker_id, row.id}];
        if (series.label.empty())
          series.label = "w" + std::to_string(worker_id) + "/c" + std::to_string(row.id);
        const double value = kind == TrajectoryKind::Quality ? row.quality : row.share;
        series.points.emplace_back(step.time, value);
      }
    }
  }
  std::vector<Series> series;
  series.reserve(by_container.size());
  for (auto& [_, s] : by_container) series.push_back(std::move(s));
  write_svg(series, kind == TrajectoryKind::Quality ? "quality (s)" : "CPU share (cores)", path);
}

void write_summary_json(const ClusterSummary& summary, std::uint64_t config_hash,
                        const std::string& path) {
  nlohmann::json doc;
  doc["config_fingerprint"] = config_hash;
  doc["placement_fingerprint"] = summary.fingerprint();
  nlohmann::json workers = nlohmann::json::array();
  for (int worker_id : summary.worker_ids()) {
    nlohmann::json w;
    w["worker_id"] = worker_id;
    w["steady_satisfied"] = summary.steady_satisfied(worker_id);
    const auto& steps = summary.reports(worker_id);
    if (!steps.empty()) {
      const auto census = summary.census_at(worker_id, steps.back().time);
      w["final_census"] = {{"outperform", census.outperform},
                           {"satisfied", census.satisfied},
                           {"underperform", census.underperform}};
    }
    nlohmann::json trajectory = nlohmann::json::array();
    for (const auto& [time, satisfied] : summary.satisfied_trajectory(worker_id))
      trajectory.push_back({{"time", time}, {"satisfied", satisfied}});
    w["satisfied_trajectory"] = trajectory;
    workers.push_back(std::move(w));
  }
  doc["workers"] = workers;
  doc["steady_quality_abs_sum"] = summary.steady_quality_abs_sum();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << doc.dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace dqoes
