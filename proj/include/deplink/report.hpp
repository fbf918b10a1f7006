#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "deplink/eval.hpp"

namespace deplink {

struct ReportRow {
  std::string key;  // "train-test" or "windowStart-windowEnd" version pair
  EvalReport metrics;
  std::vector<PrPoint> curve;  // optional; empty when only metrics are known
};

/// Serializable outcome of one run: which approach produced it, which
/// versions were involved, the resolved configuration, and one metrics row
/// per evaluated version pair.
struct RunReport {
  std::string approach;
  std::string mode;  // dataset mode, or "" where it does not apply
  std::vector<std::string> versions;
  nlohmann::ordered_json config;  // resolved run configuration
  std::vector<ReportRow> rows;
};

nlohmann::ordered_json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::ordered_json& doc);

/// Writes report.json plus a `threshold,recall,precision` CSV per row that
/// carries a curve (pr_curve.csv for a single row, pr_curve_<key>.csv each
/// otherwise). Throws std::invalid_argument when provenance is missing.
void write_report(const RunReport& report, const std::filesystem::path& out_dir);

RunReport read_report(const std::filesystem::path& report_json_path);

/// Concatenates the rows of several reports (provenance must agree on
/// nothing; each row remembers nothing of its origin beyond the key, so the
/// merged provenance lists the source approaches).
RunReport merge_reports(const std::vector<RunReport>& reports);

}  // namespace deplink
