#include "deplink/report.hpp"

#include <nlohmann/json.hpp>

#include <set>
#include <sstream>
#include <stdexcept>

#include "deplink/io.hpp"

namespace deplink {

using nlohmann::ordered_json;

namespace {

void validate(const RunReport& report) {
  if (report.approach.empty()) {
    throw std::invalid_argument("report provenance must name the approach");
  }
  if (report.versions.empty()) {
    throw std::invalid_argument("report provenance must name the versions involved");
  }
}

ordered_json row_to_json(const ReportRow& row) {
  ordered_json j;
  j["key"] = row.key;
  j["positive_aupr"] = row.metrics.positive_aupr;
  j["negative_aupr"] = row.metrics.negative_aupr;
  j["weighted_aupr"] = row.metrics.weighted_aupr;
  if (row.metrics.precision_at_n) j["precision_at_n"] = *row.metrics.precision_at_n;
  j["confusion"] = {{"tp", row.metrics.confusion.tp},
                    {"fp", row.metrics.confusion.fp},
                    {"tn", row.metrics.confusion.tn},
                    {"fn", row.metrics.confusion.fn}};
  j["class_counts"] = {{"positive", row.metrics.positives},
                       {"negative", row.metrics.negatives}};
  return j;
}

ReportRow row_from_json(const ordered_json& j) {
  ReportRow row;
  row.key = j.at("key").get<std::string>();
  row.metrics.positive_aupr = j.at("positive_aupr").get<double>();
  row.metrics.negative_aupr = j.at("negative_aupr").get<double>();
  row.metrics.weighted_aupr = j.at("weighted_aupr").get<double>();
  if (j.contains("precision_at_n")) {
    row.metrics.precision_at_n = j.at("precision_at_n").get<double>();
  }
  const auto& c = j.at("confusion");
  row.metrics.confusion = {c.at("tp").get<long>(), c.at("fp").get<long>(),
                           c.at("tn").get<long>(), c.at("fn").get<long>()};
  row.metrics.positives = j.at("class_counts").at("positive").get<long>();
  row.metrics.negatives = j.at("class_counts").at("negative").get<long>();
  return row;
}

}  // namespace

ordered_json report_to_json(const RunReport& report) {
  validate(report);
  ordered_json doc;
  doc["schema_version"] = 1;
  ordered_json provenance;
  provenance["approach"] = report.approach;
  if (!report.mode.empty()) provenance["mode"] = report.mode;
  provenance["versions"] = report.versions;
  if (!report.config.is_null()) provenance["config"] = report.config;
  doc["provenance"] = std::move(provenance);
  doc["rows"] = ordered_json::array();
  for (const auto& row : report.rows) doc["rows"].push_back(row_to_json(row));
  return doc;
}

RunReport report_from_json(const ordered_json& doc) {
  RunReport report;
  const auto& provenance = doc.at("provenance");
  report.approach = provenance.at("approach").get<std::string>();
  report.mode = provenance.value("mode", std::string());
  report.versions = provenance.at("versions").get<std::vector<std::string>>();
  if (provenance.contains("config")) report.config = provenance.at("config");
  for (const auto& row : doc.at("rows")) report.rows.push_back(row_from_json(row));
  return report;
}

void write_report(const RunReport& report, const std::filesystem::path& out_dir) {
  validate(report);
  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir / "report.json", report_to_json(report).dump(2) + "\n");

  int curves = 0;
  for (const auto& row : report.rows) curves += !row.curve.empty();
  for (const auto& row : report.rows) {
    if (row.curve.empty()) continue;
    std::ostringstream csv;
    csv << "threshold,recall,precision\n";
    csv.precision(17);
    for (const auto& p : row.curve) {
      csv << p.threshold << ',' << p.recall << ',' << p.precision << '\n';
    }
    const std::string name = curves == 1 ? "pr_curve.csv" : "pr_curve_" + row.key + ".csv";
    write_text_file(out_dir / name, csv.str());
  }
}

RunReport read_report(const std::filesystem::path& report_json_path) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(read_text_file(report_json_path));
  } catch (const ordered_json::parse_error& e) {
    throw ParseError("report " + report_json_path.string() + ": " + e.what());
  }
  return report_from_json(doc);
}

RunReport merge_reports(const std::vector<RunReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("nothing to merge");
  RunReport merged;
  merged.approach = "merge";
  std::set<std::string> versions;
  ordered_json sources = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json entry;
    entry["approach"] = r.approach;
    if (!r.mode.empty()) entry["mode"] = r.mode;
    if (!r.config.is_null()) entry["config"] = r.config;
    sources.push_back(std::move(entry));
    versions.insert(r.versions.begin(), r.versions.end());
    for (const auto& row : r.rows) merged.rows.push_back(row);
  }
  merged.versions.assign(versions.begin(), versions.end());
  merged.config = ordered_json{{"sources", std::move(sources)}};
  return merged;
}

}  // namespace deplink
