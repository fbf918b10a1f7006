#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "deplink/io.hpp"

namespace deplink {

using nlohmann::json;
using nlohmann::ordered_json;

VersionSeries load_manifest(const std::filesystem::path& manifest_path) {
  json doc;
  try {
    doc = json::parse(read_text_file(manifest_path));
  } catch (const json::parse_error& e) {
    throw ParseError("manifest " + manifest_path.string() + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw ParseError("manifest " + manifest_path.string() + ": expected a JSON array");
  }

  const auto base = manifest_path.parent_path();
  std::vector<VersionSnapshot> snapshots;
  snapshots.reserve(doc.size());
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("label") || !entry.contains("path")) {
      throw ParseError("manifest entry needs at least 'label' and 'path' fields");
    }
    VersionSnapshot snap;
    snap.label = entry.at("label").get<std::string>();
    const std::string format = entry.value("format", std::string("edgelist"));
    snap.graph = load_graph_file(base / entry.at("path").get<std::string>(), format);
    if (entry.contains("class_count")) {
      const int c = entry.at("class_count").get<int>();
      if (c < 0) throw ParseError("class_count must be non-negative");
      snap.class_count = c;
    }
    snapshots.push_back(std::move(snap));
  }
  return VersionSeries(std::move(snapshots));
}

void write_series(const VersionSeries& series, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  ordered_json manifest = ordered_json::array();
  for (const auto& snap : series.snapshots()) {
    const std::string filename = snap.label + ".deps";
    write_text_file(directory / filename, to_edge_list(snap.graph));
    ordered_json entry;
    entry["label"] = snap.label;
    entry["path"] = filename;
    entry["format"] = "edgelist";
    if (snap.class_count) entry["class_count"] = *snap.class_count;
    manifest.push_back(std::move(entry));
  }
  write_text_file(directory / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace deplink
