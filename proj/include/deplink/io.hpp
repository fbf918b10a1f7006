#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "deplink/graph.hpp"

namespace deplink {

/// Input that cannot be parsed. The message names the offending location
/// (line number or element path) whenever one is known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message, int line = -1)
      : std::runtime_error(line >= 0 ? "line " + std::to_string(line) + ": " + message
                                     : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Edge-list text format: one `source<TAB>target` per line, `#` comments and
// blank lines ignored, optional `#nodes: a,b,c` header declaring (possibly
// isolated) modules.
DependencyGraph load_edge_list(std::string_view text);

// Canonical serialization; load_edge_list(to_edge_list(g)) == g.
std::string to_edge_list(const DependencyGraph& g);

/// Parses an ODEM dependency model into a package-level graph: one node per
/// namespace, one edge per distinct (namespace, target package) pair found
/// in `depends-on` entries. Targets are reduced to their package by dropping
/// the final dot segment (a name without dots is its own package).
/// Intra-package dependencies are dropped.
DependencyGraph load_odem(std::string_view xml_text);

DependencyGraph load_graph_file(const std::filesystem::path& path,
                                const std::string& format);

// Series manifest: JSON array of
//   {"label": str, "path": str, "format": "edgelist"|"odem", "class_count": int?}
// with paths resolved relative to the manifest location.
VersionSeries load_manifest(const std::filesystem::path& manifest_path);

// Writes one edge-list file per snapshot plus a manifest.json telling
// load_manifest how to read them back.
void write_series(const VersionSeries& series, const std::filesystem::path& directory);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace deplink
