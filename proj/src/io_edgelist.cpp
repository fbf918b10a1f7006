#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "deplink/io.hpp"

namespace deplink {

namespace {

constexpr std::string_view kNodesHeader = "#nodes:";

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::vector<std::string> split_csv_names(std::string_view text) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) names.emplace_back(item);
    start = comma + 1;
    if (comma == text.size()) break;
  }
  return names;
}

}  // namespace

DependencyGraph load_edge_list(std::string_view text) {
  std::vector<std::string> nodes;
  std::vector<NamedEdge> edges;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = strip_cr(text.substr(pos, eol - pos));
    ++line_no;
    pos = eol + 1;
    if (eol == text.size() && line.empty()) break;

    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.substr(0, kNodesHeader.size()) == kNodesHeader) {
        for (auto& name : split_csv_names(line.substr(kNodesHeader.size()))) {
          if (!valid_module_id(name)) {
            throw ParseError("invalid module id '" + name + "' in #nodes: header", line_no);
          }
          nodes.push_back(std::move(name));
        }
      }
      continue;
    }

    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
      throw ParseError("expected exactly two tab-separated fields", line_no);
    }
    std::string source(line.substr(0, tab));
    std::string target(line.substr(tab + 1));
    if (!valid_module_id(source) || !valid_module_id(target)) {
      throw ParseError("invalid module id in edge '" + source + "' -> '" + target + "'",
                       line_no);
    }
    edges.emplace_back(std::move(source), std::move(target));
  }

  return DependencyGraph::build(std::move(nodes), std::move(edges));
}

std::string to_edge_list(const DependencyGraph& g) {
  std::ostringstream out;
  out << "#nodes: ";
  const auto& names = g.node_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out << ',';
    out << names[i];
  }
  out << '\n';
  for (const auto& [s, t] : g.edges()) {
    out << g.name_of(s) << '\t' << g.name_of(t) << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace deplink
