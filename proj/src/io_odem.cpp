#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "deplink/io.hpp"

namespace deplink {

namespace {

namespace pt = boost::property_tree;

std::string package_of(const std::string& qualified_type) {
  std::size_t dot = qualified_type.rfind('.');
  if (dot == std::string::npos) return qualified_type;
  return qualified_type.substr(0, dot);
}

std::string name_attr(const pt::ptree& element, const char* element_name) {
  auto name = element.get_optional<std::string>("<xmlattr>.name");
  if (!name || name->empty()) {
    throw ParseError(std::string("<") + element_name + "> element is missing a name attribute");
  }
  return *name;
}

void collect_namespace(const pt::ptree& ns, std::vector<std::string>& nodes,
                       std::vector<NamedEdge>& edges) {
  const std::string package = name_attr(ns, "namespace");
  nodes.push_back(package);
  for (const auto& [key, type_el] : ns) {
    if (key != "type") continue;
    for (const auto& [tkey, deps_el] : type_el) {
      if (tkey != "dependencies") continue;
      for (const auto& [dkey, dep_el] : deps_el) {
        if (dkey != "depends-on") continue;
        // every classification (uses/extends/implements) counts
        edges.emplace_back(package, package_of(name_attr(dep_el, "depends-on")));
      }
    }
  }
}

void walk(const pt::ptree& element, std::vector<std::string>& nodes,
          std::vector<NamedEdge>& edges) {
  for (const auto& [key, child] : element) {
    if (key == "<xmlattr>") continue;
    if (key == "namespace") {
      collect_namespace(child, nodes, edges);
    } else {
      walk(child, nodes, edges);
    }
  }
}

}  // namespace

DependencyGraph load_odem(std::string_view xml_text) {
  pt::ptree doc;
  std::istringstream stream{std::string(xml_text)};
  try {
    pt::read_xml(stream, doc);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(std::string("ODEM XML: ") + e.message(),
                     static_cast<int>(e.line()));
  }

  if (doc.find("ODEM") == doc.not_found()) {
    throw ParseError("document has no <ODEM> root element");
  }

  std::vector<std::string> nodes;
  std::vector<NamedEdge> edges;
  walk(doc.get_child("ODEM"), nodes, edges);
  // build() drops the intra-package self-loops and collapses duplicates
  return DependencyGraph::build(std::move(nodes), std::move(edges));
}

DependencyGraph load_graph_file(const std::filesystem::path& path, const std::string& format) {
  const std::string text = read_text_file(path);
  try {
    if (format == "edgelist") return load_edge_list(text);
    if (format == "odem") return load_odem(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  throw std::invalid_argument("unknown graph format: '" + format + "'");
}

}  // namespace deplink
