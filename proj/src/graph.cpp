#include "deplink/graph.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <string>

namespace deplink {

bool valid_module_id(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

DependencyGraph DependencyGraph::build(std::vector<std::string> nodes,
                                       std::vector<NamedEdge> edges) {
  for (const auto& n : nodes) {
    if (!valid_module_id(n)) {
      throw std::invalid_argument("invalid module id: '" + n + "'");
    }
  }
  for (const auto& [s, t] : edges) {
    if (!valid_module_id(s) || !valid_module_id(t)) {
      throw std::invalid_argument("invalid module id in edge: '" + s + "' -> '" + t + "'");
    }
    nodes.push_back(s);
    nodes.push_back(t);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  DependencyGraph g;
  g.nodes_ = std::move(nodes);
  const auto index = [&g](const std::string& name) {
    return static_cast<int>(std::lower_bound(g.nodes_.begin(), g.nodes_.end(), name) -
                            g.nodes_.begin());
  };

  g.edges_.reserve(edges.size());
  for (const auto& [s, t] : edges) {
    if (s == t) continue;  // self-dependencies are dropped
    g.edges_.emplace_back(index(s), index(t));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  g.out_.assign(g.nodes_.size(), {});
  g.in_.assign(g.nodes_.size(), {});
  for (const auto& [s, t] : g.edges_) {
    g.out_[static_cast<std::size_t>(s)].push_back(t);
    g.in_[static_cast<std::size_t>(t)].push_back(s);
  }
  // edges_ is sorted, so out lists are already sorted; in lists are not.
  for (auto& v : g.in_) std::sort(v.begin(), v.end());
  return g;
}

std::optional<int> DependencyGraph::index_of(std::string_view name) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), name);
  if (it == nodes_.end() || *it != name) return std::nullopt;
  return static_cast<int>(it - nodes_.begin());
}

int DependencyGraph::require_node(std::string_view name) const {
  auto idx = index_of(name);
  if (!idx) throw std::invalid_argument("unknown module: '" + std::string(name) + "'");
  return *idx;
}

bool DependencyGraph::has_edge(int source, int target) const {
  const auto& adj = out_[static_cast<std::size_t>(source)];
  return std::binary_search(adj.begin(), adj.end(), target);
}

bool DependencyGraph::has_edge(std::string_view source, std::string_view target) const {
  auto s = index_of(source);
  auto t = index_of(target);
  return s && t && has_edge(*s, *t);
}

std::vector<NamedEdge> DependencyGraph::named_edges() const {
  std::vector<NamedEdge> result;
  result.reserve(edges_.size());
  for (const auto& [s, t] : edges_) {
    result.emplace_back(name_of(s), name_of(t));
  }
  return result;
}

DependencyGraph without_edge(const DependencyGraph& g, std::string_view source,
                             std::string_view target) {
  std::vector<NamedEdge> edges;
  edges.reserve(g.edges().size());
  for (const auto& [s, t] : g.named_edges()) {
    if (s == source && t == target) continue;
    edges.emplace_back(s, t);
  }
  return DependencyGraph::build(g.node_names(), std::move(edges));
}

VersionSeries::VersionSeries(std::vector<VersionSnapshot> snapshots)
    : snapshots_(std::move(snapshots)) {
  std::set<std::string> seen;
  for (const auto& s : snapshots_) {
    if (s.label.empty()) throw std::invalid_argument("version label must be non-empty");
    if (!seen.insert(s.label).second) {
      throw std::invalid_argument("duplicate version label: '" + s.label + "'");
    }
  }
}

std::optional<int> VersionSeries::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < snapshots_.size(); ++i) {
    if (snapshots_[i].label == label) return static_cast<int>(i);
  }
  return std::nullopt;
}

int VersionSeries::require_version(std::string_view label) const {
  auto idx = index_of(label);
  if (!idx) throw std::invalid_argument("unknown version label: '" + std::string(label) + "'");
  return *idx;
}

double sparsity(const DependencyGraph& g) {
  const double v = g.node_count();
  if (v <= 1.0) return 1.0;
  return 1.0 - static_cast<double>(g.edge_count()) / (v * (v - 1.0));
}

namespace {

bool contains(const std::vector<std::string>& sorted, const std::string& name) {
  return std::binary_search(sorted.begin(), sorted.end(), name);
}

int count_among(const std::vector<NamedEdge>& edges,
                const std::vector<std::string>& sorted_nodes) {
  int n = 0;
  for (const auto& [s, t] : edges) {
    if (contains(sorted_nodes, s) && contains(sorted_nodes, t)) ++n;
  }
  return n;
}

}  // namespace

int GraphDelta::added_among_shared() const { return count_among(added_edges, shared_nodes); }
int GraphDelta::removed_among_shared() const { return count_among(removed_edges, shared_nodes); }

GraphDelta delta(const DependencyGraph& g1, const DependencyGraph& g2) {
  GraphDelta d;
  const auto& n1 = g1.node_names();
  const auto& n2 = g2.node_names();
  std::set_difference(n2.begin(), n2.end(), n1.begin(), n1.end(),
                      std::back_inserter(d.added_nodes));
  std::set_difference(n1.begin(), n1.end(), n2.begin(), n2.end(),
                      std::back_inserter(d.removed_nodes));
  std::set_intersection(n1.begin(), n1.end(), n2.begin(), n2.end(),
                        std::back_inserter(d.shared_nodes));

  auto e1 = g1.named_edges();
  auto e2 = g2.named_edges();
  std::sort(e1.begin(), e1.end());
  std::sort(e2.begin(), e2.end());
  std::set_difference(e2.begin(), e2.end(), e1.begin(), e1.end(),
                      std::back_inserter(d.added_edges));
  std::set_difference(e1.begin(), e1.end(), e2.begin(), e2.end(),
                      std::back_inserter(d.removed_edges));
  return d;
}

std::vector<std::pair<int, int>> filter_version_pairs(const VersionSeries& series,
                                                      const PairFilterConfig& cfg) {
  if (cfg.max_node_growth_fraction < 0.0) {
    throw std::invalid_argument("max_node_growth_fraction must be >= 0");
  }
  if (cfg.min_added_edges < 1) {
    throw std::invalid_argument("min_added_edges must be >= 1");
  }

  std::vector<std::pair<int, int>> eligible;
  for (int i = 0; i + 1 < series.size(); ++i) {
    const auto& a = series.at(i);
    const auto& b = series.at(i + 1);
    const GraphDelta d = delta(a.graph, b.graph);

    const int base_nodes = a.graph.node_count();
    const double growth =
        base_nodes > 0 ? static_cast<double>(d.added_nodes.size()) / base_nodes
                       : (d.added_nodes.empty() ? 0.0 : 1.0);
    if (growth > cfg.max_node_growth_fraction) continue;

    // New dependencies are counted among modules both versions share; links
    // gained or lost solely through package churn do not qualify a pair.
    if (d.added_among_shared() < cfg.min_added_edges) continue;

    if (cfg.require_class_growth && a.class_count && b.class_count &&
        *b.class_count < *a.class_count) {
      continue;
    }
    eligible.emplace_back(i, i + 1);
  }
  return eligible;
}

std::vector<NamedEdge> candidate_pairs(const DependencyGraph& g,
                                       const std::vector<std::string>& universe_nodes) {
  std::vector<std::string> universe = universe_nodes;
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

  std::vector<int> ids;
  ids.reserve(universe.size());
  for (const auto& name : universe) ids.push_back(g.require_node(name));

  std::vector<NamedEdge> result;
  for (int x : ids) {
    for (int y : ids) {
      if (x == y || g.has_edge(x, y)) continue;
      result.emplace_back(g.name_of(x), g.name_of(y));
    }
  }
  return result;  // ids are sorted, so pairs come out lexicographically
}

}  // namespace deplink
