#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace deplink {

// Module pair by name, ordered (source, target).
using NamedEdge = std::pair<std::string, std::string>;

// A module identifier is non-empty text without whitespace.
bool valid_module_id(std::string_view name);

/// Immutable directed dependency graph over string module identifiers.
///
/// Nodes are stored sorted, so node index equals lexicographic rank and all
/// index-based iteration orders are deterministic. Construction canonicalizes
/// the input: self-loops are dropped and duplicate edges collapse to one.
class DependencyGraph {
 public:
  DependencyGraph() = default;

  // Edge endpoints are added to the node set automatically; extra nodes may
  // be declared up front (isolated modules). Throws std::invalid_argument on
  // malformed identifiers.
  static DependencyGraph build(std::vector<std::string> nodes,
                               std::vector<NamedEdge> edges);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<std::string>& node_names() const { return nodes_; }
  const std::string& name_of(int v) const { return nodes_[static_cast<std::size_t>(v)]; }
  std::optional<int> index_of(std::string_view name) const;
  // Like index_of but throws std::invalid_argument for unknown modules.
  int require_node(std::string_view name) const;
  bool has_node(std::string_view name) const { return index_of(name).has_value(); }

  bool has_edge(int source, int target) const;
  bool has_edge(std::string_view source, std::string_view target) const;

  std::span<const int> out(int v) const { return out_[static_cast<std::size_t>(v)]; }
  std::span<const int> in(int v) const { return in_[static_cast<std::size_t>(v)]; }

  // All edges as index pairs, sorted lexicographically.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::vector<NamedEdge> named_edges() const;

  friend bool operator==(const DependencyGraph& a, const DependencyGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> nodes_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// Copy of g with one directed edge removed (no-op if the edge is absent).
DependencyGraph without_edge(const DependencyGraph& g, std::string_view source,
                             std::string_view target);

struct VersionSnapshot {
  std::string label;
  DependencyGraph graph;
  std::optional<int> class_count;
};

/// Chronologically ordered snapshots with pairwise-distinct labels.
class VersionSeries {
 public:
  VersionSeries() = default;
  explicit VersionSeries(std::vector<VersionSnapshot> snapshots);

  int size() const { return static_cast<int>(snapshots_.size()); }
  const std::vector<VersionSnapshot>& snapshots() const { return snapshots_; }
  const VersionSnapshot& at(int i) const { return snapshots_[static_cast<std::size_t>(i)]; }
  std::optional<int> index_of(std::string_view label) const;
  int require_version(std::string_view label) const;

 private:
  std::vector<VersionSnapshot> snapshots_;
};

/// Node and edge differences between two snapshots. All vectors are sorted.
struct GraphDelta {
  std::vector<NamedEdge> added_edges;
  std::vector<NamedEdge> removed_edges;
  std::vector<std::string> added_nodes;
  std::vector<std::string> removed_nodes;
  std::vector<std::string> shared_nodes;

  // Edge changes restricted to pairs whose endpoints both survive.
  int added_among_shared() const;
  int removed_among_shared() const;
};

struct PairFilterConfig {
  double max_node_growth_fraction = 0.15;
  int min_added_edges = 1;
  bool require_class_growth = false;
};

// Fraction of possible directed edges absent: 1 - |E| / (|V| * (|V| - 1)).
// Defined as 1.0 for graphs with fewer than two nodes.
double sparsity(const DependencyGraph& g);

GraphDelta delta(const DependencyGraph& g1, const DependencyGraph& g2);

/// Consecutive snapshot index pairs (n, n+1) eligible for link prediction:
/// bounded node growth and at least min_added_edges new dependencies among
/// the modules both versions share. With require_class_growth set and class
/// counts present, the class count must not shrink.
std::vector<std::pair<int, int>> filter_version_pairs(
    const VersionSeries& series, const PairFilterConfig& cfg = {});

/// All ordered non-adjacent pairs (x, y), x != y, over the given universe,
/// in lexicographic order. The universe must be a subset of the graph nodes.
std::vector<NamedEdge> candidate_pairs(const DependencyGraph& g,
                                       const std::vector<std::string>& universe_nodes);

}  // namespace deplink
