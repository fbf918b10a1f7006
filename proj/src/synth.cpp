#include "deplink/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "deplink/rng.hpp"

namespace deplink {

namespace {

std::string node_label(int index, int width) {
  std::string digits = std::to_string(index);
  return "n" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') + digits;
}

// common union-neighbors of (x, y) on a dense adjacency matrix
int common_neighbours(const std::vector<char>& adj, int n, int x, int y) {
  int count = 0;
  for (int z = 0; z < n; ++z) {
    if (z == x || z == y) continue;
    const bool near_x = adj[static_cast<std::size_t>(x * n + z)] ||
                        adj[static_cast<std::size_t>(z * n + x)];
    const bool near_y = adj[static_cast<std::size_t>(y * n + z)] ||
                        adj[static_cast<std::size_t>(z * n + y)];
    count += near_x && near_y;
  }
  return count;
}

}  // namespace

VersionSeries generate(const SynthConfig& cfg) {
  if (cfg.node_count < 5) throw std::invalid_argument("node_count must be >= 5");
  if (cfg.version_count < 3) throw std::invalid_argument("version_count must be >= 3");
  if (cfg.edges_per_version < 1) throw std::invalid_argument("edges_per_version must be >= 1");
  if (cfg.p_triadic < 0.0 || cfg.p_triadic > 1.0) {
    throw std::invalid_argument("p_triadic must be in [0, 1]");
  }
  if (cfg.initial_edge_fraction < 0.0 || cfg.initial_edge_fraction > 1.0) {
    throw std::invalid_argument("initial_edge_fraction must be in [0, 1]");
  }

  const int n = cfg.node_count;
  const long long capacity = static_cast<long long>(n) * (n - 1);
  const auto initial =
      static_cast<long long>(std::floor(cfg.initial_edge_fraction * static_cast<double>(capacity)));
  const long long total =
      initial + static_cast<long long>(cfg.version_count - 1) * cfg.edges_per_version;
  if (total >= capacity) {
    throw std::invalid_argument("graph too small for the requested edge growth");
  }

  const int width = static_cast<int>(std::to_string(n - 1).size());
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) names.push_back(node_label(i, width));

  Rng rng(cfg.seed);
  std::vector<char> adj(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  std::vector<std::pair<int, int>> non_edges;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x != y) non_edges.emplace_back(x, y);
    }
  }

  const auto add_edge = [&](std::size_t non_edge_index) {
    const auto [x, y] = non_edges[non_edge_index];
    adj[static_cast<std::size_t>(x * n + y)] = 1;
    non_edges.erase(non_edges.begin() + static_cast<std::ptrdiff_t>(non_edge_index));
  };

  // v1: uniform random edges
  rng.shuffle(non_edges);
  for (long long e = 0; e < initial; ++e) add_edge(non_edges.size() - 1);
  std::sort(non_edges.begin(), non_edges.end());

  const auto snapshot_of = [&](int version) {
    std::vector<NamedEdge> edges;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (adj[static_cast<std::size_t>(x * n + y)]) {
          edges.emplace_back(names[static_cast<std::size_t>(x)],
                             names[static_cast<std::size_t>(y)]);
        }
      }
    }
    VersionSnapshot snap;
    snap.label = "v" + std::to_string(version);
    snap.graph = DependencyGraph::build(names, std::move(edges));
    return snap;
  };

  std::vector<VersionSnapshot> snapshots;
  snapshots.push_back(snapshot_of(1));

  for (int version = 2; version <= cfg.version_count; ++version) {
    for (int e = 0; e < cfg.edges_per_version; ++e) {
      if (cfg.p_triadic > 0.0 && rng.uniform() < cfg.p_triadic) {
        int best = -1;
        std::size_t chosen = 0;
        std::size_t ties = 0;
        for (std::size_t i = 0; i < non_edges.size(); ++i) {
          const int cn = common_neighbours(adj, n, non_edges[i].first, non_edges[i].second);
          if (cn > best) {
            best = cn;
            chosen = i;
            ties = 1;
          } else if (cn == best) {
            // reservoir pick keeps the tie-break seeded and single-pass
            ++ties;
            if (rng.below(ties) == 0) chosen = i;
          }
        }
        add_edge(chosen);
      } else {
        add_edge(rng.below(non_edges.size()));
      }
    }
    snapshots.push_back(snapshot_of(version));
  }
  return VersionSeries(std::move(snapshots));
}

}  // namespace deplink
