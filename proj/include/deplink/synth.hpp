#pragma once

#include <cstdint>

#include "deplink/graph.hpp"

namespace deplink {

struct SynthConfig {
  std::uint64_t seed = 0;
  int node_count = 20;
  int version_count = 10;
  double initial_edge_fraction = 0.1;
  int edges_per_version = 3;
  double p_triadic = 0.7;  // chance each new edge closes a triad instead of being uniform
};

/// Seeded evolving digraph: v1 is a uniform random graph, every later version
/// copies its predecessor and adds edges_per_version new dependencies. With
/// probability p_triadic an added edge is the non-edge with the most common
/// neighbors (seeded tie-break); otherwise it is uniform over the non-edges.
/// The node set never changes. Fully deterministic per seed.
VersionSeries generate(const SynthConfig& cfg);

}  // namespace deplink
