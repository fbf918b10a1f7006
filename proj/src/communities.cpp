#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "deplink/metrics.hpp"
#include "deplink/rng.hpp"

namespace deplink {

int CommunityPartition::community_count() const {
  return static_cast<int>(std::set<int>(label.begin(), label.end()).size());
}

CommunityPartition communities(const DependencyGraph& g, std::uint64_t seed) {
  const int n = g.node_count();
  CommunityPartition part;
  part.label.resize(static_cast<std::size_t>(n));
  std::iota(part.label.begin(), part.label.end(), 0);
  if (n == 0) return part;

  // union-neighbor lists, independent of any MetricConfig
  std::vector<std::vector<int>> nbr(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    auto& list = nbr[static_cast<std::size_t>(v)];
    const auto out = g.out(v);
    const auto in = g.in(v);
    std::set_union(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(list));
  }

  Rng rng(seed);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> votes(static_cast<std::size_t>(n), 0);

  constexpr int kMaxRounds = 100;
  for (int round = 0; round < kMaxRounds; ++round) {
    rng.shuffle(order);
    bool changed = false;
    for (int v : order) {
      const auto& list = nbr[static_cast<std::size_t>(v)];
      if (list.empty()) continue;
      for (int u : list) ++votes[static_cast<std::size_t>(part.label[static_cast<std::size_t>(u)])];
      // most frequent neighbor label, smallest label on ties
      int best = -1;
      int best_count = 0;
      for (int u : list) {
        const int lab = part.label[static_cast<std::size_t>(u)];
        const int count = votes[static_cast<std::size_t>(lab)];
        if (count > best_count || (count == best_count && lab < best)) {
          best = lab;
          best_count = count;
        }
      }
      for (int u : list) votes[static_cast<std::size_t>(part.label[static_cast<std::size_t>(u)])] = 0;
      if (best != part.label[static_cast<std::size_t>(v)]) {
        part.label[static_cast<std::size_t>(v)] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return part;
}

}  // namespace deplink
