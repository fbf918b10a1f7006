#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "deplink/graph.hpp"

namespace deplink {

// Direction used when taking the neighborhood of a node.
enum class NeighborhoodMode { Out, In, Union };

enum class MetricId {
  CommonNeighbours,
  AdamicAdar,
  ResourceAllocation,
  Sorensen,
  Kulczynski,
  RelativeMatching,
  RussellRao,
  Katz,
  SimRank,
};

inline constexpr int kMetricCount = 9;
inline constexpr std::array<MetricId, kMetricCount> kAllMetrics = {
    MetricId::CommonNeighbours, MetricId::AdamicAdar,  MetricId::ResourceAllocation,
    MetricId::Sorensen,         MetricId::Kulczynski,  MetricId::RelativeMatching,
    MetricId::RussellRao,       MetricId::Katz,        MetricId::SimRank,
};

// Short column name used in CSV output ("cn", "aa", ...).
const std::string& metric_name(MetricId id);
// Accepts both the CSV short name and the spelled-out kebab-case form.
MetricId parse_metric(const std::string& name);
// Inclusive value range; upper bound is +inf for the unbounded metrics.
std::pair<double, double> metric_range(MetricId id);

struct MetricConfig {
  NeighborhoodMode mode = NeighborhoodMode::Union;
  double katz_beta = 0.005;
  int katz_max_length = 5;
  double simrank_decay = 0.8;
  int simrank_max_iters = 50;
  double simrank_tol = 1e-4;
  bool include_community_feature = false;
  std::uint64_t community_seed = 0;

  void validate() const;
};

/// Total assignment of nodes to communities; labels are node indices.
struct CommunityPartition {
  std::vector<int> label;  // node index -> community label

  bool same(int x, int y) const {
    return label[static_cast<std::size_t>(x)] == label[static_cast<std::size_t>(y)];
  }
  int community_count() const;
};

/// Seeded label propagation over the undirected view of the graph: every node
/// starts in its own community, and in each round (one seeded permutation of
/// the nodes, applied asynchronously) a node adopts the most frequent label
/// among its union-neighbors, ties going to the smallest label. Stops when a
/// round changes nothing, or after 100 rounds.
CommunityPartition communities(const DependencyGraph& g, std::uint64_t seed);

using FeatureVector = std::vector<double>;

// Column names in FeatureVector order.
std::vector<std::string> feature_names(bool include_community);

/// Scores node pairs of one immutable graph. The SimRank table, Katz rows and
/// community partition are computed on first use and then shared by every
/// query, so pair loops stay cheap.
///
/// cfg.mode selects the neighborhood for the overlap and contingency metrics.
/// Two metrics ignore it by definition: Katz always follows directed walks,
/// and SimRank always recurses over in-neighbors.
class MetricEngine {
 public:
  explicit MetricEngine(const DependencyGraph& g, MetricConfig cfg = {});
  ~MetricEngine();
  MetricEngine(MetricEngine&&) noexcept;
  MetricEngine& operator=(MetricEngine&&) noexcept;

  const DependencyGraph& graph() const { return *graph_; }
  const MetricConfig& config() const { return cfg_; }

  const std::vector<int>& neighborhood(int v) const;
  double score(MetricId id, int x, int y) const;
  // The nine metric scores in MetricId order, plus the same-community flag
  // when cfg.include_community_feature is set.
  FeatureVector features(int x, int y) const;

  double simrank(int x, int y) const;
  const std::vector<double>& katz_row(int x) const;
  const CommunityPartition& partition() const;

 private:
  struct Cache;
  const DependencyGraph* graph_;
  MetricConfig cfg_;
  std::unique_ptr<Cache> cache_;
};

// One-shot variants of the per-pair operations. They validate the node names
// and build a throwaway engine, so prefer MetricEngine inside loops.

std::vector<std::string> neighbors(const DependencyGraph& g, std::string_view node,
                                   NeighborhoodMode mode);

struct OverlapScores {
  double common_neighbours;
  double adamic_adar;
  double resource_allocation;
  double sorensen;
};
OverlapScores overlap_metrics(const DependencyGraph& g, std::string_view x,
                              std::string_view y, const MetricConfig& cfg = {});

struct ContingencyScores {
  double kulczynski;
  double relative_matching;
  double russell_rao;
};
ContingencyScores contingency_metrics(const DependencyGraph& g, std::string_view x,
                                      std::string_view y, const MetricConfig& cfg = {});

double katz(const DependencyGraph& g, std::string_view x, std::string_view y,
            const MetricConfig& cfg = {});
double simrank(const DependencyGraph& g, std::string_view x, std::string_view y,
               const MetricConfig& cfg = {});

FeatureVector feature_vector(const DependencyGraph& g, std::string_view x, std::string_view y,
                             const MetricConfig& cfg = {},
                             const CommunityPartition* partition = nullptr);

}  // namespace deplink
