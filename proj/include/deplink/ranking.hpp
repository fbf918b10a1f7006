#pragma once

#include <string>
#include <vector>

#include "deplink/graph.hpp"
#include "deplink/metrics.hpp"

namespace deplink {

struct RankingEntry {
  std::string target;
  double score;
};

/// Top candidates for one source module under one metric, sorted by score
/// descending with lexicographic tie-break on the target. Zero-score
/// candidates are kept; they may still occupy top-n slots.
struct NodeRanking {
  std::string source;
  MetricId metric;
  std::vector<RankingEntry> entries;
};

// Candidates are the non-neighbors of source inside `universe` (all graph
// nodes when universe is null).
NodeRanking rank_for_node(const DependencyGraph& g, std::string_view source, MetricId metric,
                          const MetricConfig& cfg, int top_n,
                          const std::vector<std::string>* universe = nullptr);

struct RankingEvaluation {
  struct NodeCounts {
    std::string source;
    int hits = 0;
    int predictions = 0;
    bool gained = false;  // the node has at least one added dependency
  };
  std::vector<NodeCounts> per_node;
  int total_hits = 0;
  int total_predictions = 0;
  int gaining_hits = 0;
  int gaining_predictions = 0;
  double micro_precision = 0.0;          // over every evaluated node
  double micro_precision_gaining = 0.0;  // over nodes that gained dependencies
};

/// Precision@N of per-node rankings computed on g_n against the dependencies
/// added in g_next. Candidates are restricted to modules shared by both
/// versions; nodes without candidates are skipped, and nodes with fewer than
/// top_n candidates contribute what they have.
RankingEvaluation evaluate_ranking(const DependencyGraph& g_n, const DependencyGraph& g_next,
                                   MetricId metric, const MetricConfig& cfg, int top_n);

/// Global candidate scoring for one metric: every shared-node candidate pair
/// of g_n scored, labeled 1 when the edge appears in g_next. Feeds the same
/// AUPR machinery as the classifier approaches.
struct ScoredCandidates {
  std::vector<NamedEdge> pairs;
  std::vector<double> scores;
  std::vector<int> labels;
};
ScoredCandidates score_candidates(const DependencyGraph& g_n, const DependencyGraph& g_next,
                                  MetricId metric, const MetricConfig& cfg);

}  // namespace deplink
