#include "deplink/ranking.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace deplink {

NodeRanking rank_for_node(const DependencyGraph& g, std::string_view source, MetricId metric,
                          const MetricConfig& cfg, int top_n,
                          const std::vector<std::string>* universe) {
  if (top_n < 1) throw std::invalid_argument("top_n must be >= 1");
  const int s = g.require_node(source);
  MetricEngine engine(g, cfg);

  std::vector<int> ids;
  if (universe != nullptr) {
    for (const auto& name : *universe) ids.push_back(g.require_node(name));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  } else {
    for (int v = 0; v < g.node_count(); ++v) ids.push_back(v);
  }

  NodeRanking ranking{std::string(source), metric, {}};
  for (int y : ids) {
    if (y == s || g.has_edge(s, y)) continue;
    ranking.entries.push_back({g.name_of(y), engine.score(metric, s, y)});
  }
  std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                   [](const RankingEntry& a, const RankingEntry& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.target < b.target;
                   });
  if (static_cast<int>(ranking.entries.size()) > top_n) {
    ranking.entries.resize(static_cast<std::size_t>(top_n));
  }
  return ranking;
}

RankingEvaluation evaluate_ranking(const DependencyGraph& g_n, const DependencyGraph& g_next,
                                   MetricId metric, const MetricConfig& cfg, int top_n) {
  const GraphDelta d = delta(g_n, g_next);
  if (d.shared_nodes.empty()) {
    throw std::invalid_argument("versions share no modules; nothing to evaluate");
  }
  std::set<NamedEdge> added(d.added_edges.begin(), d.added_edges.end());

  MetricEngine engine(g_n, cfg);
  std::vector<int> universe;
  for (const auto& name : d.shared_nodes) universe.push_back(g_n.require_node(name));

  RankingEvaluation eval;
  for (int s : universe) {
    std::vector<RankingEntry> entries;
    for (int y : universe) {
      if (y == s || g_n.has_edge(s, y)) continue;
      entries.push_back({g_n.name_of(y), engine.score(metric, s, y)});
    }
    if (entries.empty()) continue;
    std::stable_sort(entries.begin(), entries.end(),
                     [](const RankingEntry& a, const RankingEntry& b) {
                       if (a.score != b.score) return a.score > b.score;
                       return a.target < b.target;
                     });
    if (static_cast<int>(entries.size()) > top_n) entries.resize(static_cast<std::size_t>(top_n));

    RankingEvaluation::NodeCounts counts;
    counts.source = g_n.name_of(s);
    counts.predictions = static_cast<int>(entries.size());
    for (const auto& e : entries) {
      if (added.count({counts.source, e.target})) ++counts.hits;
    }
    for (const auto& [from, to] : added) {
      if (from == counts.source) {
        counts.gained = true;
        break;
      }
    }
    eval.total_hits += counts.hits;
    eval.total_predictions += counts.predictions;
    if (counts.gained) {
      eval.gaining_hits += counts.hits;
      eval.gaining_predictions += counts.predictions;
    }
    eval.per_node.push_back(std::move(counts));
  }

  eval.micro_precision = eval.total_predictions > 0
                             ? static_cast<double>(eval.total_hits) / eval.total_predictions
                             : 0.0;
  eval.micro_precision_gaining =
      eval.gaining_predictions > 0
          ? static_cast<double>(eval.gaining_hits) / eval.gaining_predictions
          : 0.0;
  return eval;
}

ScoredCandidates score_candidates(const DependencyGraph& g_n, const DependencyGraph& g_next,
                                  MetricId metric, const MetricConfig& cfg) {
  const GraphDelta d = delta(g_n, g_next);
  if (d.shared_nodes.empty()) {
    throw std::invalid_argument("versions share no modules; nothing to score");
  }
  MetricEngine engine(g_n, cfg);

  ScoredCandidates result;
  for (const auto& [sname, tname] : candidate_pairs(g_n, d.shared_nodes)) {
    const int s = g_n.require_node(sname);
    const int t = g_n.require_node(tname);
    result.pairs.emplace_back(sname, tname);
    result.scores.push_back(engine.score(metric, s, t));
    result.labels.push_back(g_next.has_edge(sname, tname) ? 1 : 0);
  }
  return result;
}

}  // namespace deplink
