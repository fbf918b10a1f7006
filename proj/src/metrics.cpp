#include "deplink/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace deplink {

const std::string& metric_name(MetricId id) {
  static const std::vector<std::string> names = {
      "cn", "aa", "ra", "sorensen", "kulczynski", "relmatch", "russellrao", "katz", "simrank"};
  return names[static_cast<std::size_t>(id)];
}

MetricId parse_metric(const std::string& name) {
  static const std::map<std::string, MetricId> aliases = {
      {"cn", MetricId::CommonNeighbours},
      {"common-neighbours", MetricId::CommonNeighbours},
      {"common-neighbors", MetricId::CommonNeighbours},
      {"aa", MetricId::AdamicAdar},
      {"adamic-adar", MetricId::AdamicAdar},
      {"ra", MetricId::ResourceAllocation},
      {"resource-allocation", MetricId::ResourceAllocation},
      {"sorensen", MetricId::Sorensen},
      {"kulczynski", MetricId::Kulczynski},
      {"relmatch", MetricId::RelativeMatching},
      {"relative-matching", MetricId::RelativeMatching},
      {"russellrao", MetricId::RussellRao},
      {"russell-rao", MetricId::RussellRao},
      {"katz", MetricId::Katz},
      {"simrank", MetricId::SimRank},
  };
  auto it = aliases.find(name);
  if (it == aliases.end()) throw std::invalid_argument("unknown metric: '" + name + "'");
  return it->second;
}

std::pair<double, double> metric_range(MetricId id) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (id) {
    case MetricId::CommonNeighbours:
    case MetricId::AdamicAdar:
    case MetricId::ResourceAllocation:
    case MetricId::Katz:
      return {0.0, inf};
    default:
      return {0.0, 1.0};
  }
}

void MetricConfig::validate() const {
  if (katz_beta <= 0.0) throw std::invalid_argument("katz_beta must be > 0");
  if (katz_max_length < 1) throw std::invalid_argument("katz_max_length must be >= 1");
  if (simrank_decay <= 0.0 || simrank_decay >= 1.0) {
    throw std::invalid_argument("simrank_decay must be in (0, 1)");
  }
  if (simrank_tol <= 0.0) throw std::invalid_argument("simrank_tol must be > 0");
  if (simrank_max_iters < 1) throw std::invalid_argument("simrank_max_iters must be >= 1");
}

std::vector<std::string> feature_names(bool include_community) {
  std::vector<std::string> names;
  names.reserve(kMetricCount + (include_community ? 1 : 0));
  for (MetricId id : kAllMetrics) names.push_back(metric_name(id));
  if (include_community) names.emplace_back("community");
  return names;
}

struct MetricEngine::Cache {
  std::vector<std::vector<int>> neighborhood;          // per cfg.mode, sorted
  std::vector<std::vector<double>> katz_rows;          // lazily filled per source
  std::vector<char> katz_done;
  std::vector<double> simrank_table;                   // n*n, lazily filled
  bool simrank_done = false;
  std::optional<CommunityPartition> partition;
};

MetricEngine::MetricEngine(const DependencyGraph& g, MetricConfig cfg)
    : graph_(&g), cfg_(cfg), cache_(std::make_unique<Cache>()) {
  cfg_.validate();
  const auto n = static_cast<std::size_t>(g.node_count());
  cache_->neighborhood.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto& nbr = cache_->neighborhood[v];
    const auto out = g.out(static_cast<int>(v));
    const auto in = g.in(static_cast<int>(v));
    switch (cfg_.mode) {
      case NeighborhoodMode::Out:
        nbr.assign(out.begin(), out.end());
        break;
      case NeighborhoodMode::In:
        nbr.assign(in.begin(), in.end());
        break;
      case NeighborhoodMode::Union:
        std::set_union(out.begin(), out.end(), in.begin(), in.end(),
                       std::back_inserter(nbr));
        break;
    }
  }
  cache_->katz_rows.resize(n);
  cache_->katz_done.assign(n, 0);
}

MetricEngine::~MetricEngine() = default;
MetricEngine::MetricEngine(MetricEngine&&) noexcept = default;
MetricEngine& MetricEngine::operator=(MetricEngine&&) noexcept = default;

const std::vector<int>& MetricEngine::neighborhood(int v) const {
  return cache_->neighborhood[static_cast<std::size_t>(v)];
}

namespace {

int intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
  int n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

void check_pair(const DependencyGraph& g, int x, int y) {
  if (x < 0 || y < 0 || x >= g.node_count() || y >= g.node_count()) {
    throw std::invalid_argument("node index out of range");
  }
  if (x == y) throw std::invalid_argument("metric requires two distinct nodes");
}

}  // namespace

const std::vector<double>& MetricEngine::katz_row(int x) const {
  auto& done = cache_->katz_done[static_cast<std::size_t>(x)];
  auto& row = cache_->katz_rows[static_cast<std::size_t>(x)];
  if (!done) {
    const auto n = static_cast<std::size_t>(graph_->node_count());
    row.assign(n, 0.0);
    // walks[v] = number of directed walks x -> v of the current length
    std::vector<double> walks(n, 0.0);
    std::vector<double> next(n, 0.0);
    walks[static_cast<std::size_t>(x)] = 1.0;
    double beta_pow = 1.0;
    for (int len = 1; len <= cfg_.katz_max_length; ++len) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t v = 0; v < n; ++v) {
        if (walks[v] == 0.0) continue;
        for (int w : graph_->out(static_cast<int>(v))) {
          next[static_cast<std::size_t>(w)] += walks[v];
        }
      }
      walks.swap(next);
      beta_pow *= cfg_.katz_beta;
      for (std::size_t v = 0; v < n; ++v) row[v] += beta_pow * walks[v];
    }
    done = 1;
  }
  return row;
}

double MetricEngine::simrank(int x, int y) const {
  const auto n = static_cast<std::size_t>(graph_->node_count());
  if (!cache_->simrank_done) {
    // Fixed point of s(a,a) = 1, s(a,b) = decay * mean of s over in-neighbor
    // pairs, starting from the identity. The table is symmetric, so only the
    // upper triangle is iterated.
    std::vector<double> cur(n * n, 0.0);
    std::vector<double> next(n * n, 0.0);
    for (std::size_t v = 0; v < n; ++v) cur[v * n + v] = 1.0;

    for (int iter = 0; iter < cfg_.simrank_max_iters; ++iter) {
      double max_change = 0.0;
      for (std::size_t a = 0; a < n; ++a) {
        next[a * n + a] = 1.0;
        const auto in_a = graph_->in(static_cast<int>(a));
        for (std::size_t b = a + 1; b < n; ++b) {
          const auto in_b = graph_->in(static_cast<int>(b));
          double value = 0.0;
          if (!in_a.empty() && !in_b.empty()) {
            double sum = 0.0;
            for (int u : in_a) {
              const double* row = cur.data() + static_cast<std::size_t>(u) * n;
              for (int w : in_b) sum += row[static_cast<std::size_t>(w)];
            }
            value = cfg_.simrank_decay * sum /
                    (static_cast<double>(in_a.size()) * static_cast<double>(in_b.size()));
          }
          next[a * n + b] = value;
          next[b * n + a] = value;
          max_change = std::max(max_change, std::abs(value - cur[a * n + b]));
        }
      }
      cur.swap(next);
      if (max_change < cfg_.simrank_tol) break;
    }
    cache_->simrank_table = std::move(cur);
    cache_->simrank_done = true;
  }
  return cache_->simrank_table[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)];
}

const CommunityPartition& MetricEngine::partition() const {
  if (!cache_->partition) {
    cache_->partition = communities(*graph_, cfg_.community_seed);
  }
  return *cache_->partition;
}

double MetricEngine::score(MetricId id, int x, int y) const {
  if (id == MetricId::SimRank) {
    if (x < 0 || y < 0 || x >= graph_->node_count() || y >= graph_->node_count()) {
      throw std::invalid_argument("node index out of range");
    }
    return simrank(x, y);
  }
  check_pair(*graph_, x, y);
  if (id == MetricId::Katz) return katz_row(x)[static_cast<std::size_t>(y)];

  const auto& gx = neighborhood(x);
  const auto& gy = neighborhood(y);
  const double a = intersection_size(gx, gy);
  const double nodes = graph_->node_count();

  switch (id) {
    case MetricId::CommonNeighbours:
      return a;
    case MetricId::AdamicAdar:
    case MetricId::ResourceAllocation: {
      double sum = 0.0;
      auto ia = gx.begin();
      auto ib = gy.begin();
      while (ia != gx.end() && ib != gy.end()) {
        if (*ia < *ib) {
          ++ia;
        } else if (*ib < *ia) {
          ++ib;
        } else {
          const auto deg = static_cast<double>(neighborhood(*ia).size());
          if (id == MetricId::AdamicAdar) {
            if (deg >= 2.0) sum += 1.0 / std::log(deg);  // degree <= 1 is skipped
          } else if (deg >= 1.0) {
            sum += 1.0 / deg;
          }
          ++ia;
          ++ib;
        }
      }
      return sum;
    }
    case MetricId::Sorensen: {
      const double total = static_cast<double>(gx.size() + gy.size());
      return total == 0.0 ? 0.0 : 2.0 * a / total;
    }
    case MetricId::Kulczynski: {
      if (gx.empty() || gy.empty()) return 0.0;
      return 0.5 * (a / static_cast<double>(gx.size()) + a / static_cast<double>(gy.size()));
    }
    case MetricId::RelativeMatching: {
      const double d = nodes - (static_cast<double>(gx.size() + gy.size()) - a);
      const double cross = std::sqrt(a * d);
      return (a + cross) / (nodes + cross);
    }
    case MetricId::RussellRao:
      return a / nodes;
    default:
      throw std::logic_error("unhandled metric");
  }
}

FeatureVector MetricEngine::features(int x, int y) const {
  FeatureVector values;
  values.reserve(kMetricCount + (cfg_.include_community_feature ? 1 : 0));
  for (MetricId id : kAllMetrics) values.push_back(score(id, x, y));
  if (cfg_.include_community_feature) {
    values.push_back(partition().same(x, y) ? 1.0 : 0.0);
  }
  return values;
}

std::vector<std::string> neighbors(const DependencyGraph& g, std::string_view node,
                                   NeighborhoodMode mode) {
  MetricConfig cfg;
  cfg.mode = mode;
  MetricEngine engine(g, cfg);
  std::vector<std::string> result;
  for (int v : engine.neighborhood(g.require_node(node))) result.push_back(g.name_of(v));
  return result;
}

OverlapScores overlap_metrics(const DependencyGraph& g, std::string_view x, std::string_view y,
                              const MetricConfig& cfg) {
  MetricEngine engine(g, cfg);
  const int xi = g.require_node(x);
  const int yi = g.require_node(y);
  return {engine.score(MetricId::CommonNeighbours, xi, yi),
          engine.score(MetricId::AdamicAdar, xi, yi),
          engine.score(MetricId::ResourceAllocation, xi, yi),
          engine.score(MetricId::Sorensen, xi, yi)};
}

ContingencyScores contingency_metrics(const DependencyGraph& g, std::string_view x,
                                      std::string_view y, const MetricConfig& cfg) {
  MetricEngine engine(g, cfg);
  const int xi = g.require_node(x);
  const int yi = g.require_node(y);
  return {engine.score(MetricId::Kulczynski, xi, yi),
          engine.score(MetricId::RelativeMatching, xi, yi),
          engine.score(MetricId::RussellRao, xi, yi)};
}

double katz(const DependencyGraph& g, std::string_view x, std::string_view y,
            const MetricConfig& cfg) {
  MetricEngine engine(g, cfg);
  return engine.score(MetricId::Katz, g.require_node(x), g.require_node(y));
}

double simrank(const DependencyGraph& g, std::string_view x, std::string_view y,
               const MetricConfig& cfg) {
  MetricEngine engine(g, cfg);
  return engine.simrank(g.require_node(x), g.require_node(y));
}

FeatureVector feature_vector(const DependencyGraph& g, std::string_view x, std::string_view y,
                             const MetricConfig& cfg, const CommunityPartition* partition) {
  const int xi = g.require_node(x);
  const int yi = g.require_node(y);
  MetricConfig local = cfg;
  local.include_community_feature = false;
  MetricEngine engine(g, local);
  FeatureVector values = engine.features(xi, yi);
  if (cfg.include_community_feature) {
    if (partition == nullptr) {
      throw std::invalid_argument("community feature requested without a partition");
    }
    values.push_back(partition->same(xi, yi) ? 1.0 : 0.0);
  }
  return values;
}

}  // namespace deplink
