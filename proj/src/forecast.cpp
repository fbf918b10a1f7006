#include "deplink/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace deplink {

ForecastMethod parse_forecast_method(const std::string& text) {
  if (text == "linear_ls" || text == "linear-ls" || text == "linear") {
    return ForecastMethod::linear_ls();
  }
  if (text == "naive" || text == "naive_last" || text == "naive-last") {
    return ForecastMethod::naive_last();
  }
  if (text.rfind("exp", 0) == 0) {
    double alpha = 0.5;
    const std::size_t colon = text.find(':');
    if (colon != std::string::npos) alpha = std::stod(text.substr(colon + 1));
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw std::invalid_argument("exp smoothing alpha must be in (0, 1]");
    }
    return ForecastMethod::exp_smoothing(alpha);
  }
  throw std::invalid_argument("unknown forecast method: '" + text + "'");
}

std::string forecast_method_name(const ForecastMethod& method) {
  switch (method.kind) {
    case ForecastMethod::Kind::LinearLs:
      return "linear_ls";
    case ForecastMethod::Kind::NaiveLast:
      return "naive_last";
    case ForecastMethod::Kind::ExpSmoothing:
      return "exp:" + std::to_string(method.alpha);
  }
  return "?";
}

namespace {

std::vector<std::string> window_universe(const VersionSeries& series, int first, int last) {
  std::vector<std::string> universe = series.at(first).graph.node_names();
  for (int i = first + 1; i <= last; ++i) {
    const auto& names = series.at(i).graph.node_names();
    std::vector<std::string> kept;
    std::set_intersection(universe.begin(), universe.end(), names.begin(), names.end(),
                          std::back_inserter(kept));
    universe.swap(kept);
  }
  return universe;
}

void check_window(const VersionSeries& series, int first, int last) {
  if (first < 0 || last >= series.size() || last - first + 1 < 2) {
    throw std::invalid_argument("window must cover at least two versions of the series");
  }
}

}  // namespace

std::vector<FeatureSeries> build_series(const VersionSeries& series, int first, int last,
                                        const MetricConfig& cfg) {
  check_window(series, first, last);
  const std::vector<std::string> universe = window_universe(series, first, last);
  if (universe.empty()) {
    throw std::invalid_argument("windowed versions share no modules");
  }

  const int window = last - first + 1;
  std::vector<MetricEngine> engines;
  engines.reserve(static_cast<std::size_t>(window));
  std::vector<std::vector<int>> ids(static_cast<std::size_t>(window));
  for (int i = 0; i < window; ++i) {
    const auto& g = series.at(first + i).graph;
    engines.emplace_back(g, cfg);
    for (const auto& name : universe) {
      ids[static_cast<std::size_t>(i)].push_back(g.require_node(name));
    }
  }

  std::vector<FeatureSeries> result;
  for (std::size_t xi = 0; xi < universe.size(); ++xi) {
    for (std::size_t yi = 0; yi < universe.size(); ++yi) {
      if (xi == yi) continue;
      for (MetricId metric : kAllMetrics) {
        FeatureSeries fs;
        fs.source = universe[xi];
        fs.target = universe[yi];
        fs.metric = metric;
        fs.values.reserve(static_cast<std::size_t>(window));
        for (int i = 0; i < window; ++i) {
          const auto& idx = ids[static_cast<std::size_t>(i)];
          fs.values.push_back(engines[static_cast<std::size_t>(i)].score(metric, idx[xi], idx[yi]));
        }
        result.push_back(std::move(fs));
      }
    }
  }
  return result;
}

double forecast_next(const FeatureSeries& series, const ForecastMethod& method) {
  const auto& v = series.values;
  if (v.empty()) throw std::invalid_argument("cannot forecast an empty series");
  const auto k = static_cast<double>(v.size());

  double raw = v.back();
  switch (method.kind) {
    case ForecastMethod::Kind::NaiveLast:
      break;
    case ForecastMethod::Kind::LinearLs: {
      if (v.size() < 3) break;  // too short for a trend; fall back to the last value
      // least squares of value against t = 0..k-1, evaluated at t = k
      const double t_mean = (k - 1.0) / 2.0;
      double v_mean = 0.0;
      for (double value : v) v_mean += value;
      v_mean /= k;
      double num = 0.0;
      double den = 0.0;
      for (std::size_t t = 0; t < v.size(); ++t) {
        const double dt = static_cast<double>(t) - t_mean;
        num += dt * (v[t] - v_mean);
        den += dt * dt;
      }
      const double slope = num / den;
      raw = v_mean + slope * (k - t_mean);
      break;
    }
    case ForecastMethod::Kind::ExpSmoothing: {
      double level = v.front();
      for (std::size_t t = 1; t < v.size(); ++t) {
        level = method.alpha * v[t] + (1.0 - method.alpha) * level;
      }
      raw = level;
      break;
    }
  }

  const auto [lo, hi] = metric_range(series.metric);
  return std::clamp(raw, lo, hi);
}

ForecastPipelineOutput forecast_pipeline(const VersionSeries& series, int window_first,
                                         int window_last, const MetricConfig& cfg,
                                         const KernelSpec& kernel, const SvmParams& params,
                                         DatasetMode mode, const ForecastMethod& method,
                                         const TrainingSetOptions& train_options) {
  check_window(series, window_first, window_last);
  const int test_index = window_last + 1;
  if (test_index >= series.size()) {
    throw std::invalid_argument("no version after the window to test against");
  }

  const auto& g_n = series.at(window_last).graph;
  const auto& g_test = series.at(test_index).graph;

  // universe: present throughout the window and still present in the test version
  std::vector<std::string> universe = window_universe(series, window_first, window_last);
  {
    const auto& names = g_test.node_names();
    std::vector<std::string> kept;
    std::set_intersection(universe.begin(), universe.end(), names.begin(), names.end(),
                          std::back_inserter(kept));
    universe.swap(kept);
  }
  if (universe.empty()) {
    throw std::invalid_argument("window and test version share no modules");
  }

  ForecastPipelineOutput out;
  out.window_key = series.at(window_first).label + "-" + series.at(window_last).label;
  out.test_label = series.at(test_index).label;

  Dataset training =
      build_training_set(g_n, cfg, train_options, series.at(window_last).label);
  out.model = train(training, kernel, params);

  // per-version engines for the window
  const int window = window_last - window_first + 1;
  std::vector<MetricEngine> engines;
  engines.reserve(static_cast<std::size_t>(window));
  std::vector<std::vector<int>> ids(static_cast<std::size_t>(window));
  for (int i = 0; i < window; ++i) {
    const auto& g = series.at(window_first + i).graph;
    engines.emplace_back(g, cfg);
    for (const auto& name : universe) {
      ids[static_cast<std::size_t>(i)].push_back(g.require_node(name));
    }
  }
  const CommunityPartition* last_partition =
      cfg.include_community_feature ? &engines.back().partition() : nullptr;

  for (std::size_t xi = 0; xi < universe.size(); ++xi) {
    for (std::size_t yi = 0; yi < universe.size(); ++yi) {
      if (xi == yi) continue;
      const std::string& sname = universe[xi];
      const std::string& tname = universe[yi];
      if (mode == DatasetMode::Forward && g_n.has_edge(sname, tname)) continue;

      std::vector<double> features;
      features.reserve(static_cast<std::size_t>(kMetricCount) +
                       (cfg.include_community_feature ? 1 : 0));
      for (MetricId metric : kAllMetrics) {
        FeatureSeries fs;
        fs.source = sname;
        fs.target = tname;
        fs.metric = metric;
        for (int i = 0; i < window; ++i) {
          const auto& idx = ids[static_cast<std::size_t>(i)];
          fs.values.push_back(engines[static_cast<std::size_t>(i)].score(metric, idx[xi], idx[yi]));
        }
        features.push_back(forecast_next(fs, method));
      }
      if (cfg.include_community_feature) {
        const auto& last_ids = ids[static_cast<std::size_t>(window - 1)];
        features.push_back(last_partition->same(last_ids[xi], last_ids[yi]) ? 1.0 : 0.0);
      }

      const bool linked_next = g_test.has_edge(sname, tname);
      const int label = mode == DatasetMode::AsPaper
                            ? (linked_next ? 1 : 0)
                            : ((linked_next && !g_n.has_edge(sname, tname)) ? 1 : 0);
      out.pairs.emplace_back(sname, tname);
      out.scores.push_back(decision_value(out.model, features));
      out.labels.push_back(label);
      out.forecast_features.push_back(std::move(features));
    }
  }
  return out;
}

}  // namespace deplink
