#pragma once

#include <string>
#include <vector>

#include "deplink/dataset.hpp"
#include "deplink/graph.hpp"
#include "deplink/metrics.hpp"
#include "deplink/svm.hpp"

namespace deplink {

/// One metric's trajectory for one ordered pair across a version window.
struct FeatureSeries {
  std::string source;
  std::string target;
  MetricId metric;
  std::vector<double> values;  // one per windowed version, oldest first
};

struct ForecastMethod {
  enum class Kind { LinearLs, NaiveLast, ExpSmoothing };
  Kind kind = Kind::LinearLs;
  double alpha = 0.5;  // ExpSmoothing level weight, in (0, 1]

  static ForecastMethod linear_ls() { return {}; }
  static ForecastMethod naive_last() { return {Kind::NaiveLast, 0.5}; }
  static ForecastMethod exp_smoothing(double alpha) { return {Kind::ExpSmoothing, alpha}; }
};

ForecastMethod parse_forecast_method(const std::string& text);
std::string forecast_method_name(const ForecastMethod& method);

/// Per-pair, per-metric series over the windowed snapshots [first, last].
/// The pair universe is every ordered pair of nodes present in *all* windowed
/// versions; series are emitted in lexicographic pair order, metrics in
/// declaration order.
std::vector<FeatureSeries> build_series(const VersionSeries& series, int first, int last,
                                        const MetricConfig& cfg);

/// Next-step estimate for one series. linear_ls fits value against the time
/// index by ordinary least squares and evaluates one step past the window
/// (falling back to the last value for windows shorter than 3); the result is
/// clamped to the metric's documented range.
double forecast_next(const FeatureSeries& series, const ForecastMethod& method);

struct ForecastPipelineOutput {
  std::string window_key;  // "<first label>-<last label>"
  std::string test_label;
  std::vector<NamedEdge> pairs;
  std::vector<std::vector<double>> forecast_features;  // per pair, metric order
  std::vector<double> scores;
  std::vector<int> labels;
  TrainedModel model;
};

/// Approach 3: train on the final windowed version, score test instances
/// whose features are forecast from the window, label them from the version
/// after the window. The pair universe per mode matches build_test_set; the
/// community feature, when enabled, is taken from the final windowed version.
ForecastPipelineOutput forecast_pipeline(const VersionSeries& series, int window_first,
                                         int window_last, const MetricConfig& cfg,
                                         const KernelSpec& kernel, const SvmParams& params,
                                         DatasetMode mode, const ForecastMethod& method,
                                         const TrainingSetOptions& train_options = {});

}  // namespace deplink
