#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "deplink/graph.hpp"
#include "deplink/metrics.hpp"

namespace deplink {

// How test instances are drawn from a version pair.
//   AsPaper: every ordered pair over the shared modules, features computed on
//            the *test* graph, label = edge exists there. Reproduces the
//            original full-graph protocol; the test features can see the
//            edges being labeled.
//   Forward: only non-edges of the training graph, features computed on the
//            training graph, label = edge was added. Leakage-free.
enum class DatasetMode { AsPaper, Forward };

const std::string& dataset_mode_name(DatasetMode mode);
DatasetMode parse_dataset_mode(const std::string& name);

struct ImbalanceStrategy {
  enum class Kind { ClassWeights, Undersample, None };
  Kind kind = Kind::ClassWeights;
  double negative_ratio = 1.0;  // Undersample: negatives kept per positive
  std::uint64_t seed = 0;

  static ImbalanceStrategy class_weights() { return {}; }
  static ImbalanceStrategy none() { return {Kind::None, 1.0, 0}; }
  static ImbalanceStrategy undersample(double ratio, std::uint64_t seed) {
    return {Kind::Undersample, ratio, seed};
  }
};

struct Instance {
  std::string source;
  std::string target;
  FeatureVector features;
  int label = 0;  // 1 = positive (linked), 0 = negative
  double weight = 1.0;
};

struct Dataset {
  std::vector<Instance> instances;
  std::vector<std::string> feature_names;
  // provenance
  std::string feature_graph;  // version whose graph produced the features
  std::string label_graph;    // version whose edges produced the labels
  std::string mode;           // "train", "as_paper" or "forward"

  int count(int label) const;
};

struct TrainingSetOptions {
  ImbalanceStrategy strategy = ImbalanceStrategy::class_weights();
  // Recompute each positive pair's features with its own edge removed.
  bool strict_positive_features = false;
};

/// Labeled instances from a single graph: the edges are the positive class,
/// every other ordered pair the negative class, features computed in place.
/// Instances come out in lexicographic pair order.
Dataset build_training_set(const DependencyGraph& g, const MetricConfig& cfg,
                           const TrainingSetOptions& options = {},
                           const std::string& graph_label = "");

Dataset build_test_set(const DependencyGraph& g_n, const DependencyGraph& g_next,
                       const MetricConfig& cfg, DatasetMode mode,
                       const std::string& label_n = "", const std::string& label_next = "");

// CSV schema: source,target,<feature columns>,label plus a JSON sidecar
// (same path with ".json" appended) holding provenance and class weights.
void write_dataset(const Dataset& dataset, const std::filesystem::path& csv_path);
Dataset read_dataset(const std::filesystem::path& csv_path);

}  // namespace deplink
