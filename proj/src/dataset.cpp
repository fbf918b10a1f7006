#include "deplink/dataset.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "deplink/io.hpp"
#include "deplink/rng.hpp"

namespace deplink {

using nlohmann::json;
using nlohmann::ordered_json;

const std::string& dataset_mode_name(DatasetMode mode) {
  static const std::string as_paper = "as_paper";
  static const std::string forward = "forward";
  return mode == DatasetMode::AsPaper ? as_paper : forward;
}

DatasetMode parse_dataset_mode(const std::string& name) {
  if (name == "as_paper" || name == "as-paper") return DatasetMode::AsPaper;
  if (name == "forward") return DatasetMode::Forward;
  throw std::invalid_argument("unknown dataset mode: '" + name + "'");
}

int Dataset::count(int label) const {
  return static_cast<int>(std::count_if(instances.begin(), instances.end(),
                                        [label](const Instance& i) { return i.label == label; }));
}

namespace {

void apply_class_weights(Dataset& dataset) {
  const double total = static_cast<double>(dataset.instances.size());
  const double positives = dataset.count(1);
  const double negatives = dataset.count(0);
  const double w_pos = total / (2.0 * positives);
  const double w_neg = total / (2.0 * negatives);
  for (auto& inst : dataset.instances) inst.weight = inst.label == 1 ? w_pos : w_neg;
}

}  // namespace

Dataset build_training_set(const DependencyGraph& g, const MetricConfig& cfg,
                           const TrainingSetOptions& options, const std::string& graph_label) {
  const int n = g.node_count();
  if (n < 3) throw std::invalid_argument("training graph needs at least 3 modules");
  const long long pair_count = static_cast<long long>(n) * (n - 1);
  if (g.edge_count() == 0 || g.edge_count() == pair_count) {
    throw std::invalid_argument("training graph must have both linked and unlinked pairs");
  }

  MetricEngine engine(g, cfg);
  Dataset dataset;
  dataset.feature_names = feature_names(cfg.include_community_feature);
  dataset.feature_graph = graph_label;
  dataset.label_graph = graph_label;
  dataset.mode = "train";

  // Undersampling picks the kept negatives up front so that assembly can
  // still run in one lexicographic pass.
  std::set<std::pair<int, int>> kept_negatives;
  bool sample_negatives = false;
  if (options.strategy.kind == ImbalanceStrategy::Kind::Undersample) {
    if (options.strategy.negative_ratio <= 0.0) {
      throw std::invalid_argument("negative_ratio must be > 0");
    }
    sample_negatives = true;
    std::vector<std::pair<int, int>> negatives;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (x == y || g.has_edge(x, y)) continue;
        negatives.emplace_back(x, y);
      }
    }
    const auto want = static_cast<std::size_t>(
        std::llround(options.strategy.negative_ratio * g.edge_count()));
    Rng rng(options.strategy.seed);
    rng.shuffle(negatives);
    if (want < negatives.size()) negatives.resize(want);
    if (negatives.empty()) {
      throw std::invalid_argument("undersampling removed every negative instance");
    }
    kept_negatives.insert(negatives.begin(), negatives.end());
  }

  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      const bool linked = g.has_edge(x, y);
      if (!linked && sample_negatives && !kept_negatives.count({x, y})) continue;

      Instance inst;
      inst.source = g.name_of(x);
      inst.target = g.name_of(y);
      inst.label = linked ? 1 : 0;
      if (linked && options.strict_positive_features) {
        DependencyGraph reduced = without_edge(g, inst.source, inst.target);
        inst.features = feature_vector(reduced, inst.source, inst.target, cfg,
                                       cfg.include_community_feature ? &engine.partition()
                                                                     : nullptr);
      } else {
        inst.features = engine.features(x, y);
      }
      dataset.instances.push_back(std::move(inst));
    }
  }

  if (options.strategy.kind == ImbalanceStrategy::Kind::ClassWeights) {
    apply_class_weights(dataset);
  }
  return dataset;
}

Dataset build_test_set(const DependencyGraph& g_n, const DependencyGraph& g_next,
                       const MetricConfig& cfg, DatasetMode mode, const std::string& label_n,
                       const std::string& label_next) {
  const GraphDelta d = delta(g_n, g_next);
  if (d.shared_nodes.empty()) {
    throw std::invalid_argument("versions share no modules; cannot build a test set");
  }

  Dataset dataset;
  dataset.feature_names = feature_names(cfg.include_community_feature);
  dataset.label_graph = label_next;
  dataset.mode = dataset_mode_name(mode);

  if (mode == DatasetMode::AsPaper) {
    dataset.feature_graph = label_next;
    MetricEngine engine(g_next, cfg);
    std::vector<int> ids;
    for (const auto& name : d.shared_nodes) ids.push_back(g_next.require_node(name));
    std::sort(ids.begin(), ids.end());
    for (int x : ids) {
      for (int y : ids) {
        if (x == y) continue;
        Instance inst;
        inst.source = g_next.name_of(x);
        inst.target = g_next.name_of(y);
        inst.features = engine.features(x, y);
        inst.label = g_next.has_edge(x, y) ? 1 : 0;
        dataset.instances.push_back(std::move(inst));
      }
    }
  } else {
    dataset.feature_graph = label_n;
    MetricEngine engine(g_n, cfg);
    std::set<NamedEdge> added(d.added_edges.begin(), d.added_edges.end());
    for (const auto& [sname, tname] : candidate_pairs(g_n, d.shared_nodes)) {
      Instance inst;
      inst.source = sname;
      inst.target = tname;
      inst.features = engine.features(g_n.require_node(sname), g_n.require_node(tname));
      inst.label = added.count({sname, tname}) ? 1 : 0;
      dataset.instances.push_back(std::move(inst));
    }
  }
  return dataset;
}

namespace {

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

double parse_double(const std::string& field, int line_no) {
  double value = 0.0;
  const auto* begin = field.data();
  const auto* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("bad numeric field '" + field + "'", line_no);
  }
  return value;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

}  // namespace

void write_dataset(const Dataset& dataset, const std::filesystem::path& csv_path) {
  std::ostringstream out;
  out << "source,target";
  for (const auto& name : dataset.feature_names) out << ',' << name;
  out << ",label\n";
  for (const auto& inst : dataset.instances) {
    out << inst.source << ',' << inst.target;
    for (double v : inst.features) out << ',' << format_double(v);
    out << ',' << inst.label << '\n';
  }
  write_text_file(csv_path, out.str());

  ordered_json sidecar;
  sidecar["schema_version"] = 1;
  sidecar["provenance"] = {{"feature_graph", dataset.feature_graph},
                           {"label_graph", dataset.label_graph},
                           {"mode", dataset.mode}};
  sidecar["feature_names"] = dataset.feature_names;
  double w_pos = 1.0;
  double w_neg = 1.0;
  for (const auto& inst : dataset.instances) {
    (inst.label == 1 ? w_pos : w_neg) = inst.weight;
  }
  sidecar["class_weights"] = {{"positive", w_pos}, {"negative", w_neg}};
  sidecar["instances"] = dataset.instances.size();
  write_text_file(csv_path.string() + ".json", sidecar.dump(2) + "\n");
}

Dataset read_dataset(const std::filesystem::path& csv_path) {
  const std::string text = read_text_file(csv_path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty dataset file: " + csv_path.string());

  auto header = split(line, ',');
  if (header.size() < 4 || header[0] != "source" || header[1] != "target" ||
      header.back() != "label") {
    throw ParseError("unexpected dataset header: '" + line + "'");
  }

  Dataset dataset;
  dataset.feature_names.assign(header.begin() + 2, header.end() - 1);

  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields", line_no);
    }
    Instance inst;
    inst.source = fields[0];
    inst.target = fields[1];
    for (std::size_t i = 2; i + 1 < fields.size(); ++i) {
      inst.features.push_back(parse_double(fields[i], line_no));
    }
    inst.label = fields.back() == "1" ? 1 : 0;
    dataset.instances.push_back(std::move(inst));
  }

  const auto sidecar_path = std::filesystem::path(csv_path.string() + ".json");
  if (std::filesystem::exists(sidecar_path)) {
    const json sidecar = json::parse(read_text_file(sidecar_path));
    const auto& prov = sidecar.at("provenance");
    dataset.feature_graph = prov.value("feature_graph", std::string());
    dataset.label_graph = prov.value("label_graph", std::string());
    dataset.mode = prov.value("mode", std::string());
    const double w_pos = sidecar.at("class_weights").at("positive").get<double>();
    const double w_neg = sidecar.at("class_weights").at("negative").get<double>();
    for (auto& inst : dataset.instances) inst.weight = inst.label == 1 ? w_pos : w_neg;
  }
  return dataset;
}

}  // namespace deplink
