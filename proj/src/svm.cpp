#include "deplink/svm.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "deplink/io.hpp"
#include "deplink/rng.hpp"

namespace deplink {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<double> Standardization::transform(const std::vector<double>& raw) const {
  std::vector<double> z(raw.size());
  for (std::size_t j = 0; j < raw.size(); ++j) {
    z[j] = stddev[j] > 0.0 ? (raw[j] - mean[j]) / stddev[j] : 0.0;
  }
  return z;
}

namespace {

constexpr double kBoundSlack = 1e-12;

double rbf(const std::vector<double>& u, const std::vector<double>& v, double gamma) {
  double dist2 = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double d = u[j] - v[j];
    dist2 += d * d;
  }
  return std::exp(-gamma * dist2);
}

// Dual solver state. The kernel matrix is materialized when it fits, and
// recomputed per entry otherwise.
class Solver {
 public:
  Solver(std::vector<std::vector<double>> x, std::vector<double> y, std::vector<double> c,
         double gamma, const SvmParams& params)
      : x_(std::move(x)),
        y_(std::move(y)),
        c_(std::move(c)),
        gamma_(gamma),
        params_(params),
        n_(x_.size()),
        rng_(params.seed) {
    alpha_.assign(n_, 0.0);
    errors_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) errors_[i] = -y_[i];  // f == 0 initially

    if (n_ * n_ <= kCacheLimit) {
      kernel_cache_.resize(n_ * n_);
      for (std::size_t i = 0; i < n_; ++i) {
        kernel_cache_[i * n_ + i] = 1.0;
        for (std::size_t j = i + 1; j < n_; ++j) {
          const double k = rbf(x_[i], x_[j], gamma_);
          kernel_cache_[i * n_ + j] = k;
          kernel_cache_[j * n_ + i] = k;
        }
      }
    }
  }

  void run(TrainingDiagnostics* diagnostics) {
    bool examine_all = true;
    int quiet_full_sweeps = 0;
    while (quiet_full_sweeps < params_.max_passes && steps_ < params_.max_iters) {
      int changed = 0;
      if (examine_all) {
        for (std::size_t i = 0; i < n_ && steps_ < params_.max_iters; ++i) {
          changed += examine(i);
        }
        quiet_full_sweeps = changed == 0 ? quiet_full_sweeps + 1 : 0;
        examine_all = false;
      } else {
        for (std::size_t i = 0; i < n_ && steps_ < params_.max_iters; ++i) {
          if (is_free(i)) changed += examine(i);
        }
        if (changed == 0) examine_all = true;
      }
    }
    if (diagnostics != nullptr) {
      diagnostics->alphas = alpha_;
      diagnostics->box = c_;
      diagnostics->update_steps = steps_;
      diagnostics->converged = steps_ < params_.max_iters;
    }
  }

  const std::vector<double>& alphas() const { return alpha_; }
  double bias() const { return bias_; }
  const std::vector<std::vector<double>>& points() const { return x_; }
  const std::vector<double>& labels() const { return y_; }

 private:
  static constexpr std::size_t kCacheLimit = 16u * 1024u * 1024u;  // doubles

  double kernel(std::size_t i, std::size_t j) const {
    if (!kernel_cache_.empty()) return kernel_cache_[i * n_ + j];
    return rbf(x_[i], x_[j], gamma_);
  }

  bool is_free(std::size_t i) const {
    return alpha_[i] > 0.0 && alpha_[i] < c_[i];
  }

  int examine(std::size_t i2) {
    const double r2 = errors_[i2] * y_[i2];  // y*f - 1
    const bool violated = (r2 < -params_.tolerance && alpha_[i2] < c_[i2]) ||
                          (r2 > params_.tolerance && alpha_[i2] > 0.0);
    if (!violated) return 0;

    // best |E1 - E2| over the free multipliers
    std::size_t best = n_;
    double best_gap = -1.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!is_free(i)) continue;
      const double gap = std::abs(errors_[i] - errors_[i2]);
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    if (best < n_ && step(best, i2)) return 1;

    const std::size_t offset = rng_.below(n_ == 0 ? 1 : n_);
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t i1 = (k + offset) % n_;
      if (is_free(i1) && step(i1, i2)) return 1;
    }
    const std::size_t offset2 = rng_.below(n_ == 0 ? 1 : n_);
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t i1 = (k + offset2) % n_;
      if (step(i1, i2)) return 1;
    }
    return 0;
  }

  bool step(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    const double y1 = y_[i1];
    const double y2 = y_[i2];
    const double a1_old = alpha_[i1];
    const double a2_old = alpha_[i2];
    const double s = y1 * y2;

    double low;
    double high;
    if (y1 != y2) {
      low = std::max(0.0, a2_old - a1_old);
      high = std::min(c_[i2], c_[i1] + a2_old - a1_old);
    } else {
      low = std::max(0.0, a1_old + a2_old - c_[i1]);
      high = std::min(c_[i2], a1_old + a2_old);
    }
    if (high - low < kBoundSlack) return false;

    const double k11 = kernel(i1, i1);
    const double k12 = kernel(i1, i2);
    const double k22 = kernel(i2, i2);
    const double eta = k11 + k22 - 2.0 * k12;
    const double e1 = errors_[i1];
    const double e2 = errors_[i2];

    double a2;
    if (eta > kBoundSlack) {
      a2 = std::clamp(a2_old + y2 * (e1 - e2) / eta, low, high);
    } else {
      // flat objective along the constraint line: move with the gradient
      const double gradient = y2 * (e1 - e2);
      if (gradient > 0.0) {
        a2 = high;
      } else if (gradient < 0.0) {
        a2 = low;
      } else {
        return false;
      }
    }
    if (std::abs(a2 - a2_old) < 1e-10 * (a2 + a2_old + 1e-10)) return false;

    double a1 = a1_old + s * (a2_old - a2);
    // snap to the box so bound checks stay exact
    if (a1 < kBoundSlack) a1 = 0.0;
    if (a1 > c_[i1] - kBoundSlack) a1 = c_[i1];
    if (a2 < kBoundSlack) a2 = 0.0;
    if (a2 > c_[i2] - kBoundSlack) a2 = c_[i2];

    const double d1 = y1 * (a1 - a1_old);
    const double d2 = y2 * (a2 - a2_old);
    const double b1 = bias_ - e1 - d1 * k11 - d2 * k12;
    const double b2 = bias_ - e2 - d1 * k12 - d2 * k22;
    double new_bias;
    if (a1 > 0.0 && a1 < c_[i1]) {
      new_bias = b1;
    } else if (a2 > 0.0 && a2 < c_[i2]) {
      new_bias = b2;
    } else {
      new_bias = 0.5 * (b1 + b2);
    }

    const double bias_delta = new_bias - bias_;
    for (std::size_t k = 0; k < n_; ++k) {
      errors_[k] += d1 * kernel(i1, k) + d2 * kernel(i2, k) + bias_delta;
    }
    alpha_[i1] = a1;
    alpha_[i2] = a2;
    bias_ = new_bias;
    ++steps_;
    return true;
  }

  std::vector<std::vector<double>> x_;
  std::vector<double> y_;
  std::vector<double> c_;
  double gamma_;
  SvmParams params_;
  std::size_t n_;
  Rng rng_;

  std::vector<double> alpha_;
  std::vector<double> errors_;  // f(x_i) - y_i
  std::vector<double> kernel_cache_;
  double bias_ = 0.0;
  int steps_ = 0;
};

}  // namespace

TrainedModel train(const Dataset& dataset, const KernelSpec& kernel, const SvmParams& params,
                   TrainingDiagnostics* diagnostics) {
  const std::size_t n = dataset.instances.size();
  if (n < 2) throw std::invalid_argument("training needs at least two instances");
  if (params.cost <= 0.0) throw std::invalid_argument("cost must be > 0");
  const std::size_t arity = dataset.instances.front().features.size();

  int positives = 0;
  for (const auto& inst : dataset.instances) {
    if (inst.features.size() != arity) {
      throw std::invalid_argument("inconsistent feature arity in dataset");
    }
    for (double v : inst.features) {
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature value");
    }
    if (inst.weight <= 0.0) throw std::invalid_argument("instance weight must be > 0");
    positives += inst.label == 1;
  }
  if (positives == 0 || positives == static_cast<int>(n)) {
    throw std::invalid_argument("training set must contain both classes");
  }

  Standardization stats;
  stats.mean.assign(arity, 0.0);
  stats.stddev.assign(arity, 0.0);
  for (const auto& inst : dataset.instances) {
    for (std::size_t j = 0; j < arity; ++j) stats.mean[j] += inst.features[j];
  }
  for (std::size_t j = 0; j < arity; ++j) stats.mean[j] /= static_cast<double>(n);
  for (const auto& inst : dataset.instances) {
    for (std::size_t j = 0; j < arity; ++j) {
      const double d = inst.features[j] - stats.mean[j];
      stats.stddev[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < arity; ++j) {
    stats.stddev[j] = std::sqrt(stats.stddev[j] / static_cast<double>(n));
    if (stats.stddev[j] < 1e-12) stats.stddev[j] = 0.0;  // constant feature
  }

  const double gamma = kernel.gamma > 0.0 ? kernel.gamma : 1.0 / static_cast<double>(arity);

  std::vector<std::vector<double>> x;
  std::vector<double> y;
  std::vector<double> c;
  x.reserve(n);
  y.reserve(n);
  c.reserve(n);
  for (const auto& inst : dataset.instances) {
    x.push_back(stats.transform(inst.features));
    y.push_back(inst.label == 1 ? 1.0 : -1.0);
    c.push_back(params.cost * inst.weight);
  }

  Solver solver(std::move(x), std::move(y), std::move(c), gamma, params);
  solver.run(diagnostics);

  TrainedModel model;
  model.gamma = gamma;
  model.bias = solver.bias();
  model.standardization = std::move(stats);
  model.feature_names = dataset.feature_names;
  for (std::size_t i = 0; i < n; ++i) {
    if (solver.alphas()[i] > 0.0) {
      model.support_vectors.push_back(solver.points()[i]);
      model.coefficients.push_back(solver.alphas()[i] * solver.labels()[i]);
    }
  }
  return model;
}

double decision_value(const TrainedModel& model, const std::vector<double>& features) {
  if (static_cast<int>(features.size()) != model.arity()) {
    throw std::invalid_argument("feature arity does not match the model");
  }
  const std::vector<double> z = model.standardization.transform(features);
  double sum = model.bias;
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
    sum += model.coefficients[i] * rbf(model.support_vectors[i], z, model.gamma);
  }
  return sum;
}

bool predict(const TrainedModel& model, const std::vector<double>& features, double threshold) {
  return decision_value(model, features) > threshold;
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  ordered_json doc;
  doc["schema_version"] = 1;
  doc["kernel"] = {{"kind", "rbf"}, {"gamma", model.gamma}};
  doc["bias"] = model.bias;
  doc["standardization"] = {{"mean", model.standardization.mean},
                            {"stddev", model.standardization.stddev}};
  doc["feature_names"] = model.feature_names;
  doc["coefficients"] = model.coefficients;
  doc["support_vectors"] = model.support_vectors;
  write_text_file(path, doc.dump(2) + "\n");
}

TrainedModel load_model(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError("model " + path.string() + ": " + e.what());
  }

  TrainedModel model;
  model.gamma = doc.at("kernel").at("gamma").get<double>();
  model.bias = doc.at("bias").get<double>();
  model.standardization.mean = doc.at("standardization").at("mean").get<std::vector<double>>();
  model.standardization.stddev =
      doc.at("standardization").at("stddev").get<std::vector<double>>();
  model.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
  model.coefficients = doc.at("coefficients").get<std::vector<double>>();
  model.support_vectors =
      doc.at("support_vectors").get<std::vector<std::vector<double>>>();

  const std::size_t arity = model.standardization.mean.size();
  if (model.standardization.stddev.size() != arity) {
    throw ParseError("model standardization arrays disagree on arity");
  }
  if (model.gamma <= 0.0 || !std::isfinite(model.gamma)) {
    throw ParseError("model gamma must be a positive finite number");
  }
  if (model.support_vectors.size() != model.coefficients.size()) {
    throw ParseError("model has " + std::to_string(model.support_vectors.size()) +
                     " support vectors but " + std::to_string(model.coefficients.size()) +
                     " coefficients");
  }
  for (const auto& sv : model.support_vectors) {
    if (sv.size() != arity) throw ParseError("support vector arity mismatch");
  }
  for (double sd : model.standardization.stddev) {
    if (sd < 0.0 || !std::isfinite(sd)) throw ParseError("invalid stddev entry");
  }
  return model;
}

}  // namespace deplink
