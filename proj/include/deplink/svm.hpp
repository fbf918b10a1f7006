#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "deplink/dataset.hpp"

namespace deplink {

struct KernelSpec {
  double gamma = 0.0;  // <= 0 resolves to 1 / feature arity at training time
};

struct SvmParams {
  double cost = 1.0;      // per-instance box constraint is cost * weight
  double tolerance = 1e-3;
  int max_passes = 10;    // consecutive update-free full sweeps before stopping
  int max_iters = 10000;  // cap on successful multiplier-pair updates
  std::uint64_t seed = 0;
};

struct Standardization {
  std::vector<double> mean;
  std::vector<double> stddev;  // 0 marks a constant feature, transformed to 0

  std::vector<double> transform(const std::vector<double>& raw) const;
};

/// Soft-margin RBF-kernel SVM state. Scores are raw decision values
/// sum_i alpha_i y_i K(sv_i, x) + bias over standardized features; there is
/// no probability calibration, the evaluation machinery only needs a ranking.
struct TrainedModel {
  std::vector<std::vector<double>> support_vectors;  // standardized
  std::vector<double> coefficients;                  // alpha_i * y_i
  double bias = 0.0;
  double gamma = 0.0;
  Standardization standardization;
  std::vector<std::string> feature_names;

  int arity() const { return static_cast<int>(standardization.mean.size()); }
};

// Per-instance training state, for KKT inspection in tests and diagnostics.
struct TrainingDiagnostics {
  std::vector<double> alphas;  // one per training instance, in dataset order
  std::vector<double> box;     // the matching upper bounds C_i
  int update_steps = 0;
  bool converged = false;  // stopped by quiet sweeps rather than max_iters
};

/// Sequential minimal optimization on the dual problem: repeatedly pick a
/// KKT-violating multiplier (full sweeps alternating with sweeps over the
/// non-bound subset), pair it with the multiplier of maximal |E1 - E2| (then
/// seeded random fallbacks), and solve the two-variable subproblem
/// analytically. Deterministic for a fixed params.seed.
TrainedModel train(const Dataset& dataset, const KernelSpec& kernel, const SvmParams& params,
                   TrainingDiagnostics* diagnostics = nullptr);

double decision_value(const TrainedModel& model, const std::vector<double>& features);

bool predict(const TrainedModel& model, const std::vector<double>& features,
             double threshold = 0.0);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace deplink
