#pragma once

#include <optional>
#include <span>
#include <vector>

namespace deplink {

struct PrPoint {
  double threshold;
  double recall;
  double precision;
};

/// Precision-recall curve over descending score thresholds. Tied scores are
/// processed as one group, so the curve is independent of the input order.
/// Throws std::invalid_argument when there is no positive instance.
std::vector<PrPoint> pr_curve(std::span<const double> scores, std::span<const int> labels);

/// Average precision with step interpolation: sum of (R_k - R_{k-1}) * P_k
/// over the curve points, R_0 = 0.
double aupr(const std::vector<PrPoint>& curve);

double positive_aupr(std::span<const double> scores, std::span<const int> labels);

struct ClassAuprs {
  double positive;
  double negative;
  double weighted;  // support-weighted mean of the two
};
// Negative-class AUPR ranks by negated score with the labels flipped.
// Requires both classes.
ClassAuprs class_auprs(std::span<const double> scores, std::span<const int> labels);

struct Confusion {
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;
};
// Predicted positive iff score > threshold (strict).
Confusion confusion_at(std::span<const double> scores, std::span<const int> labels,
                       double threshold = 0.0);

struct EvalReport {
  double positive_aupr = 0.0;
  double negative_aupr = 0.0;
  double weighted_aupr = 0.0;
  std::optional<double> precision_at_n;
  Confusion confusion;
  long positives = 0;
  long negatives = 0;
};

EvalReport evaluate_scores(std::span<const double> scores, std::span<const int> labels);

}  // namespace deplink
