#include "deplink/eval.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace deplink {

std::vector<PrPoint> pr_curve(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size() || scores.empty()) {
    throw std::invalid_argument("scores and labels must be non-empty and equally sized");
  }
  const long total_positives = std::count(labels.begin(), labels.end(), 1);
  if (total_positives == 0) {
    throw std::invalid_argument("precision-recall curve needs at least one positive");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&scores](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  std::vector<PrPoint> curve;
  long tp = 0;
  long predicted = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double threshold = scores[order[i]];
    // absorb the whole tie group before emitting a point
    while (i < order.size() && scores[order[i]] == threshold) {
      ++predicted;
      tp += labels[order[i]] == 1;
      ++i;
    }
    curve.push_back({threshold, static_cast<double>(tp) / static_cast<double>(total_positives),
                     static_cast<double>(tp) / static_cast<double>(predicted)});
  }
  return curve;
}

double aupr(const std::vector<PrPoint>& curve) {
  double area = 0.0;
  double prev_recall = 0.0;
  for (const auto& point : curve) {
    area += (point.recall - prev_recall) * point.precision;
    prev_recall = point.recall;
  }
  return area;
}

double positive_aupr(std::span<const double> scores, std::span<const int> labels) {
  return aupr(pr_curve(scores, labels));
}

ClassAuprs class_auprs(std::span<const double> scores, std::span<const int> labels) {
  const long positives = std::count(labels.begin(), labels.end(), 1);
  const long negatives = static_cast<long>(labels.size()) - positives;
  if (positives == 0 || negatives == 0) {
    throw std::invalid_argument("weighted AUPR needs both classes");
  }

  std::vector<double> negated(scores.size());
  std::vector<int> flipped(labels.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    negated[i] = -scores[i];
    flipped[i] = 1 - labels[i];
  }

  ClassAuprs result{};
  result.positive = positive_aupr(scores, labels);
  result.negative = positive_aupr(negated, flipped);
  result.weighted = (static_cast<double>(positives) * result.positive +
                     static_cast<double>(negatives) * result.negative) /
                    static_cast<double>(labels.size());
  return result;
}

Confusion confusion_at(std::span<const double> scores, std::span<const int> labels,
                       double threshold) {
  Confusion c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] > threshold;
    if (labels[i] == 1) {
      (predicted ? c.tp : c.fn) += 1;
    } else {
      (predicted ? c.fp : c.tn) += 1;
    }
  }
  return c;
}

EvalReport evaluate_scores(std::span<const double> scores, std::span<const int> labels) {
  EvalReport report;
  const ClassAuprs auprs = class_auprs(scores, labels);
  report.positive_aupr = auprs.positive;
  report.negative_aupr = auprs.negative;
  report.weighted_aupr = auprs.weighted;
  report.confusion = confusion_at(scores, labels);
  report.positives = std::count(labels.begin(), labels.end(), 1);
  report.negatives = static_cast<long>(labels.size()) - report.positives;
  return report;
}

}  // namespace deplink
