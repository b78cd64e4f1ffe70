#include "vaguecam/metrics.hpp"

#include "vaguecam/error.hpp"

namespace vaguecam {

double BinaryMetrics::precision() const {
  const std::size_t den = true_positive + false_positive;
  return den == 0 ? 0.0 : static_cast<double>(true_positive) / static_cast<double>(den);
}

double BinaryMetrics::recall() const {
  const std::size_t den = true_positive + false_negative;
  return den == 0 ? 0.0 : static_cast<double>(true_positive) / static_cast<double>(den);
}

double BinaryMetrics::f1() const {
  const double p = precision();
  const double r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

double BinaryMetrics::accuracy() const {
  const std::size_t n = true_positive + false_positive + true_negative + false_negative;
  return n == 0 ? 0.0
                : static_cast<double>(true_positive + true_negative) / static_cast<double>(n);
}

BinaryMetrics binary_metrics(const std::vector<bool>& predicted, const std::vector<bool>& actual) {
  if (predicted.size() != actual.size()) {
    throw Error(ErrorCode::kShapeMismatch, "prediction and label counts differ");
  }
  BinaryMetrics m;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] && actual[i]) ++m.true_positive;
    else if (predicted[i]) ++m.false_positive;
    else if (actual[i]) ++m.false_negative;
    else ++m.true_negative;
  }
  return m;
}

}  // namespace vaguecam
