#pragma once

#include <cstddef>
#include <vector>

namespace vaguecam {

// Confusion counts for the positive (biased) class.
struct BinaryMetrics {
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t true_negative = 0;
  std::size_t false_negative = 0;

  double precision() const;
  double recall() const;
  double f1() const;  // 0 when precision + recall == 0
  double accuracy() const;
};

BinaryMetrics binary_metrics(const std::vector<bool>& predicted, const std::vector<bool>& actual);

}  // namespace vaguecam
