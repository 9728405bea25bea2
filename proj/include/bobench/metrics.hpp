#pragma once

#include <span>
#include <vector>

namespace bobench {

// Running maximum of raw objective values; nondecreasing by construction.
class BestSeenTrace {
 public:
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  operator std::span<const double>() const { return values_; }  // NOLINT

 private:
  friend BestSeenTrace best_seen(std::span<const double> raw);
  std::vector<double> values_;
};

struct MetricPair {
  double best_found = 0.0;
  double auc = 0.0;
  bool operator==(const MetricPair&) const = default;
};

// Throws std::invalid_argument on empty input.
BestSeenTrace best_seen(std::span<const double> raw);

// Last trace entry.
double best_found(std::span<const double> trace);

// (1/T) * sum_i (trace[i] - f_lb). Requires f_lb <= min(trace).
double auc(std::span<const double> trace, double f_lb);

// For each step i, the TRUE value of the point with the highest OBSERVED
// value among the first i evaluations (first occurrence wins ties). Equals
// best_seen(true_values) when observations are noiseless, but may decrease
// under noise when a worse point is misjudged as the new incumbent.
std::vector<double> incumbent_trace(std::span<const double> observed,
                                    std::span<const double> true_values);

MetricPair metric_pair(std::span<const double> trace, double f_lb);

}  // namespace bobench
