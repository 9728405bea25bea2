#include "bobench/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace bobench {

BestSeenTrace best_seen(std::span<const double> raw) {
  if (raw.empty()) throw std::invalid_argument("best_seen: empty input");
  BestSeenTrace t;
  t.values_.resize(raw.size());
  double m = raw[0];
  for (std::size_t i = 0; i < raw.size(); ++i) {
    m = std::max(m, raw[i]);
    t.values_[i] = m;
  }
  return t;
}

double best_found(std::span<const double> trace) {
  if (trace.empty()) throw std::invalid_argument("best_found: empty trace");
  return trace.back();
}

double auc(std::span<const double> trace, double f_lb) {
  if (trace.empty()) throw std::invalid_argument("auc: empty trace");
  double sum = 0.0;
  for (double v : trace) {
    if (v < f_lb) throw std::invalid_argument("auc: lower bound exceeds a trace value");
    sum += v - f_lb;
  }
  // The mean of a nondecreasing trace lies between its ends; clamp away
  // rounding that would step outside.
  double mean = sum / static_cast<double>(trace.size());
  if (std::is_sorted(trace.begin(), trace.end())) {
    mean = std::clamp(mean, trace.front() - f_lb, trace.back() - f_lb);
  }
  return mean;
}

std::vector<double> incumbent_trace(std::span<const double> observed,
                                    std::span<const double> true_values) {
  if (observed.empty() || observed.size() != true_values.size()) {
    throw std::invalid_argument("incumbent_trace: traces must be nonempty and of equal length");
  }
  std::vector<double> out(observed.size());
  std::size_t inc = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (observed[i] > observed[inc]) inc = i;
    out[i] = true_values[inc];
  }
  return out;
}

MetricPair metric_pair(std::span<const double> trace, double f_lb) {
  return {best_found(trace), auc(trace, f_lb)};
}

}  // namespace bobench
