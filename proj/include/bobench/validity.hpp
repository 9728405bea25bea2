#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bobench/rng.hpp"

namespace bobench {

// Distribution of random-search outcomes for f(x) = 1 - |x| on [-1, 1],
// whose values are uniform on [0, 1]. The best of T draws is the T-th order
// statistic (maximize) or the first (minimize).
enum class Extremum { Maximize, Minimize };

struct OrderStatSpec {
  int evaluations = 1;  // T
  Extremum mode = Extremum::Maximize;
};

double order_stat_cdf(const OrderStatSpec& spec, double y);

// Inverse-CDF draw u^(1/T) of the maximum of T uniforms.
double order_stat_from_uniform(int evaluations, double u);
double sample_order_stat(const OrderStatSpec& spec, Rng& rng);

struct BerryEsseenMoments {
  double mean = 0.0;
  double variance = 0.0;
  double rho = 0.0;       // E|V|^3 with V the centered order statistic
  double quotient = 0.0;  // rho / sigma^3
};

BerryEsseenMoments be_moments(int evaluations);

// Closed-form rho / sigma^3 evaluated directly, not via be_moments.
double be_quotient(int evaluations);

// Limit of be_quotient as T grows: 12/e - 2.
double be_quotient_limit();

using Cdf = std::function<double(double)>;

struct KsResult {
  double statistic = 0.0;
  double critical_value = 0.0;
  bool reject = false;
};

// Two-sided one-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::span<const double> sample, const Cdf& cdf);

// Critical value at significance .05: tabulated for n < 35, 1.358/sqrt(n) above.
double ks_critical_value_05(std::size_t n);

KsResult ks_test_05(std::span<const double> sample, const Cdf& cdf);

enum class Standardization {
  Analytic,   // known mean T/(T+1) and variance
  Estimated,  // sample mean and standard deviation of the KS sample
};

enum class DrawSource {
  OrderStatistic,
  Normal,  // calibration control: standard normal draws
};

struct KsExperimentConfig {
  std::vector<int> t_values;
  std::vector<int> n_values;
  int tests_per_cell = 800;
  int samples_per_test = 500;
  std::uint64_t seed = 0;
  Standardization standardization = Standardization::Analytic;
  DrawSource source = DrawSource::OrderStatistic;
};

struct KsCell {
  int t = 0;
  int n = 0;
  int tests = 0;
  int rejections = 0;
  double rejection_rate() const { return tests ? static_cast<double>(rejections) / tests : 0.0; }
};

// Each (T, n) cell draws from its own stream seeded from (seed, T, n), so
// cells are independent of evaluation order.
std::vector<KsCell> ks_normality_experiment(const KsExperimentConfig& cfg);

std::string ks_cells_to_csv(const std::vector<KsCell>& cells);

}  // namespace bobench
