#include "bobench/validity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bobench/stattests.hpp"

namespace bobench {

namespace {

void check_t(int t) {
  if (t < 1) throw std::invalid_argument("evaluation count must be >= 1");
}

}  // namespace

double order_stat_cdf(const OrderStatSpec& spec, double y) {
  check_t(spec.evaluations);
  if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("order_stat_cdf: y outside [0, 1]");
  if (spec.mode == Extremum::Maximize) return std::pow(y, spec.evaluations);
  return 1.0 - std::pow(1.0 - y, spec.evaluations);
}

double order_stat_from_uniform(int evaluations, double u) {
  check_t(evaluations);
  return std::pow(u, 1.0 / evaluations);
}

double sample_order_stat(const OrderStatSpec& spec, Rng& rng) {
  if (spec.mode != Extremum::Maximize) {
    throw std::invalid_argument("sample_order_stat: only the maximize mode is sampled");
  }
  return order_stat_from_uniform(spec.evaluations, rng.uniform());
}

BerryEsseenMoments be_moments(int evaluations) {
  check_t(evaluations);
  const double t = evaluations;
  BerryEsseenMoments m;
  m.mean = t / (t + 1.0);
  m.variance = t / ((t + 1.0) * (t + 1.0) * (t + 2.0));
  // pow(t/(t+1), t) written as exp(-t log1p(1/t)) keeps precision for large t.
  const double ratio_pow = std::exp(-t * std::log1p(1.0 / t));
  const double tp1 = t + 1.0;
  m.rho = -2.0 * t * (t - 1.0) / (tp1 * tp1 * tp1 * (t + 2.0) * (t + 3.0)) +
          12.0 * ratio_pow * t * t * t / (tp1 * tp1 * tp1 * tp1 * (t + 2.0) * (t + 3.0));
  m.quotient = m.rho / std::pow(m.variance, 1.5);
  return m;
}

double be_quotient(int evaluations) {
  check_t(evaluations);
  const double t = evaluations;
  const double ratio_pow = std::exp(-t * std::log1p(1.0 / t));
  return -2.0 * (t - 1.0) * std::sqrt(t + 2.0) / (std::sqrt(t) * (t + 3.0)) +
         12.0 * ratio_pow * std::pow(t, 1.5) * std::sqrt(t + 2.0) / ((t + 1.0) * (t + 3.0));
}

double be_quotient_limit() { return 12.0 / std::numbers::e - 2.0; }

double ks_statistic(std::span<const double> sample, const Cdf& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::vector<double> xs(sample.begin(), sample.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double f = cdf(xs[i]);
    d = std::max({d, std::abs(static_cast<double>(i + 1) / n - f), std::abs(f - static_cast<double>(i) / n)});
  }
  return d;
}

double ks_critical_value_05(std::size_t n) {
  // Two-sided alpha = .05 critical values of D_n for n = 1..34.
  static constexpr double kTable[] = {
      0.975, 0.842, 0.708, 0.624, 0.565, 0.521, 0.486, 0.457, 0.432, 0.410, 0.391, 0.375,
      0.361, 0.349, 0.338, 0.328, 0.318, 0.309, 0.301, 0.294, 0.287, 0.281, 0.275, 0.269,
      0.264, 0.259, 0.254, 0.250, 0.246, 0.242, 0.238, 0.234, 0.231, 0.227,
  };
  if (n == 0) throw std::invalid_argument("ks_critical_value_05: n must be positive");
  if (n < 35) return kTable[n - 1];
  return 1.358 / std::sqrt(static_cast<double>(n));
}

KsResult ks_test_05(std::span<const double> sample, const Cdf& cdf) {
  KsResult r;
  r.statistic = ks_statistic(sample, cdf);
  r.critical_value = ks_critical_value_05(sample.size());
  r.reject = r.statistic > r.critical_value;
  return r;
}

std::vector<KsCell> ks_normality_experiment(const KsExperimentConfig& cfg) {
  if (cfg.tests_per_cell < 1 || cfg.samples_per_test < 1) {
    throw std::invalid_argument("ks_normality_experiment: counts must be >= 1");
  }
  std::vector<KsCell> cells;
  std::vector<double> means(static_cast<std::size_t>(cfg.samples_per_test));
  for (int t : cfg.t_values) {
    check_t(t);
    const BerryEsseenMoments mom = be_moments(t);
    for (int n : cfg.n_values) {
      if (n < 1) throw std::invalid_argument("ks_normality_experiment: n must be >= 1");
      Rng rng(mix64(cfg.seed ^ mix64((static_cast<std::uint64_t>(t) << 32) | static_cast<std::uint32_t>(n))));
      KsCell cell{.t = t, .n = n};
      const double sd_mean = std::sqrt(mom.variance / n);
      for (int k = 0; k < cfg.tests_per_cell; ++k) {
        for (double& m : means) {
          double s = 0.0;
          for (int j = 0; j < n; ++j) {
            s += cfg.source == DrawSource::Normal ? mom.mean + std::sqrt(mom.variance) * rng.normal()
                                                  : order_stat_from_uniform(t, rng.uniform());
          }
          m = s / n;
        }
        double center = mom.mean;
        double scale = sd_mean;
        if (cfg.standardization == Standardization::Estimated && means.size() > 1) {
          double acc = 0.0;
          for (double m : means) acc += m;
          center = acc / static_cast<double>(means.size());
          double ss = 0.0;
          for (double m : means) ss += (m - center) * (m - center);
          scale = std::sqrt(ss / static_cast<double>(means.size() - 1));
        }
        for (double& m : means) m = (m - center) / scale;
        if (ks_test_05(means, normal_cdf).reject) ++cell.rejections;
        ++cell.tests;
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

std::string ks_cells_to_csv(const std::vector<KsCell>& cells) {
  std::ostringstream os;
  os << "T,n,tests,rejections,rejection_rate\n";
  for (const auto& c : cells) {
    os << c.t << ',' << c.n << ',' << c.tests << ',' << c.rejections << ',' << c.rejection_rate() << '\n';
  }
  return os.str();
}

}  // namespace bobench
