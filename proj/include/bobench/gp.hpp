#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "bobench/testfns.hpp"

namespace bobench {

struct KernelParams {
  double amplitude = 1.0;     // sigma_f^2
  double length_scale = 1.0;  // isotropic
  bool operator==(const KernelParams&) const = default;
};

// sigma_f^2 (1 + sqrt5 r/l + 5 r^2 / (3 l^2)) exp(-sqrt5 r/l), r = |x - x'|.
double matern52(std::span<const double> x, std::span<const double> x2, const KernelParams& p);
double matern52_of_distance(double r, const KernelParams& p);

struct GpFitOptions {
  int length_grid_points = 16;     // log-spaced over [1e-2, 10] * diagonal
  int amplitude_grid_points = 9;   // log-spaced over [1e-2, 1e2] * target variance
  double jitter_start = 1e-10;     // relative to sigma_f^2
  double jitter_max = 1e-4;
};

std::vector<KernelParams> hyperparameter_grid(double diagonal, double target_variance,
                                              const GpFitOptions& opts = {});

struct Prediction {
  double mean = 0.0;
  double variance = 0.0;
};

// Noiseless GP posterior on standardized targets. Observation noise is not
// modelled; only a small jitter keeps the covariance factorizable.
class GpModel {
 public:
  // Prior-only model: predicts `mean` with variance scale^2 * sigma_f^2.
  static GpModel prior(const KernelParams& params, double mean = 0.0, double scale = 1.0);

  // Conditions on (X, y) with fixed hyperparameters. Targets are
  // standardized with the training mean and population std (std 0 -> 1).
  // Throws NumericalError if the covariance cannot be factorized at the
  // maximum jitter.
  static GpModel condition(const Eigen::MatrixXd& X, std::span<const double> y,
                           const KernelParams& params, const GpFitOptions& opts = {});

  Prediction predict(std::span<const double> x) const;
  // Batch prediction; candidates are rows of C.
  std::vector<Prediction> predict(const Eigen::MatrixXd& C) const;
  // Posterior variance in standardized units.
  double standardized_variance(std::span<const double> x) const;

  const KernelParams& params() const { return params_; }
  double jitter() const { return jitter_; }  // absolute, standardized units
  double target_mean() const { return mean_; }
  double target_scale() const { return scale_; }
  std::size_t size() const { return static_cast<std::size_t>(X_.rows()); }
  double log_marginal_likelihood() const { return lml_; }

 private:
  Eigen::MatrixXd X_;
  Eigen::VectorXd y_std_;
  Eigen::LLT<Eigen::MatrixXd> chol_;
  Eigen::VectorXd alpha_;
  Eigen::VectorXd inv_diag_;
  KernelParams params_;
  double jitter_ = 0.0;
  double mean_ = 0.0;
  double scale_ = 1.0;
  double lml_ = 0.0;
};

// Log marginal likelihood of the standardized targets under params, or
// nullopt when the covariance is not factorizable at the maximum jitter.
std::optional<double> log_marginal_likelihood(const Eigen::MatrixXd& X, std::span<const double> y,
                                              const KernelParams& params, const GpFitOptions& opts = {});

// Picks (length scale, amplitude) maximizing the log marginal likelihood over
// the log-spaced grid. diagonal is the domain diagonal used to scale the
// length-scale range.
GpModel gp_fit(const Eigen::MatrixXd& X, std::span<const double> y, double diagonal,
               const GpFitOptions& opts = {});

// Maximization form. sigma = 0 gives max(mu - best, 0).
double expected_improvement(double mu, double sigma, double best);

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& points);

}  // namespace bobench
