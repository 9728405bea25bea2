#include "bobench/gp.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bobench/errors.hpp"
#include "bobench/stattests.hpp"

namespace bobench {

namespace {

constexpr double kSqrt5 = 2.2360679774997896964;

struct Standardized {
  Eigen::VectorXd values;
  double mean = 0.0;
  double scale = 1.0;
};

Standardized standardize(std::span<const double> y) {
  Standardized s;
  const auto n = static_cast<Eigen::Index>(y.size());
  s.values.resize(n);
  double m = 0.0;
  for (double v : y) m += v;
  m /= static_cast<double>(y.size());
  double ss = 0.0;
  for (double v : y) ss += (v - m) * (v - m);
  double sd = std::sqrt(ss / static_cast<double>(y.size()));
  s.mean = m;
  s.scale = sd > 0.0 ? sd : 1.0;
  for (Eigen::Index i = 0; i < n; ++i) s.values(i) = (y[static_cast<std::size_t>(i)] - m) / s.scale;
  return s;
}

Eigen::MatrixXd gram(const Eigen::MatrixXd& X, const KernelParams& p) {
  const Eigen::Index n = X.rows();
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    K(i, i) = p.amplitude;
    for (Eigen::Index j = 0; j < i; ++j) {
      double k = matern52_of_distance((X.row(i) - X.row(j)).norm(), p);
      K(i, j) = k;
      K(j, i) = k;
    }
  }
  return K;
}

Eigen::MatrixXd cross(const Eigen::MatrixXd& X, const Eigen::MatrixXd& C, const KernelParams& p) {
  Eigen::MatrixXd K(X.rows(), C.rows());
  for (Eigen::Index j = 0; j < C.rows(); ++j) {
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      K(i, j) = matern52_of_distance((X.row(i) - C.row(j)).norm(), p);
    }
  }
  return K;
}

// Factorizes K + jitter*I, escalating jitter tenfold on failure.
std::optional<double> factorize(const Eigen::MatrixXd& K, const KernelParams& p, const GpFitOptions& opts,
                                Eigen::LLT<Eigen::MatrixXd>& llt) {
  const Eigen::Index n = K.rows();
  for (double rel = opts.jitter_start;; rel *= 10.0) {
    double jitter = rel * p.amplitude;
    llt.compute(K + jitter * Eigen::MatrixXd::Identity(n, n));
    if (llt.info() == Eigen::Success) {
      const auto& L = llt.matrixLLT();
      bool ok = true;
      for (Eigen::Index i = 0; i < n; ++i) ok = ok && L(i, i) > 0.0 && std::isfinite(L(i, i));
      if (ok) return jitter;
    }
    if (!(rel > 0.0) || rel >= opts.jitter_max * (1.0 - 1e-9)) break;
  }
  return std::nullopt;
}

double lml_from(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::VectorXd& y, const Eigen::VectorXd& alpha) {
  const auto& L = llt.matrixLLT();
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < L.rows(); ++i) logdet += std::log(L(i, i));
  return -0.5 * y.dot(alpha) - logdet - 0.5 * static_cast<double>(y.size()) * std::log(2.0 * std::numbers::pi);
}

}  // namespace

double matern52_of_distance(double r, const KernelParams& p) {
  const double s = kSqrt5 * r / p.length_scale;
  return p.amplitude * (1.0 + s + s * s / 3.0) * std::exp(-s);
}

double matern52(std::span<const double> x, std::span<const double> x2, const KernelParams& p) {
  if (x.size() != x2.size()) throw std::invalid_argument("matern52: length mismatch");
  if (!(p.length_scale > 0.0)) throw std::invalid_argument("matern52: length scale must be positive");
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r2 += (x[i] - x2[i]) * (x[i] - x2[i]);
  return matern52_of_distance(std::sqrt(r2), p);
}

std::vector<KernelParams> hyperparameter_grid(double diagonal, double target_variance, const GpFitOptions& opts) {
  auto logspace = [](double lo, double hi, int k) {
    std::vector<double> v;
    if (k == 1) return std::vector<double>{std::sqrt(lo * hi)};
    for (int i = 0; i < k; ++i) v.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (k - 1)));
    return v;
  };
  if (!(target_variance > 0.0)) target_variance = 1.0;
  std::vector<KernelParams> grid;
  for (double l : logspace(1e-2 * diagonal, 10.0 * diagonal, opts.length_grid_points)) {
    for (double a : logspace(1e-2 * target_variance, 1e2 * target_variance, opts.amplitude_grid_points)) {
      grid.push_back({a, l});
    }
  }
  return grid;
}

GpModel GpModel::prior(const KernelParams& params, double mean, double scale) {
  GpModel m;
  m.params_ = params;
  m.mean_ = mean;
  m.scale_ = scale;
  m.X_.resize(0, 0);
  return m;
}

GpModel GpModel::condition(const Eigen::MatrixXd& X, std::span<const double> y, const KernelParams& params,
                           const GpFitOptions& opts) {
  if (X.rows() < 1 || static_cast<std::size_t>(X.rows()) != y.size()) {
    throw std::invalid_argument("GpModel::condition: need >= 1 point and matching targets");
  }
  GpModel m;
  Standardized s = standardize(y);
  m.X_ = X;
  m.y_std_ = s.values;
  m.mean_ = s.mean;
  m.scale_ = s.scale;
  m.params_ = params;
  auto jitter = factorize(gram(X, params), params, opts, m.chol_);
  if (!jitter) throw NumericalError("GP covariance not positive definite at maximum jitter");
  m.jitter_ = *jitter;
  m.alpha_ = m.chol_.solve(m.y_std_);
  m.inv_diag_ = m.chol_.solve(Eigen::MatrixXd::Identity(X.rows(), X.rows())).diagonal();
  m.lml_ = lml_from(m.chol_, m.y_std_, m.alpha_);
  return m;
}

std::vector<Prediction> GpModel::predict(const Eigen::MatrixXd& C) const {
  std::vector<Prediction> out(static_cast<std::size_t>(C.rows()));
  if (X_.rows() == 0) {
    for (auto& p : out) p = {mean_, scale_ * scale_ * params_.amplitude};
    return out;
  }
  Eigen::MatrixXd Ks = cross(X_, C, params_);
  Eigen::VectorXd mu = Ks.transpose() * alpha_;
  Eigen::MatrixXd V = chol_.matrixL().solve(Ks);
  Eigen::VectorXd reduction = V.colwise().squaredNorm().transpose();
  for (std::size_t j = 0; j < out.size(); ++j) {
    auto jj = static_cast<Eigen::Index>(j);
    double var = params_.amplitude - reduction(jj);
    // At a training input the variance is j - j^2 [(K + jI)^-1]_ii exactly;
    // the generic difference above loses it to cancellation.
    for (Eigen::Index i = 0; i < X_.rows(); ++i) {
      if ((X_.row(i) - C.row(jj)).squaredNorm() == 0.0) {
        var = jitter_ - jitter_ * jitter_ * inv_diag_(i);
        break;
      }
    }
    var = std::max(0.0, var);
    out[j] = {mean_ + scale_ * mu(jj), scale_ * scale_ * var};
  }
  return out;
}

Prediction GpModel::predict(std::span<const double> x) const {
  Eigen::MatrixXd C(1, static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) C(0, static_cast<Eigen::Index>(i)) = x[i];
  return predict(C).front();
}

double GpModel::standardized_variance(std::span<const double> x) const {
  return predict(x).variance / (scale_ * scale_);
}

std::optional<double> log_marginal_likelihood(const Eigen::MatrixXd& X, std::span<const double> y,
                                              const KernelParams& params, const GpFitOptions& opts) {
  Standardized s = standardize(y);
  Eigen::LLT<Eigen::MatrixXd> llt;
  if (!factorize(gram(X, params), params, opts, llt)) return std::nullopt;
  Eigen::VectorXd alpha = llt.solve(s.values);
  return lml_from(llt, s.values, alpha);
}

GpModel gp_fit(const Eigen::MatrixXd& X, std::span<const double> y, double diagonal, const GpFitOptions& opts) {
  if (X.rows() < 1) throw std::invalid_argument("gp_fit: no training points");
  Standardized s = standardize(y);
  // Standardized targets have variance 1, or 0 when all targets agree.
  double target_var = s.values.squaredNorm() / static_cast<double>(s.values.size());
  std::optional<KernelParams> best;
  double best_lml = -std::numeric_limits<double>::infinity();
  for (const KernelParams& p : hyperparameter_grid(diagonal, target_var, opts)) {
    auto lml = log_marginal_likelihood(X, y, p, opts);
    if (lml && *lml > best_lml) {
      best_lml = *lml;
      best = p;
    }
  }
  if (!best) throw NumericalError("gp_fit: no hyperparameter candidate admits a factorization");
  return GpModel::condition(X, y, *best, opts);
}

double expected_improvement(double mu, double sigma, double best) {
  if (sigma < 0.0) throw std::invalid_argument("expected_improvement: negative sigma");
  const double gap = mu - best;
  if (sigma == 0.0) return std::max(gap, 0.0);
  const double z = gap / sigma;
  return std::max(0.0, gap * normal_cdf(z) + sigma * normal_pdf(z));
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& points) {
  if (points.empty()) return {};
  Eigen::MatrixXd M(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(points[0].size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points[i].size(); ++j) {
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = points[i][j];
    }
  }
  return M;
}

}  // namespace bobench
