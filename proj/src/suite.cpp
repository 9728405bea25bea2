// Built-in stratified suite. Every function is stated for maximization.
// Optima sit off the domain midpoint and off integer coordinates unless the
// function's attribute or its textbook form fixes them there.

#include <cmath>
#include <numbers>

#include "bobench/testfns.hpp"

namespace bobench {
namespace {

using A = Attribute;

double sum_sq_shifted(std::span<const double> x, std::span<const double> c) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - c[i]) * (x[i] - c[i]);
  return s;
}

// Largest squared distance from c to a point of [lo, hi]^d, summed per axis.
double max_sq_dist(const std::vector<double>& c, double lo, double hi) {
  double s = 0.0;
  for (double ci : c) {
    double r = std::max(ci - lo, hi - ci);
    s += r * r;
  }
  return s;
}

TestFunction noisy_copy(TestFunction f, double delta) {
  f.id = "noisy_" + f.id;
  f.noise_level = delta;
  f.attributes.insert(A::Noisy);
  return f;
}

TestFunction sphere2() {
  TestFunction f{.id = "sphere2", .domain = DomainBox::cube(2, -5.0, 5.0)};
  f.attributes = {A::Unimodal};
  f.objective = [](std::span<const double> x) { return -(x[0] * x[0] + x[1] * x[1]); };
  f.f_lb = -50.0;
  f.f_opt = 0.0;
  f.x_opt = std::vector<double>{0.0, 0.0};
  return f;
}

TestFunction shifted_sphere(std::string id, std::vector<double> c, std::set<std::size_t> ints) {
  const std::size_t d = c.size();
  TestFunction f{.id = std::move(id), .domain = DomainBox::cube(d, -5.0, 5.0, ints)};
  f.attributes = {ints.empty() ? A::Unimodal : A::MixedInteger};
  f.f_lb = -max_sq_dist(c, -5.0, 5.0);
  std::vector<double> xo = c;
  double fo = 0.0;
  for (std::size_t i : ints) {
    xo[i] = std::round(c[i]);
    fo -= (xo[i] - c[i]) * (xo[i] - c[i]);
  }
  f.f_opt = fo;
  f.x_opt = xo;
  f.objective = [c](std::span<const double> x) { return -sum_sq_shifted(x, c); };
  return f;
}

TestFunction abs_sum(std::size_t d) {
  TestFunction f{.id = "abs_sum" + std::to_string(d), .domain = DomainBox::cube(d, -3.0, 4.0)};
  f.attributes = {A::Unimodal, A::Nonsmooth};
  f.objective = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return -s;
  };
  f.f_lb = -4.0 * static_cast<double>(d);
  f.f_opt = 0.0;
  f.x_opt = std::vector<double>(d, 0.0);
  return f;
}

TestFunction linear_slope(std::size_t d) {
  TestFunction f{.id = "linear_slope" + std::to_string(d), .domain = DomainBox::cube(d, -1.0, 1.0)};
  f.attributes = {A::BoundaryOptimum};
  f.objective = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  };
  f.f_lb = -static_cast<double>(d);
  f.f_opt = static_cast<double>(d);
  f.x_opt = std::vector<double>(d, 1.0);
  return f;
}

TestFunction cosine_mixture(std::size_t d) {
  TestFunction f{.id = "cosine_mixture" + std::to_string(d), .domain = DomainBox::cube(d, -1.0, 1.0)};
  f.attributes = {A::Oscillatory};
  f.objective = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += 0.1 * std::cos(5.0 * std::numbers::pi * v) - v * v;
    return s;
  };
  // Per coordinate: 0.1 cos(.) >= -0.1 and -x^2 >= -1.
  f.f_lb = -1.1 * static_cast<double>(d);
  f.f_opt = 0.1 * static_cast<double>(d);
  f.x_opt = std::vector<double>(d, 0.0);
  return f;
}

TestFunction rastrigin(std::size_t d) {
  std::vector<double> c(d);
  for (std::size_t i = 0; i < d; ++i) c[i] = (i % 2 == 0) ? 0.3 : -0.3;
  TestFunction f{.id = "rastrigin" + std::to_string(d), .domain = DomainBox::cube(d, -5.12, 5.12)};
  f.attributes = {A::Oscillatory};
  f.objective = [c](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double z = x[i] - c[i];
      s += z * z - 10.0 * std::cos(2.0 * std::numbers::pi * z) + 10.0;
    }
    return -s;
  };
  // Each term is at most z^2 + 20.
  f.f_lb = -(max_sq_dist(c, -5.12, 5.12) + 20.0 * static_cast<double>(d));
  f.f_opt = 0.0;
  f.x_opt = c;
  return f;
}

TestFunction floor_quad() {
  TestFunction f{.id = "floor_quad", .domain = DomainBox::cube(2, 0.0, 10.0)};
  f.attributes = {A::DiscreteValued, A::BoundaryOptimum};
  f.objective = [](std::span<const double> x) { return std::floor(x[0] * x[0] + x[1] * x[1]); };
  f.f_lb = 0.0;
  f.f_opt = 200.0;
  f.x_opt = std::vector<double>{10.0, 10.0};
  return f;
}

TestFunction step_sum4() {
  std::vector<double> c{0.85, -1.6, 2.3, -0.35};
  TestFunction f{.id = "step_sum4", .domain = DomainBox::cube(4, -5.0, 5.0)};
  f.attributes = {A::DiscreteValued, A::Nonsmooth};
  f.objective = [c](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::floor(std::abs(x[i] - c[i]));
    return -s;
  };
  double lb = 0.0;
  for (double ci : c) lb -= std::floor(5.0 + std::abs(ci));
  f.f_lb = lb;
  f.f_opt = 0.0;
  f.x_opt = c;
  return f;
}

TestFunction gaussian_bump(std::vector<double> c) {
  const std::size_t d = c.size();
  TestFunction f{.id = "gaussian_bump" + std::to_string(d), .domain = DomainBox::cube(d, 0.0, 1.0)};
  f.attributes = {A::MostlyBoring};
  f.objective = [c](std::span<const double> x) { return std::exp(-100.0 * sum_sq_shifted(x, c)); };
  f.f_lb = 0.0;
  f.f_opt = 1.0;
  f.x_opt = c;
  return f;
}

std::vector<TestFunction> builtin_functions() {
  std::vector<TestFunction> fs;
  fs.push_back(sphere2());
  fs.push_back(noisy_copy(sphere2(), 1e-2));
  fs.push_back(shifted_sphere("shifted_sphere6", {1.37, -2.18, 0.64, 3.05, -0.91, 2.42}, {}));
  fs.push_back(noisy_copy(
      shifted_sphere("shifted_sphere6", {1.37, -2.18, 0.64, 3.05, -0.91, 2.42}, {}), 1e-3));
  fs.push_back(abs_sum(3));
  fs.push_back(noisy_copy(abs_sum(3), 1e-1));
  fs.push_back(abs_sum(10));
  fs.push_back(linear_slope(4));
  fs.push_back(linear_slope(8));
  fs.push_back(cosine_mixture(2));
  fs.push_back(cosine_mixture(7));
  fs.push_back(rastrigin(10));
  fs.push_back(floor_quad());
  fs.push_back(step_sum4());
  fs.push_back(gaussian_bump({0.2137, 0.6781, 0.8342}));
  fs.push_back(gaussian_bump({0.2137, 0.6781, 0.8342, 0.1569, 0.7312, 0.3876, 0.6123, 0.2894}));
  fs.push_back(shifted_sphere("int_sphere3", {1.3, -2.4, 0.7}, {0}));
  fs.push_back(shifted_sphere("int_sphere6", {1.3, -2.4, 0.7, 3.6, -1.2, 2.45}, {0, 2, 4}));
  return fs;
}

}  // namespace

const Registry& Registry::builtin() {
  static const Registry registry(builtin_functions());
  return registry;
}

}  // namespace bobench
