#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bobench/rng.hpp"

namespace bobench {

// Axis-aligned bounding box, optionally with integer-constrained dimensions.
class DomainBox {
 public:
  DomainBox(std::vector<double> lower, std::vector<double> upper,
            std::set<std::size_t> integer_dims = {});

  std::size_t dim() const { return lower_.size(); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::set<std::size_t>& integer_dims() const { return integer_dims_; }
  bool is_integer(std::size_t i) const { return integer_dims_.count(i) != 0; }

  // Euclidean length of the box diagonal.
  double diagonal() const;
  bool contains(std::span<const double> x) const;

  static DomainBox cube(std::size_t d, double lo, double hi,
                        std::set<std::size_t> integer_dims = {});

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::set<std::size_t> integer_dims_;
};

enum class Attribute {
  Noisy,
  Oscillatory,
  Unimodal,
  BoundaryOptimum,
  MixedInteger,
  DiscreteValued,
  MostlyBoring,
  Nonsmooth,
};

inline constexpr Attribute kAllAttributes[] = {
    Attribute::Noisy,          Attribute::Oscillatory,  Attribute::Unimodal,
    Attribute::BoundaryOptimum, Attribute::MixedInteger, Attribute::DiscreteValued,
    Attribute::MostlyBoring,   Attribute::Nonsmooth,
};

std::string_view to_string(Attribute a);
std::optional<Attribute> parse_attribute(std::string_view name);

using Objective = std::function<double(std::span<const double>)>;

// Closed-form objective under the maximization convention.
struct TestFunction {
  std::string id;
  DomainBox domain;
  std::set<Attribute> attributes;
  double noise_level = 0.0;  // delta in (1 + delta * z) * y
  double f_lb = 0.0;         // lower bound of true values on the domain
  std::optional<double> f_opt;
  std::optional<std::vector<double>> x_opt;
  Objective objective;

  std::size_t dim() const { return domain.dim(); }
  bool has(Attribute a) const { return attributes.count(a) != 0; }
};

struct Evaluation {
  std::vector<double> x;
  double true_value = 0.0;
  double observed_value = 0.0;
  double noise_draw = 0.0;
};

// Evaluates fn at x. Draws exactly one standard normal from rng iff the
// function is noisy. Throws DomainError / ConstraintError on invalid x.
Evaluation evaluate(const TestFunction& fn, std::span<const double> x, Rng& rng);

// Clip to the box, rounding integer dimensions half away from zero.
std::vector<double> round_to_domain(const DomainBox& domain, std::span<const double> x);
inline std::vector<double> round_to_domain(const TestFunction& fn, std::span<const double> x) {
  return round_to_domain(fn.domain, x);
}

enum class DimensionBucket { Any, Two, ThreeToFive, SixToNine, TenPlus };

bool in_bucket(std::size_t d, DimensionBucket bucket);
DimensionBucket bucket_of(std::size_t d);
std::string_view to_string(DimensionBucket b);

struct RegistryFilter {
  std::set<Attribute> attributes;
  DimensionBucket bucket = DimensionBucket::Any;
};

// Immutable collection of test functions, ordered by id.
class Registry {
 public:
  explicit Registry(std::vector<TestFunction> functions);

  // The built-in stratified suite.
  static const Registry& builtin();

  const std::vector<TestFunction>& all() const { return functions_; }
  const TestFunction* find(std::string_view id) const;
  const TestFunction& at(std::string_view id) const;
  std::vector<const TestFunction*> query(const RegistryFilter& filter) const;

  // Human-readable manifest: one line per function.
  std::string manifest() const;

 private:
  std::vector<TestFunction> functions_;
};

}  // namespace bobench
