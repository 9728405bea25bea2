#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bobench/gp.hpp"
#include "bobench/metrics.hpp"
#include "bobench/rng.hpp"
#include "bobench/testfns.hpp"

namespace bobench {

enum class OptimizerKind { Random, Grid, PSO, GpEi };

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::Random;
  std::string id;  // defaults to the kind name

  double grid_target_points = 1e6;

  double pso_inertia = 0.7298;
  double pso_cognitive = 1.49618;
  double pso_social = 1.49618;

  GpFitOptions gp;
  std::optional<int> gp_initial_points;  // default min(2d+2, max(2, T/4))
  int ei_random_per_dim = 1000;
  int ei_local_candidates = 100;
  double ei_local_scale = 0.01;  // fraction of domain diagonal

  std::string name() const;
};

std::string_view to_string(OptimizerKind kind);
std::optional<OptimizerKind> parse_optimizer_kind(std::string_view name);
OptimizerConfig default_config(OptimizerKind kind);
// random, grid, pso, gp_ei
std::vector<OptimizerConfig> default_optimizers();

struct Observation {
  std::vector<double> x;
  double y = 0.0;
};

// Sequential suggest/observe loop. All optimizers maximize.
class Optimizer {
 public:
  Optimizer(DomainBox domain, int budget, std::uint64_t seed);
  virtual ~Optimizer() = default;
  Optimizer(const Optimizer&) = delete;
  Optimizer& operator=(const Optimizer&) = delete;

  // In-domain point with integer dimensions rounded. Throws ProtocolError if
  // the previous suggestion was not observed.
  std::vector<double> suggest();
  // Throws ProtocolError unless x equals the pending suggestion.
  void observe(std::span<const double> x, double y);

  const std::vector<Observation>& history() const { return history_; }
  const DomainBox& domain() const { return domain_; }
  int budget() const { return budget_; }

 protected:
  virtual std::vector<double> next() = 0;
  virtual void record(std::span<const double> x, double y) { (void)x; (void)y; }

  Rng& rng() { return rng_; }
  std::vector<double> uniform_point();

 private:
  DomainBox domain_;
  int budget_;
  Rng rng_;
  std::vector<Observation> history_;
  std::optional<std::vector<double>> pending_;
};

class RandomSearch final : public Optimizer {
 public:
  using Optimizer::Optimizer;

 protected:
  std::vector<double> next() override { return uniform_point(); }
};

// Samples a regular lattice without replacement.
class GridSearch final : public Optimizer {
 public:
  GridSearch(DomainBox domain, int budget, std::uint64_t seed, double target_points);

  // Points per dimension; integer dimensions may be thinner after rounding.
  std::vector<std::size_t> lattice_shape() const;
  const std::vector<std::vector<double>>& axis_values() const { return axes_; }
  static std::size_t points_per_dimension(std::size_t d, double target_points);

 protected:
  std::vector<double> next() override;

 private:
  std::vector<double> point_at(const std::vector<std::uint32_t>& digits) const;

  std::vector<std::vector<double>> axes_;
  // Small lattices are shuffled up front; large ones use rejection sampling.
  std::vector<std::vector<std::uint32_t>> shuffled_;
  std::size_t cursor_ = 0;
  std::set<std::vector<std::uint32_t>> used_;
  long double total_ = 0;
};

// Synchronous particle swarm with 2d particles and constriction coefficients.
class ParticleSwarm final : public Optimizer {
 public:
  ParticleSwarm(DomainBox domain, int budget, std::uint64_t seed, double inertia, double cognitive,
                double social);

  std::size_t swarm_size() const { return positions_.size(); }
  const std::vector<double>& position(std::size_t i) const { return positions_[i]; }
  const std::vector<double>& personal_best(std::size_t i) const { return pbest_[i]; }
  double personal_best_value(std::size_t i) const { return pbest_value_[i]; }
  const std::optional<std::vector<double>>& global_best() const { return gbest_; }
  double global_best_value() const { return gbest_value_; }
  int iteration() const { return iteration_; }

 protected:
  std::vector<double> next() override;
  void record(std::span<const double> x, double y) override;

 private:
  void step_swarm();

  double inertia_, cognitive_, social_;
  std::vector<std::vector<double>> positions_;
  std::vector<std::vector<double>> velocities_;
  std::vector<std::vector<double>> pbest_;
  std::vector<double> pbest_value_;
  std::optional<std::vector<double>> gbest_;
  double gbest_value_;
  std::size_t cursor_ = 0;  // particle to suggest next within the sweep
  int iteration_ = 0;
};

// GP expected-improvement optimizer with a seeded random initial design.
class GpEiOptimizer final : public Optimizer {
 public:
  GpEiOptimizer(DomainBox domain, int budget, std::uint64_t seed, const OptimizerConfig& cfg);

  int initial_points() const { return n_init_; }
  static int default_initial_points(std::size_t d, int budget);

 protected:
  std::vector<double> next() override;

 private:
  OptimizerConfig cfg_;
  int n_init_;
};

std::unique_ptr<Optimizer> make_optimizer(const OptimizerConfig& cfg, const DomainBox& domain, int budget,
                                          std::uint64_t seed);

struct RunStep {
  std::vector<double> x;
  double observed = 0.0;
  double true_value = 0.0;
  bool operator==(const RunStep&) const = default;
};

struct RunRecord {
  std::string function_id;
  std::set<Attribute> attributes;
  std::size_t dimension = 0;
  std::string optimizer_id;
  int repeat = 0;
  std::uint64_t seed = 0;
  std::vector<RunStep> steps;
  MetricPair metrics;

  std::vector<double> observed_values() const;
  std::vector<double> true_values() const;
  // True value of the observed-value incumbent after each step.
  std::vector<double> trace() const;
  bool operator==(const RunRecord&) const = default;
};

// Runs exactly `budget` evaluations. The optimizer stream is seeded from
// `seed`; evaluation noise uses an independent stream derived from it.
RunRecord run_optimization(const OptimizerConfig& cfg, const TestFunction& fn, int budget, std::uint64_t seed);

}  // namespace bobench
