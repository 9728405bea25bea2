#include "bobench/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bobench/errors.hpp"

namespace bobench {

std::string_view to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::Random: return "random";
    case OptimizerKind::Grid: return "grid";
    case OptimizerKind::PSO: return "pso";
    case OptimizerKind::GpEi: return "gp_ei";
  }
  return "?";
}

std::optional<OptimizerKind> parse_optimizer_kind(std::string_view name) {
  for (auto k : {OptimizerKind::Random, OptimizerKind::Grid, OptimizerKind::PSO, OptimizerKind::GpEi}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::string OptimizerConfig::name() const { return id.empty() ? std::string(to_string(kind)) : id; }

OptimizerConfig default_config(OptimizerKind kind) {
  OptimizerConfig c;
  c.kind = kind;
  c.id = std::string(to_string(kind));
  return c;
}

std::vector<OptimizerConfig> default_optimizers() {
  return {default_config(OptimizerKind::Random), default_config(OptimizerKind::Grid),
          default_config(OptimizerKind::PSO), default_config(OptimizerKind::GpEi)};
}

// ---------------------------------------------------------------------------

Optimizer::Optimizer(DomainBox domain, int budget, std::uint64_t seed)
    : domain_(std::move(domain)), budget_(budget), rng_(seed) {
  if (budget < 1) throw std::invalid_argument("optimizer budget must be >= 1");
}

std::vector<double> Optimizer::suggest() {
  if (pending_) throw ProtocolError("suggest called before the previous suggestion was observed");
  std::vector<double> x = round_to_domain(domain_, next());
  pending_ = x;
  return x;
}

void Optimizer::observe(std::span<const double> x, double y) {
  if (!pending_ || !std::equal(x.begin(), x.end(), pending_->begin(), pending_->end())) {
    throw ProtocolError("observed point was not the pending suggestion");
  }
  record(x, y);
  history_.push_back({*pending_, y});
  pending_.reset();
}

std::vector<double> Optimizer::uniform_point() {
  std::vector<double> x(domain_.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng_.uniform(domain_.lower()[i], domain_.upper()[i]);
  return round_to_domain(domain_, x);
}

// ---------------------------------------------------------------------------

std::size_t GridSearch::points_per_dimension(std::size_t d, double target_points) {
  double n = std::round(std::pow(target_points, 1.0 / static_cast<double>(d)));
  return static_cast<std::size_t>(std::max(2.0, n));
}

GridSearch::GridSearch(DomainBox domain, int budget, std::uint64_t seed, double target_points)
    : Optimizer(std::move(domain), budget, seed) {
  const DomainBox& box = this->domain();
  const std::size_t n = points_per_dimension(box.dim(), target_points);
  total_ = 1;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const double lo = box.lower()[i];
    const double hi = box.upper()[i];
    std::vector<double> axis(n);
    for (std::size_t k = 0; k < n; ++k) {
      axis[k] = k + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    }
    if (box.is_integer(i)) {
      for (double& v : axis) v = std::clamp(std::round(v), std::ceil(lo), std::floor(hi));
      axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    }
    total_ *= static_cast<long double>(axis.size());
    axes_.push_back(std::move(axis));
  }
  if (total_ <= 65536.0L) {
    std::vector<std::uint32_t> digits(axes_.size(), 0);
    for (;;) {
      shuffled_.push_back(digits);
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == axes_[i].size()) digits[i++] = 0;
      if (i == digits.size()) break;
    }
    std::shuffle(shuffled_.begin(), shuffled_.end(), rng().engine());
  }
}

std::vector<std::size_t> GridSearch::lattice_shape() const {
  std::vector<std::size_t> s;
  for (const auto& a : axes_) s.push_back(a.size());
  return s;
}

std::vector<double> GridSearch::point_at(const std::vector<std::uint32_t>& digits) const {
  std::vector<double> x(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) x[i] = axes_[i][digits[i]];
  return x;
}

std::vector<double> GridSearch::next() {
  if (!shuffled_.empty()) {
    if (cursor_ >= shuffled_.size()) throw BudgetError("grid lattice exhausted");
    return point_at(shuffled_[cursor_++]);
  }
  if (static_cast<long double>(used_.size()) >= total_) throw BudgetError("grid lattice exhausted");
  std::vector<std::uint32_t> digits(axes_.size());
  do {
    for (std::size_t i = 0; i < digits.size(); ++i) {
      digits[i] = static_cast<std::uint32_t>(rng().below(axes_[i].size()));
    }
  } while (!used_.insert(digits).second);
  return point_at(digits);
}

// ---------------------------------------------------------------------------

ParticleSwarm::ParticleSwarm(DomainBox domain, int budget, std::uint64_t seed, double inertia, double cognitive,
                             double social)
    : Optimizer(std::move(domain), budget, seed),
      inertia_(inertia),
      cognitive_(cognitive),
      social_(social),
      gbest_value_(-std::numeric_limits<double>::infinity()) {
  const DomainBox& box = this->domain();
  const std::size_t n = 2 * box.dim();
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<double> x(box.dim());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng().uniform(box.lower()[i], box.upper()[i]);
    positions_.push_back(x);
    velocities_.emplace_back(box.dim(), 0.0);
    pbest_.push_back(x);
    pbest_value_.push_back(-std::numeric_limits<double>::infinity());
  }
}

void ParticleSwarm::step_swarm() {
  const DomainBox& box = domain();
  for (std::size_t p = 0; p < positions_.size(); ++p) {
    auto& x = positions_[p];
    auto& v = velocities_[p];
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r1 = rng().uniform();
      const double r2 = rng().uniform();
      v[i] = inertia_ * v[i] + cognitive_ * r1 * (pbest_[p][i] - x[i]) + social_ * r2 * ((*gbest_)[i] - x[i]);
      x[i] += v[i];
      if (x[i] < box.lower()[i]) {
        x[i] = box.lower()[i];
        v[i] = 0.0;
      } else if (x[i] > box.upper()[i]) {
        x[i] = box.upper()[i];
        v[i] = 0.0;
      }
    }
  }
  ++iteration_;
}

std::vector<double> ParticleSwarm::next() {
  if (cursor_ == positions_.size()) {
    step_swarm();
    cursor_ = 0;
  }
  return positions_[cursor_];
}

void ParticleSwarm::record(std::span<const double> /*x*/, double y) {
  // Bests track the continuous position; the evaluated point is its rounding.
  const std::size_t p = cursor_;
  if (y > pbest_value_[p]) {
    pbest_value_[p] = y;
    pbest_[p] = positions_[p];
  }
  if (y > gbest_value_) {
    gbest_value_ = y;
    gbest_ = positions_[p];
  }
  ++cursor_;
}

// ---------------------------------------------------------------------------

int GpEiOptimizer::default_initial_points(std::size_t d, int budget) {
  return std::min(static_cast<int>(2 * d + 2), std::max(2, budget / 4));
}

GpEiOptimizer::GpEiOptimizer(DomainBox domain, int budget, std::uint64_t seed, const OptimizerConfig& cfg)
    : Optimizer(std::move(domain), budget, seed),
      cfg_(cfg),
      n_init_(cfg.gp_initial_points.value_or(default_initial_points(this->domain().dim(), budget))) {
  if (n_init_ < 1) throw std::invalid_argument("GP-EI needs at least one initial point");
}

std::vector<double> GpEiOptimizer::next() {
  const auto& hist = history();
  if (static_cast<int>(hist.size()) < n_init_) return uniform_point();

  const DomainBox& box = domain();
  const std::size_t d = box.dim();
  std::vector<std::vector<double>> xs;
  std::vector<double> ys;
  std::size_t incumbent = 0;
  for (std::size_t i = 0; i < hist.size(); ++i) {
    xs.push_back(hist[i].x);
    ys.push_back(hist[i].y);
    if (hist[i].y > hist[incumbent].y) incumbent = i;
  }
  GpModel model = gp_fit(to_matrix(xs), ys, box.diagonal(), cfg_.gp);

  const std::size_t n_random = static_cast<std::size_t>(cfg_.ei_random_per_dim) * d;
  const std::size_t n_local = static_cast<std::size_t>(cfg_.ei_local_candidates);
  std::vector<std::vector<double>> cands;
  cands.reserve(n_random + n_local);
  for (std::size_t k = 0; k < n_random; ++k) cands.push_back(uniform_point());
  const double scale = cfg_.ei_local_scale * box.diagonal();
  for (std::size_t k = 0; k < n_local; ++k) {
    std::vector<double> x = hist[incumbent].x;
    for (double& v : x) v += scale * rng().normal();
    cands.push_back(round_to_domain(box, x));
  }

  std::vector<Prediction> preds = model.predict(to_matrix(cands));
  const double best = hist[incumbent].y;
  std::size_t arg = 0;
  double best_ei = -1.0;
  for (std::size_t k = 0; k < preds.size(); ++k) {
    double ei = expected_improvement(preds[k].mean, std::sqrt(preds[k].variance), best);
    if (ei > best_ei) {
      best_ei = ei;
      arg = k;
    }
  }
  return cands[arg];
}

// ---------------------------------------------------------------------------

std::unique_ptr<Optimizer> make_optimizer(const OptimizerConfig& cfg, const DomainBox& domain, int budget,
                                          std::uint64_t seed) {
  switch (cfg.kind) {
    case OptimizerKind::Random: return std::make_unique<RandomSearch>(domain, budget, seed);
    case OptimizerKind::Grid: return std::make_unique<GridSearch>(domain, budget, seed, cfg.grid_target_points);
    case OptimizerKind::PSO:
      return std::make_unique<ParticleSwarm>(domain, budget, seed, cfg.pso_inertia, cfg.pso_cognitive,
                                             cfg.pso_social);
    case OptimizerKind::GpEi: return std::make_unique<GpEiOptimizer>(domain, budget, seed, cfg);
  }
  throw std::invalid_argument("unknown optimizer kind");
}

std::vector<double> RunRecord::observed_values() const {
  std::vector<double> v;
  for (const auto& s : steps) v.push_back(s.observed);
  return v;
}

std::vector<double> RunRecord::true_values() const {
  std::vector<double> v;
  for (const auto& s : steps) v.push_back(s.true_value);
  return v;
}

std::vector<double> RunRecord::trace() const { return incumbent_trace(observed_values(), true_values()); }

RunRecord run_optimization(const OptimizerConfig& cfg, const TestFunction& fn, int budget, std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("run_optimization: budget must be >= 1");
  auto opt = make_optimizer(cfg, fn.domain, budget, seed);
  Rng noise(mix64(seed ^ 0x6e6f697365ULL));
  RunRecord rec;
  rec.function_id = fn.id;
  rec.attributes = fn.attributes;
  rec.dimension = fn.dim();
  rec.optimizer_id = cfg.name();
  rec.seed = seed;
  rec.steps.reserve(static_cast<std::size_t>(budget));
  for (int t = 0; t < budget; ++t) {
    std::vector<double> x = opt->suggest();
    Evaluation e = evaluate(fn, x, noise);
    opt->observe(x, e.observed_value);
    rec.steps.push_back({std::move(e.x), e.observed_value, e.true_value});
  }
  rec.metrics = metric_pair(rec.trace(), fn.f_lb);
  return rec;
}

}  // namespace bobench
