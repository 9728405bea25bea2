// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "bobench/harness.hpp"
#include "bobench/metrics.hpp"
#include "bobench/ranking.hpp"
#include "bobench/stattests.hpp"
#include "bobench/validity.hpp"

namespace {

using namespace bobench;
using G = std::vector<std::vector<MethodId>>;

struct Verdict {
  bool pass = true;
  std::string detail;
};

Verdict table1() {
  std::vector<PartialRanking> ballots{
      PartialRanking(G{{"A"}, {"B"}, {"C"}, {"D"}}), PartialRanking(G{{"A", "B"}, {"C", "D"}}),
      PartialRanking(G{{"C"}, {"A"}, {"B", "D"}}),   PartialRanking(G{{"D"}, {"A", "C"}, {"B"}}),
      PartialRanking(G{{"A", "B", "C", "D"}}),       PartialRanking(G{{"B"}, {"A", "C", "D"}}),
  };
  AggregateTable t = aggregate(ballots);
  const std::vector<AggregateRow> want{{8, 3, 6}, {7, 3, 6}, {5, 2, 6}, {3, 2, 5}};
  Verdict v;
  const char* ids[] = {"A", "B", "C", "D"};
  for (int i = 0; i < 4; ++i) {
    const AggregateRow& r = t.rows.at(ids[i]);
    v.pass = v.pass && r == want[static_cast<std::size_t>(i)];
    v.detail += std::string(ids[i]) + "=" + std::to_string(r.borda_total) + "/" + std::to_string(r.firsts) + "/" +
                std::to_string(r.top_three) + " ";
  }
  return v;
}

Verdict worked_example() {
  auto m = matrix_from_wins({"A", "B", "C", "D"}, {{"A", "D"}, {"A", "C"}, {"B", "D"}});
  PartialRanking base = partial_ranking(m);
  auto samples = [](double a, double b) {
    SampleMap s;
    for (int i = 0; i < 30; ++i) {
      s["A"].push_back(a + 0.01 * i);
      s["B"].push_back(b + 0.01 * i);
      s["C"].push_back(0.01 * i);
      s["D"].push_back(0.01 * i);
    }
    return s;
  };
  PartialRanking refined = refine_ranking(base, samples(10.0, 0.0), 0.0005);
  PartialRanking flat = refine_ranking(base, samples(1.0, 1.0), 0.0005);
  using B = std::map<MethodId, int>;
  Verdict v;
  v.pass = base.groups() == G{{"A", "B"}, {"C"}, {"D"}} && base.borda() == B{{"A", 2}, {"B", 2}, {"C", 1}, {"D", 0}} &&
           refined.borda() == B{{"A", 3}, {"B", 2}, {"C", 1}, {"D", 0}} && flat == base;
  v.detail = base.to_string() + " | refined " + refined.to_string() + " | insignificant " + flat.to_string();
  return v;
}

Verdict family_wise() {
  double b = family_wise_bound(0.0005, 7);
  return {b >= 0.0104 && b <= 0.0105, "bound=" + std::to_string(b)};
}

Verdict mann_whitney_fidelity() {
  Rng rng(20160601);
  int checked = 0, violations = 0;
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> a(1 + rng.below(7)), b(1 + rng.below(7));
    const std::uint64_t alphabet = 2 + rng.below(4);  // 2..5 distinct values
    for (double& x : a) x = static_cast<double>(rng.below(alphabet));
    for (double& x : b) x = static_cast<double>(rng.below(alphabet));
    const double exact = mann_whitney_exact(a, b);
    if (exact < 0.001 || exact > 0.5) continue;
    const double approx = mann_whitney(a, b, 0.05).p_a_greater;
    const double err = std::abs(approx - exact);
    ++checked;
    worst = std::max(worst, err);
    if (!(err < 0.01)) ++violations;
  }
  const double anchor = mann_whitney_exact(std::vector<double>{4, 5, 6}, std::vector<double>{1, 2, 3});
  char buf[200];
  std::snprintf(buf, sizeof buf, "pairs in range=%d violations=%d max|err|=%.4f exact([1,2,3]<[4,5,6])=%.4f", checked,
                violations, worst, anchor);
  return {violations == 0 && std::abs(anchor - 0.05) < 1e-15, buf};
}

Verdict supplementary() {
  Verdict v;
  BerryEsseenMoments m4 = be_moments(4);
  bool ok4 = std::abs(m4.mean - 0.8) < 1e-15 && std::abs(m4.variance - 4.0 / 150.0) < 1e-15 && m4.rho > 0;
  double worst_consistency = 0.0;
  for (int t = 1; t <= 1000; ++t) {
    BerryEsseenMoments m = be_moments(t);
    worst_consistency = std::max(worst_consistency, std::abs(be_quotient(t) - m.rho / std::pow(m.variance, 1.5)));
  }
  const double q1_err = std::abs(be_quotient(1) - 6.0 * std::sqrt(3.0) / 8.0);
  bool increasing = true;
  for (int t = 2; t < 10000; ++t) increasing = increasing && be_quotient(t + 1) > be_quotient(t);
  const double limit_err = std::abs(be_quotient(1000000) - (12.0 / std::numbers::e - 2.0));
  v.pass = ok4 && worst_consistency < 1e-12 && q1_err < 1e-12 && increasing && limit_err < 1e-3;
  char buf[240];
  std::snprintf(buf, sizeof buf, "rho(4)=%.10g consistency=%.2e q(1)err=%.2e increasing=%d limit err=%.2e", m4.rho,
                worst_consistency, q1_err, increasing ? 1 : 0, limit_err);
  v.detail = buf;
  return v;
}

Verdict order_stat_monte_carlo() {
  Verdict v;
  std::string detail;
  double skew16 = 0.0;
  for (int t : {1, 4, 16, 64}) {
    Rng rng(mix64(static_cast<std::uint64_t>(t)));
    const int n = 1000000;
    std::vector<double> d(n);
    for (double& x : d) x = sample_order_stat({t, Extremum::Maximize}, rng);
    double mean = 0.0;
    for (double x : d) mean += x;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : d) {
      double c = x - mean;
      m2 += c * c;
      m3 += c * c * c;
      m4 += c * c * c * c;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    const double var = m2 * n / (n - 1.0);
    BerryEsseenMoments ref = be_moments(t);
    const double se_mean = std::sqrt(ref.variance / n);
    // Var of the sample variance: (mu4 - sigma^4) / n, estimated from the draws.
    const double se_var = std::sqrt((m4 - m2 * m2) / n);
    const double zm = (mean - ref.mean) / se_mean;
    const double zv = (var - ref.variance) / se_var;
    v.pass = v.pass && std::abs(zm) < 3.0 && std::abs(zv) < 3.0;
    if (t == 16) skew16 = m3 / std::pow(m2, 1.5);
    char buf[80];
    std::snprintf(buf, sizeof buf, "T=%d z(mean)=%.2f z(var)=%.2f; ", t, zm, zv);
    detail += buf;
  }
  v.pass = v.pass && skew16 < 0.0;
  v.detail = detail + "skew(T=16)=" + std::to_string(skew16);
  return v;
}

Verdict ks_figure() {
  KsExperimentConfig cfg{.t_values = {2, 100}, .n_values = {5, 30}, .tests_per_cell = 200, .samples_per_test = 200,
                         .seed = 2016};
  auto cells = ks_normality_experiment(cfg);
  auto rate = [&](int t, int n) {
    for (const auto& c : cells) {
      if (c.t == t && c.n == n) return c.rejection_rate();
    }
    return -1.0;
  };
  KsExperimentConfig control = cfg;
  control.source = DrawSource::Normal;
  int tests = 0, rejections = 0;
  for (const auto& c : ks_normality_experiment(control)) {
    tests += c.tests;
    rejections += c.rejections;
  }
  const double control_rate = static_cast<double>(rejections) / tests;
  Verdict v;
  v.pass = rate(100, 5) > rate(100, 30) && rate(100, 5) > rate(2, 5) && std::abs(control_rate - 0.05) <= 0.02;
  char buf[200];
  std::snprintf(buf, sizeof buf, "P(T=100,n=5)=%.3f P(T=100,n=30)=%.3f P(T=2,n=5)=%.3f control=%.4f (%d tests)",
                rate(100, 5), rate(100, 30), rate(2, 5), control_rate, tests);
  v.detail = buf;
  return v;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Verdict optimizer_race() {
  const TestFunction& fn = Registry::builtin().at("sphere2");
  ExperimentConfig cfg;
  cfg.function_ids = {fn.id};
  cfg.optimizers = {default_config(OptimizerKind::Random), default_config(OptimizerKind::PSO),
                    default_config(OptimizerKind::GpEi)};
  cfg.repeats = 20;
  cfg.master_seed = 7;
  cfg.budget_override = 40;
  cfg.workers = 4;
  ResultStore store = run_suite(cfg);
  std::map<std::string, std::vector<double>> bf;
  for (const auto& [key, r] : store.records()) bf[r.optimizer_id].push_back(r.metrics.best_found);
  TestOutcome gp_vs_rand = mann_whitney(bf["gp_ei"], bf["random"], 0.01);
  Verdict v;
  v.pass = store.failures().empty() && gp_vs_rand.direction == Direction::AGreater &&
           median(bf["pso"]) > median(bf["random"]);
  char buf[200];
  std::snprintf(buf, sizeof buf, "p(gp_ei>random)=%.2e median: gp_ei=%.4g pso=%.4g random=%.4g",
                gp_vs_rand.p_a_greater, median(bf["gp_ei"]), median(bf["pso"]), median(bf["random"]));
  v.detail = buf;
  return v;
}

Verdict determinism() {
  ExperimentConfig cfg;
  cfg.function_ids = {"sphere2", "abs_sum3", "noisy_sphere2", "int_sphere3"};
  cfg.optimizers = default_optimizers();
  cfg.repeats = 3;
  cfg.master_seed = 99;
  cfg.budget_override = 15;
  cfg.workers = 1;
  ResultStore a = run_suite(cfg);
  cfg.workers = 4;
  ResultStore b = run_suite(cfg);
  const std::string sa = a.serialize();
  const std::string sb = b.serialize();
  auto ta = render_markdown(stratified_tables(rank_functions(ResultStore::parse(sa), {.alpha = 0.05}), Stratify::Attribute));
  auto tb = render_markdown(stratified_tables(rank_functions(ResultStore::parse(sb), {.alpha = 0.05}), Stratify::Attribute));
  return {sa == sb && ta == tb && !sa.empty(), std::to_string(sa.size()) + " bytes, " + std::to_string(a.size()) + " runs"};
}

Verdict metric_invariants() {
  Rng rng(10);
  int bad = 0;
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> raw(1 + rng.below(100));
    for (double& x : raw) x = rng.uniform(-50, 50) * (rng.uniform() < 0.1 ? 10.0 : 1.0);
    BestSeenTrace t = best_seen(raw);
    const double lb = *std::min_element(raw.begin(), raw.end()) - rng.uniform(0, 3);
    const double a = auc(t, lb);
    const auto& v = t.values();
    bool ok = a >= v.front() - lb && a <= v.back() - lb && best_seen(v).values() == v &&
              std::is_sorted(v.begin(), v.end());
    if (!ok) ++bad;
  }
  return {bad == 0, std::to_string(bad) + " failing traces of 1000"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1 worked-example aggregation table", table1},
      {"AC2 loss-count ballot and AUC refinement", worked_example},
      {"AC3 family-wise error bound", family_wise},
      {"AC4 Mann-Whitney approximation vs exact", mann_whitney_fidelity},
      {"AC5 Berry-Esseen closed forms", supplementary},
      {"AC6 order statistic Monte Carlo", order_stat_monte_carlo},
      {"AC7 KS normality rejection pattern", ks_figure},
      {"AC8 optimizer sanity race on sphere2", optimizer_race},
      {"AC9 end-to-end determinism", determinism},
      {"AC10 metric invariants", metric_invariants},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s: %s (%.2fs)\n", v.pass ? "PASS" : "FAIL", c.name, v.detail.c_str(), secs);
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
