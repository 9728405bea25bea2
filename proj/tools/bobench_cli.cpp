// bobench: run optimizers on the built-in suite, rank them, and reproduce
// the random-search validity analyses.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "bobench/harness.hpp"
#include "bobench/validity.hpp"

namespace {

using namespace bobench;

std::vector<std::string> split_ids(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::string> resolve_functions(const std::string& arg) {
  if (arg == "all") {
    std::vector<std::string> ids;
    for (const auto& f : Registry::builtin().all()) ids.push_back(f.id);
    return ids;
  }
  std::vector<std::string> ids = split_ids(arg);
  for (const auto& id : ids) Registry::builtin().at(id);
  return ids;
}

std::vector<OptimizerConfig> resolve_optimizers(const std::string& arg) {
  if (arg == "all") return default_optimizers();
  std::vector<OptimizerConfig> out;
  for (const auto& id : split_ids(arg)) {
    auto kind = parse_optimizer_kind(id);
    if (!kind) throw std::invalid_argument("unknown optimizer: " + id);
    out.push_back(default_config(*kind));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Black-box optimizer benchmark harness"};
  app.require_subcommand(1);

  app.add_subcommand("list", "Print the test function manifest");

  auto* run = app.add_subcommand("run", "Run optimizers on test functions");
  std::string functions = "all", optimizers = "all", out_path;
  int repeats = 30;
  std::uint64_t seed = 0;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  int budget = 0;
  run->add_option("--functions", functions, "Comma-separated function ids or 'all'");
  run->add_option("--optimizers", optimizers, "Comma-separated optimizer ids or 'all'");
  run->add_option("--repeats", repeats, "Runs per (function, optimizer)")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--out", out_path, "Output results file (JSON lines)")->required();
  run->add_option("--workers", workers, "Worker threads; results do not depend on it");
  run->add_option("--budget", budget, "Override the evaluation budget");

  auto* rank = app.add_subcommand("rank", "Rank optimizers from a results file");
  std::string in_path, stratify = "none", format = "markdown", test = "u";
  double alpha = 0.0005;
  bool no_auc = false;
  rank->add_option("--in", in_path, "Results file")->required()->check(CLI::ExistingFile);
  rank->add_option("--alpha", alpha, "Per-test significance level");
  rank->add_option("--stratify", stratify)->check(CLI::IsMember({"dimension", "attribute", "none"}));
  rank->add_option("--format", format)->check(CLI::IsMember({"csv", "markdown"}));
  rank->add_option("--test", test, "u: Mann-Whitney, t: Welch")->check(CLI::IsMember({"u", "t"}));
  rank->add_flag("--no-auc", no_auc, "Skip the area-under-curve tie refinement");

  auto* validity = app.add_subcommand("validity", "Random-search order statistic analyses");
  validity->require_subcommand(1);
  auto* ks = validity->add_subcommand("ks", "KS normality of sample means of the best of T draws");
  std::vector<int> t_values{1, 2, 5, 10, 20, 50, 100, 200, 500, 1000}, n_values{5, 10, 15, 30};
  int tests = 800, samples = 500;
  std::uint64_t ks_seed = 0;
  bool estimated = false, control = false;
  ks->add_option("--t-values", t_values)->delimiter(',');
  ks->add_option("--n-values", n_values)->delimiter(',');
  ks->add_option("--tests", tests)->check(CLI::PositiveNumber);
  ks->add_option("--samples", samples)->check(CLI::PositiveNumber);
  ks->add_option("--seed", ks_seed);
  ks->add_flag("--estimated", estimated, "Standardize with sample estimates instead of analytic moments");
  ks->add_flag("--control", control, "Replace order statistic draws with normal draws");
  auto* be = validity->add_subcommand("berry-esseen", "Tabulate Berry-Esseen moments for T = 1..t-max");
  int t_max = 100;
  be->add_option("--t-max", t_max)->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list")) {
      std::cout << Registry::builtin().manifest();
    } else if (app.got_subcommand(run)) {
      ExperimentConfig cfg;
      cfg.function_ids = resolve_functions(functions);
      cfg.optimizers = resolve_optimizers(optimizers);
      cfg.repeats = repeats;
      cfg.master_seed = seed;
      cfg.workers = workers;
      if (budget > 0) cfg.budget_override = budget;
      ResultStore store = run_suite(cfg);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot open " + out_path);
      store.write(out);
      for (const auto& f : store.failures()) {
        std::cerr << "FAILED " << f.function_id << " / " << f.optimizer_id << " repeat " << f.repeat << " seed "
                  << f.seed << ": " << f.message << '\n';
      }
      std::cerr << store.size() << " runs written to " << out_path << '\n';
      return store.failures().empty() ? 0 : 2;
    } else if (app.got_subcommand(rank)) {
      std::ifstream in(in_path);
      ResultStore store = ResultStore::read(in);
      RankOptions opts;
      opts.alpha = alpha;
      opts.test = test == "t" ? TestKind::WelchT : TestKind::MannWhitney;
      opts.refine_by_auc = !no_auc;
      Stratify mode = stratify == "dimension"   ? Stratify::Dimension
                      : stratify == "attribute" ? Stratify::Attribute
                                                : Stratify::None;
      StratifiedResult result = stratified_tables(rank_functions(store, opts), mode);
      for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
      std::cout << (format == "csv" ? render_csv(result) : render_markdown(result));
    } else if (validity->got_subcommand(ks)) {
      KsExperimentConfig cfg;
      cfg.t_values = t_values;
      cfg.n_values = n_values;
      cfg.tests_per_cell = tests;
      cfg.samples_per_test = samples;
      cfg.seed = ks_seed;
      cfg.standardization = estimated ? Standardization::Estimated : Standardization::Analytic;
      cfg.source = control ? DrawSource::Normal : DrawSource::OrderStatistic;
      std::cout << ks_cells_to_csv(ks_normality_experiment(cfg));
    } else if (validity->got_subcommand(be)) {
      std::cout << "T,mean,variance,rho,quotient\n" << std::setprecision(17);
      for (int t = 1; t <= t_max; ++t) {
        BerryEsseenMoments m = be_moments(t);
        std::cout << t << ',' << m.mean << ',' << m.variance << ',' << m.rho << ',' << m.quotient << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
