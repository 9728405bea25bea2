#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "bobench/optimizers.hpp"
#include "bobench/ranking.hpp"
#include "bobench/testfns.hpp"

namespace bobench {

// 80 evaluations, or 20d when d < 4.
int budget_for(const TestFunction& fn);
int budget_for_dimension(std::size_t d);

// Per-run seed: mix64(master ^ mix64(fnv1a(function) ^ mix64(fnv1a(optimizer) ^ mix64(repeat)))).
std::uint64_t derive_seed(std::uint64_t master, std::string_view function_id, std::string_view optimizer_id,
                          int repeat);

struct ExperimentConfig {
  std::vector<std::string> function_ids;
  std::vector<OptimizerConfig> optimizers;
  int repeats = 30;
  std::uint64_t master_seed = 0;
  std::optional<int> budget_override;
  double alpha = 0.0005;
  unsigned workers = 1;
};

struct RunFailure {
  std::string function_id;
  std::string optimizer_id;
  int repeat = 0;
  std::uint64_t seed = 0;
  std::string message;
};

using RunKey = std::tuple<std::string, std::string, std::uint64_t>;  // function, optimizer, seed

// Append-only set of runs, iterated in key order.
class ResultStore {
 public:
  // Throws std::invalid_argument on a duplicate key.
  void add(RunRecord record);
  void add_failure(RunFailure failure) { failures_.push_back(std::move(failure)); }

  const std::map<RunKey, RunRecord>& records() const { return records_; }
  const std::vector<RunFailure>& failures() const { return failures_; }
  std::size_t size() const { return records_.size(); }

  std::set<std::string> function_ids() const;
  std::set<std::string> optimizer_ids() const;

  // One JSON object per line with a fixed field order.
  void write(std::ostream& os) const;
  std::string serialize() const;
  static ResultStore read(std::istream& is);
  static ResultStore parse(const std::string& text);

  bool operator==(const ResultStore& o) const { return records_ == o.records_; }

 private:
  std::map<RunKey, RunRecord> records_;
  std::vector<RunFailure> failures_;
};

// Runs every (function, optimizer, repeat) cell. Failed runs are recorded
// as failures in the returned store.
ResultStore run_suite(const ExperimentConfig& cfg, const Registry& registry = Registry::builtin());

// Recomputes MetricPair from the stored trace; exact comparison.
bool metrics_consistent(const RunRecord& record, const TestFunction& fn);

struct RankOptions {
  double alpha = 0.0005;
  TestKind test = TestKind::MannWhitney;
  bool refine_by_auc = true;
};

struct Ballot {
  std::string function_id;
  std::size_t dimension = 0;
  std::set<Attribute> attributes;
  PartialRanking ranking;
};

// One ballot per function, in function id order. Best Found decides the
// base ranking; AUC splits surviving ties.
std::vector<Ballot> rank_functions(const ResultStore& store, const RankOptions& opts = {});

enum class Stratify { None, Dimension, Attribute };

struct StratumTable {
  std::string stratum;
  AggregateTable table;
  std::vector<std::string> functions;
};

struct StratifiedResult {
  std::vector<StratumTable> tables;
  std::vector<std::string> warnings;
};

StratifiedResult stratified_tables(const std::vector<Ballot>& ballots, Stratify mode);

bool is_bayesian_method(const std::string& optimizer_id);

std::string render_csv(const StratifiedResult& result);
std::string render_markdown(const StratifiedResult& result);

}  // namespace bobench
