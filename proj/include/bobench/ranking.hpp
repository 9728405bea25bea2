#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bobench/stattests.hpp"

namespace bobench {

using MethodId = std::string;
using SampleMap = std::map<MethodId, std::vector<double>>;

// beats[i][j]: method i significantly greater than method j.
struct PairwiseOutcomeMatrix {
  std::vector<MethodId> methods;
  std::vector<std::vector<bool>> beats;

  std::size_t size() const { return methods.size(); }
  std::size_t index_of(const MethodId& id) const;
  bool operator==(const PairwiseOutcomeMatrix&) const = default;
};

// Builds a matrix from a list of directed wins, e.g. {{"A","D"}, {"A","C"}}.
PairwiseOutcomeMatrix matrix_from_wins(std::vector<MethodId> methods,
                                       const std::vector<std::pair<MethodId, MethodId>>& wins);

// Ordered tie groups, best first. Borda of a method is the number of methods
// in strictly later groups.
class PartialRanking {
 public:
  PartialRanking() = default;
  explicit PartialRanking(std::vector<std::vector<MethodId>> groups);

  const std::vector<std::vector<MethodId>>& groups() const { return groups_; }
  const std::map<MethodId, int>& borda() const { return borda_; }
  int borda(const MethodId& id) const { return borda_.at(id); }
  // 1-based index of the group holding id.
  std::size_t group_index(const MethodId& id) const;
  std::size_t method_count() const { return borda_.size(); }
  bool is_total_order() const { return groups_.size() == borda_.size(); }

  // "A > (B, C) > D"
  std::string to_string() const;

  bool operator==(const PartialRanking& o) const { return groups_ == o.groups_; }

 private:
  std::vector<std::vector<MethodId>> groups_;
  std::map<MethodId, int> borda_;
};

enum class TestKind { MannWhitney, WelchT };

using PairTest = std::function<TestOutcome(std::span<const double>, std::span<const double>, double)>;
PairTest pair_test(TestKind kind);

// Runs the chosen test on every unordered pair of methods.
PairwiseOutcomeMatrix pairwise_outcomes(const SampleMap& samples, double alpha,
                                        TestKind kind = TestKind::MannWhitney);

// Groups methods by loss count, fewest losses first. Within a group methods
// keep the matrix order.
PartialRanking partial_ranking(const PairwiseOutcomeMatrix& outcomes);

// Splits every tie group of size >= 2 by a secondary-metric partial ranking
// restricted to that group; groups never exchange members.
PartialRanking refine_ranking(const PartialRanking& base, const SampleMap& secondary, double alpha,
                              TestKind kind = TestKind::MannWhitney);

struct AggregateRow {
  int borda_total = 0;
  int firsts = 0;
  int top_three = 0;
  bool operator==(const AggregateRow&) const = default;
};

struct AggregateTable {
  std::map<MethodId, AggregateRow> rows;
  int ballots = 0;
  bool operator==(const AggregateTable&) const = default;
};

AggregateTable aggregate(const std::vector<PartialRanking>& ballots);

// Methods sorted by Borda descending, then Firsts, Top Three and id.
std::vector<MethodId> sorted_methods(const AggregateTable& table);

// Sectioned output: methods whose id satisfies is_bayesian are listed first
// under their own header when the predicate is supplied.
using MethodClassifier = std::function<bool(const MethodId&)>;
std::string to_csv(const AggregateTable& table, const std::string& stratum = "");
std::string to_markdown(const AggregateTable& table, const MethodClassifier& is_bayesian = {});

}  // namespace bobench
