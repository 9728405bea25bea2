#include "bobench/ranking.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bobench {

std::size_t PairwiseOutcomeMatrix::index_of(const MethodId& id) const {
  auto it = std::find(methods.begin(), methods.end(), id);
  if (it == methods.end()) throw std::invalid_argument("unknown method: " + id);
  return static_cast<std::size_t>(it - methods.begin());
}

PairwiseOutcomeMatrix matrix_from_wins(std::vector<MethodId> methods,
                                       const std::vector<std::pair<MethodId, MethodId>>& wins) {
  PairwiseOutcomeMatrix m;
  m.methods = std::move(methods);
  m.beats.assign(m.size(), std::vector<bool>(m.size(), false));
  for (const auto& [winner, loser] : wins) {
    std::size_t i = m.index_of(winner);
    std::size_t j = m.index_of(loser);
    if (i == j || m.beats[j][i]) throw std::invalid_argument("matrix_from_wins: inconsistent win set");
    m.beats[i][j] = true;
  }
  return m;
}

PartialRanking::PartialRanking(std::vector<std::vector<MethodId>> groups) : groups_(std::move(groups)) {
  std::size_t remaining = 0;
  for (const auto& g : groups_) {
    if (g.empty()) throw std::invalid_argument("PartialRanking: empty group");
    remaining += g.size();
  }
  for (const auto& g : groups_) {
    remaining -= g.size();
    for (const auto& id : g) {
      if (!borda_.emplace(id, static_cast<int>(remaining)).second) {
        throw std::invalid_argument("PartialRanking: method listed twice: " + id);
      }
    }
  }
}

std::size_t PartialRanking::group_index(const MethodId& id) const {
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (std::find(groups_[g].begin(), groups_[g].end(), id) != groups_[g].end()) return g + 1;
  }
  throw std::invalid_argument("PartialRanking: unknown method " + id);
}

std::string PartialRanking::to_string() const {
  std::ostringstream os;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (g) os << " > ";
    if (groups_[g].size() > 1) os << '(';
    for (std::size_t k = 0; k < groups_[g].size(); ++k) os << (k ? ", " : "") << groups_[g][k];
    if (groups_[g].size() > 1) os << ')';
  }
  return os.str();
}

PairTest pair_test(TestKind kind) {
  if (kind == TestKind::WelchT) return welch_t;
  return mann_whitney;
}

PairwiseOutcomeMatrix pairwise_outcomes(const SampleMap& samples, double alpha, TestKind kind) {
  if (samples.size() < 2) throw std::invalid_argument("pairwise_outcomes: need at least two methods");
  PairwiseOutcomeMatrix m;
  for (const auto& [id, values] : samples) {
    if (values.size() < 2) throw std::invalid_argument("pairwise_outcomes: method " + id + " has < 2 samples");
    m.methods.push_back(id);
  }
  m.beats.assign(m.size(), std::vector<bool>(m.size(), false));
  PairTest test = pair_test(kind);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      TestOutcome r = test(samples.at(m.methods[i]), samples.at(m.methods[j]), alpha);
      if (r.direction == Direction::AGreater) m.beats[i][j] = true;
      if (r.direction == Direction::BGreater) m.beats[j][i] = true;
    }
  }
  return m;
}

PartialRanking partial_ranking(const PairwiseOutcomeMatrix& outcomes) {
  const std::size_t m = outcomes.size();
  std::map<int, std::vector<MethodId>> by_losses;
  for (std::size_t i = 0; i < m; ++i) {
    int losses = 0;
    for (std::size_t j = 0; j < m; ++j) losses += outcomes.beats[j][i] ? 1 : 0;
    by_losses[losses].push_back(outcomes.methods[i]);
  }
  std::vector<std::vector<MethodId>> groups;
  for (auto& [losses, members] : by_losses) groups.push_back(std::move(members));
  return PartialRanking(std::move(groups));
}

PartialRanking refine_ranking(const PartialRanking& base, const SampleMap& secondary, double alpha,
                              TestKind kind) {
  std::vector<std::vector<MethodId>> groups;
  for (const auto& g : base.groups()) {
    if (g.size() < 2) {
      groups.push_back(g);
      continue;
    }
    SampleMap sub;
    for (const auto& id : g) {
      auto it = secondary.find(id);
      if (it == secondary.end()) throw std::invalid_argument("refine_ranking: no secondary samples for " + id);
      sub.emplace(id, it->second);
    }
    PartialRanking inner = partial_ranking(pairwise_outcomes(sub, alpha, kind));
    for (const auto& sg : inner.groups()) groups.push_back(sg);
  }
  return PartialRanking(std::move(groups));
}

AggregateTable aggregate(const std::vector<PartialRanking>& ballots) {
  AggregateTable t;
  if (ballots.empty()) return t;
  std::set<MethodId> methods;
  for (const auto& [id, b] : ballots.front().borda()) methods.insert(id);
  for (const auto& id : methods) t.rows[id] = {};
  for (const auto& ballot : ballots) {
    std::set<MethodId> here;
    for (const auto& [id, b] : ballot.borda()) here.insert(id);
    if (here != methods) throw std::invalid_argument("aggregate: ballots cover different method sets");
    for (std::size_t g = 0; g < ballot.groups().size(); ++g) {
      for (const auto& id : ballot.groups()[g]) {
        AggregateRow& row = t.rows[id];
        row.borda_total += ballot.borda(id);
        if (g == 0) ++row.firsts;
        if (g < 3) ++row.top_three;
      }
    }
    ++t.ballots;
  }
  return t;
}

std::vector<MethodId> sorted_methods(const AggregateTable& table) {
  std::vector<MethodId> ids;
  for (const auto& [id, row] : table.rows) ids.push_back(id);
  std::stable_sort(ids.begin(), ids.end(), [&](const MethodId& a, const MethodId& b) {
    const AggregateRow& ra = table.rows.at(a);
    const AggregateRow& rb = table.rows.at(b);
    if (ra.borda_total != rb.borda_total) return ra.borda_total > rb.borda_total;
    if (ra.firsts != rb.firsts) return ra.firsts > rb.firsts;
    return ra.top_three > rb.top_three;
  });
  return ids;
}

std::string to_csv(const AggregateTable& table, const std::string& stratum) {
  std::ostringstream os;
  for (const auto& id : sorted_methods(table)) {
    const AggregateRow& r = table.rows.at(id);
    os << stratum << ',' << id << ',' << r.borda_total << ',' << r.firsts << ',' << r.top_three << '\n';
  }
  return os.str();
}

std::string to_markdown(const AggregateTable& table, const MethodClassifier& is_bayesian) {
  struct Line {
    std::string cells[4];
  };
  std::vector<Line> lines;
  std::vector<MethodId> order = sorted_methods(table);
  auto push_rows = [&](bool bayesian_section, bool filter) {
    for (const auto& id : order) {
      if (filter && is_bayesian(id) != bayesian_section) continue;
      const AggregateRow& r = table.rows.at(id);
      lines.push_back({{id, std::to_string(r.borda_total), std::to_string(r.firsts), std::to_string(r.top_three)}});
    }
  };
  std::vector<std::size_t> section_breaks;
  std::vector<std::string> section_names;
  if (is_bayesian) {
    section_names = {"Bayesian", "Non-Bayesian"};
    push_rows(true, true);
    section_breaks.push_back(lines.size());
    push_rows(false, true);
  } else {
    push_rows(false, false);
  }

  std::size_t w[4] = {9, 5, 6, 9};  // header widths
  for (const auto& l : lines) {
    for (int c = 0; c < 4; ++c) w[c] = std::max(w[c], l.cells[c].size());
  }
  for (const auto& s : section_names) w[0] = std::max(w[0], s.size() + 4);

  auto pad_left = [](const std::string& s, std::size_t n) { return s + std::string(n - s.size(), ' '); };
  auto pad_right = [](const std::string& s, std::size_t n) { return std::string(n - s.size(), ' ') + s; };
  std::ostringstream os;
  os << "| " << pad_left("Algorithm", w[0]) << " | " << pad_right("Borda", w[1]) << " | "
     << pad_right("Firsts", w[2]) << " | " << pad_right("Top Three", w[3]) << " |\n";
  os << "|" << std::string(w[0] + 2, '-') << "|" << std::string(w[1] + 1, '-') << ":|"
     << std::string(w[2] + 1, '-') << ":|" << std::string(w[3] + 1, '-') << ":|\n";
  auto section_row = [&](const std::string& name) {
    os << "| " << pad_left("**" + name + "**", w[0]) << " | " << std::string(w[1], ' ') << " | "
       << std::string(w[2], ' ') << " | " << std::string(w[3], ' ') << " |\n";
  };
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (!section_names.empty() && k == 0) section_row(section_names[0]);
    if (!section_breaks.empty() && k == section_breaks[0]) section_row(section_names[1]);
    const Line& l = lines[k];
    os << "| " << pad_left(l.cells[0], w[0]) << " | " << pad_right(l.cells[1], w[1]) << " | "
       << pad_right(l.cells[2], w[2]) << " | " << pad_right(l.cells[3], w[3]) << " |\n";
  }
  if (!section_names.empty() && section_breaks[0] == lines.size()) section_row(section_names[1]);
  return os.str();
}

}  // namespace bobench
