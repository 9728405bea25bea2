#include "bobench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <variant>

#include <nlohmann/json.hpp>

namespace bobench {

using ordered_json = nlohmann::ordered_json;

int budget_for_dimension(std::size_t d) { return d < 4 ? static_cast<int>(20 * d) : 80; }

int budget_for(const TestFunction& fn) { return budget_for_dimension(fn.dim()); }

std::uint64_t derive_seed(std::uint64_t master, std::string_view function_id, std::string_view optimizer_id,
                          int repeat) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(repeat));
  h = mix64(fnv1a(optimizer_id) ^ h);
  h = mix64(fnv1a(function_id) ^ h);
  return mix64(master ^ h);
}

// ---------------------------------------------------------------------------

void ResultStore::add(RunRecord record) {
  RunKey key{record.function_id, record.optimizer_id, record.seed};
  if (!records_.emplace(key, std::move(record)).second) {
    throw std::invalid_argument("ResultStore: duplicate run key for " + std::get<0>(key) + "/" + std::get<1>(key));
  }
}

std::set<std::string> ResultStore::function_ids() const {
  std::set<std::string> ids;
  for (const auto& [key, r] : records_) ids.insert(std::get<0>(key));
  return ids;
}

std::set<std::string> ResultStore::optimizer_ids() const {
  std::set<std::string> ids;
  for (const auto& [key, r] : records_) ids.insert(std::get<1>(key));
  return ids;
}

namespace {

ordered_json to_json(const RunRecord& r) {
  ordered_json j;
  j["function"] = r.function_id;
  j["optimizer"] = r.optimizer_id;
  j["repeat"] = r.repeat;
  j["seed"] = r.seed;
  j["dimension"] = r.dimension;
  ordered_json attrs = ordered_json::array();
  for (Attribute a : r.attributes) attrs.push_back(std::string(to_string(a)));
  j["attributes"] = attrs;
  ordered_json xs = ordered_json::array();
  ordered_json obs = ordered_json::array();
  ordered_json tru = ordered_json::array();
  for (const auto& s : r.steps) {
    xs.push_back(s.x);
    obs.push_back(s.observed);
    tru.push_back(s.true_value);
  }
  j["x"] = xs;
  j["observed"] = obs;
  j["true"] = tru;
  j["best_found"] = r.metrics.best_found;
  j["auc"] = r.metrics.auc;
  return j;
}

RunRecord from_json(const nlohmann::json& j) {
  RunRecord r;
  r.function_id = j.at("function").get<std::string>();
  r.optimizer_id = j.at("optimizer").get<std::string>();
  r.repeat = j.at("repeat").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.dimension = j.at("dimension").get<std::size_t>();
  for (const auto& a : j.at("attributes")) {
    auto attr = parse_attribute(a.get<std::string>());
    if (!attr) throw std::invalid_argument("unknown attribute in results: " + a.get<std::string>());
    r.attributes.insert(*attr);
  }
  const auto& xs = j.at("x");
  const auto& obs = j.at("observed");
  const auto& tru = j.at("true");
  if (xs.size() != obs.size() || xs.size() != tru.size()) {
    throw std::invalid_argument("results line has ragged step arrays");
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    r.steps.push_back({xs[i].get<std::vector<double>>(), obs[i].get<double>(), tru[i].get<double>()});
  }
  r.metrics.best_found = j.at("best_found").get<double>();
  r.metrics.auc = j.at("auc").get<double>();
  return r;
}

}  // namespace

void ResultStore::write(std::ostream& os) const {
  for (const auto& [key, r] : records_) os << to_json(r).dump() << '\n';
}

std::string ResultStore::serialize() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

ResultStore ResultStore::read(std::istream& is) {
  ResultStore store;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      store.add(from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("results line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return store;
}

ResultStore ResultStore::parse(const std::string& text) {
  std::istringstream is(text);
  return read(is);
}

// ---------------------------------------------------------------------------

ResultStore run_suite(const ExperimentConfig& cfg, const Registry& registry) {
  if (cfg.repeats < 1) throw std::invalid_argument("run_suite: repeats must be >= 1");
  struct Job {
    const TestFunction* fn;
    const OptimizerConfig* opt;
    int repeat;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& fid : cfg.function_ids) {
    const TestFunction& fn = registry.at(fid);
    for (const auto& oc : cfg.optimizers) {
      for (int r = 0; r < cfg.repeats; ++r) {
        jobs.push_back({&fn, &oc, r, derive_seed(cfg.master_seed, fn.id, oc.name(), r)});
      }
    }
  }

  std::vector<std::variant<RunRecord, RunFailure>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      try {
        int budget = cfg.budget_override.value_or(budget_for(*job.fn));
        RunRecord rec = run_optimization(*job.opt, *job.fn, budget, job.seed);
        rec.repeat = job.repeat;
        results[i] = std::move(rec);
      } catch (const std::exception& e) {
        results[i] = RunFailure{job.fn->id, job.opt->name(), job.repeat, job.seed, e.what()};
      }
    }
  };
  const unsigned n_workers = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(jobs.size())));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }

  ResultStore store;
  for (auto& res : results) {
    if (auto* rec = std::get_if<RunRecord>(&res)) {
      store.add(std::move(*rec));
    } else {
      store.add_failure(std::get<RunFailure>(std::move(res)));
    }
  }
  return store;
}

bool metrics_consistent(const RunRecord& record, const TestFunction& fn) {
  return metric_pair(record.trace(), fn.f_lb) == record.metrics;
}

// ---------------------------------------------------------------------------

std::vector<Ballot> rank_functions(const ResultStore& store, const RankOptions& opts) {
  std::set<std::string> optimizers = store.optimizer_ids();
  if (optimizers.size() < 2) throw std::invalid_argument("rank_functions: need at least two optimizers");

  struct Cell {
    std::vector<double> best_found;
    std::vector<double> auc;
  };
  std::map<std::string, std::map<std::string, Cell>> cells;
  std::map<std::string, const RunRecord*> meta;
  for (const auto& [key, r] : store.records()) {
    Cell& c = cells[r.function_id][r.optimizer_id];
    c.best_found.push_back(r.metrics.best_found);
    c.auc.push_back(r.metrics.auc);
    meta.emplace(r.function_id, &r);
  }

  std::vector<Ballot> ballots;
  for (const auto& [fid, by_opt] : cells) {
    SampleMap primary, secondary;
    for (const auto& oid : optimizers) {
      auto it = by_opt.find(oid);
      std::size_t n = it == by_opt.end() ? 0 : it->second.best_found.size();
      if (n < 2) {
        throw std::invalid_argument("rank_functions: cell (" + fid + ", " + oid + ") has " + std::to_string(n) +
                                    " successful runs; need at least 2");
      }
      primary[oid] = it->second.best_found;
      secondary[oid] = it->second.auc;
    }
    PartialRanking ranking = partial_ranking(pairwise_outcomes(primary, opts.alpha, opts.test));
    if (opts.refine_by_auc) ranking = refine_ranking(ranking, secondary, opts.alpha, opts.test);
    const RunRecord* r = meta.at(fid);
    ballots.push_back({fid, r->dimension, r->attributes, std::move(ranking)});
  }
  return ballots;
}

StratifiedResult stratified_tables(const std::vector<Ballot>& ballots, Stratify mode) {
  StratifiedResult out;
  auto emit = [&](std::string name, auto&& member) {
    StratumTable st;
    st.stratum = std::move(name);
    std::vector<PartialRanking> chosen;
    for (const auto& b : ballots) {
      if (member(b)) {
        chosen.push_back(b.ranking);
        st.functions.push_back(b.function_id);
      }
    }
    if (chosen.empty()) out.warnings.push_back("stratum '" + st.stratum + "' has no functions");
    st.table = aggregate(chosen);
    out.tables.push_back(std::move(st));
  };
  switch (mode) {
    case Stratify::None:
      emit("all", [](const Ballot&) { return true; });
      break;
    case Stratify::Dimension:
      for (auto bucket : {DimensionBucket::Two, DimensionBucket::ThreeToFive, DimensionBucket::SixToNine,
                          DimensionBucket::TenPlus}) {
        emit(std::string(to_string(bucket)), [bucket](const Ballot& b) { return bucket_of(b.dimension) == bucket; });
      }
      break;
    case Stratify::Attribute:
      for (Attribute a : kAllAttributes) {
        emit(std::string(to_string(a)), [a](const Ballot& b) { return b.attributes.count(a) != 0; });
      }
      break;
  }
  return out;
}

bool is_bayesian_method(const std::string& optimizer_id) { return optimizer_id.rfind("gp", 0) == 0; }

std::string render_csv(const StratifiedResult& result) {
  std::string out = "stratum,method,borda,firsts,top_three\n";
  for (const auto& st : result.tables) out += to_csv(st.table, st.stratum);
  return out;
}

std::string render_markdown(const StratifiedResult& result) {
  std::ostringstream os;
  for (const auto& st : result.tables) {
    os << "### " << st.stratum << " (" << st.table.ballots << " functions)\n\n";
    if (st.table.rows.empty()) {
      os << "_no functions in this stratum_\n\n";
      continue;
    }
    os << to_markdown(st.table, is_bayesian_method) << '\n';
  }
  return os.str();
}

}  // namespace bobench
