#include "rors/executor.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <span>
#include <sstream>

#include <json.hpp>

#include "rors/errors.hpp"
#include "rors/vocab.hpp"

namespace rors {
namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string order_string(const Strategy& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.order.size(); ++i) {
    if (i != 0) out += ",";
    out += to_string(s.order[i]);
  }
  out += "]";
  return out;
}

// Orchestrates one materialization run; owns the compiled catalog, the
// per-class orders and the report under construction.
class Executor {
 public:
  Executor(TripleStore& store, Dictionary& dict, const RunConfig& cfg)
      : store_(store), cfg_(cfg), rules_(compile_catalog(dict, cfg.catalog_options)), validity_(dict) {
    resolve_orders();
  }

  ClosureReport run() {
    const auto t0 = Clock::now();
    report_.mode = cfg_.mode;
    report_.workers = cfg_.workers;
    report_.input_count = store_.size();
    report_.strategy = strategy_string();
    switch (cfg_.mode) {
      case ExecutionMode::kPaperStrategy: run_paper(); break;
      case ExecutionMode::kGlobalFixpoint: run_fixpoint(); break;
      case ExecutionMode::kNaiveOracle: run_oracle(); break;
    }
    report_.output_count = store_.size();
    report_.derived_count = report_.output_count - report_.input_count;
    report_.total_millis = millis_since(t0);
    return std::move(report_);
  }

 private:
  const Strategy& order_of(RuleClass c) const {
    return orders_[static_cast<int>(c)];
  }

  void resolve_orders() {
    auto pick = [&](RuleClass c, const std::optional<Strategy>& override_) {
      Strategy s = override_.has_value() ? *override_ : optimal_order(c);
      validate_order(c, s);
      orders_[static_cast<int>(c)] = std::move(s);
    };
    pick(RuleClass::kSchema, cfg_.overrides.schema);
    pick(RuleClass::kSPO, cfg_.overrides.spo);
    pick(RuleClass::kType, cfg_.overrides.type);
    pick(RuleClass::kSameAs, cfg_.overrides.sameas);
  }

  void validate_order(RuleClass c, const Strategy& s) const {
    std::vector<RuleId> want = rules_in_class(c, /*enabled_only=*/true);
    std::vector<RuleId> got = s.order;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got) {
      std::string msg = "order for class ";
      msg += to_string(c);
      msg += " must be a permutation of its enabled rules, got ";
      Strategy tmp{s.order};
      msg += order_string(tmp);
      throw ConfigError(msg);
    }
  }

  std::string strategy_string() const {
    if (cfg_.mode == ExecutionMode::kNaiveOracle) {
      Strategy all;
      for (const CompiledRule& r : rules_)
        if (r.enabled) all.order.push_back(r.id);
      return "round-robin:" + order_string(all);
    }
    std::string out;
    out += "schema:" + order_string(order_of(RuleClass::kSchema));
    out += " spo:" + order_string(order_of(RuleClass::kSPO));
    out += " type:" + order_string(order_of(RuleClass::kType));
    out += " sameas:" + order_string(order_of(RuleClass::kSameAs));
    return out;
  }

  void check_valve(std::size_t count) const {
    if (count > cfg_.max_outer_iterations) {
      throw IterationLimitError(
          "outer iteration limit (" +
          std::to_string(cfg_.max_outer_iterations) + ") exceeded");
    }
  }

  // Runs one phase: the class's rules in order, pipelined so each rule sees
  // its predecessors' fresh derivations.  R1/R2/O4/O6 run as closure
  // kernels.  Returns the phase's fresh triples; the caller merges them.
  TripleStore run_phase(RuleClass cls, const std::string& label) {
    const Vocab& v = store_.vocab();
    TripleStore fresh(v);
    BroadcastMaps maps = build_broadcasts(store_, &fresh);
    std::size_t schema_seen = store_.class_count(TripleClass::kSchema);
    for (RuleId rid : order_of(cls).order) {
      const CompiledRule& rule = rules_[static_cast<std::size_t>(rid)];
      const std::size_t schema_now = store_.class_count(TripleClass::kSchema) +
                                     fresh.class_count(TripleClass::kSchema);
      if (schema_now != schema_seen) {
        maps = build_broadcasts(store_, &fresh);
        schema_seen = schema_now;
      }
      const auto t0 = Clock::now();
      std::vector<Triple> derived;
      switch (rid) {
        case RuleId::kR1:
          derived = close_predicate_pairs(store_, &fresh, v.sub_class_of,
                                          TripleClass::kSchema);
          break;
        case RuleId::kR2:
          derived = close_predicate_pairs(store_, &fresh, v.sub_property_of,
                                          TripleClass::kSchema);
          break;
        case RuleId::kO6:
          derived = close_predicate_pairs(store_, &fresh, v.same_as,
                                          TripleClass::kSameAs);
          break;
        case RuleId::kO4:
          derived = evaluate_transitive_properties(store_, &fresh);
          break;
        default:
          derived = apply_rule_broadcast(store_, &fresh, rule, maps, validity_,
                                         cfg_.workers);
          break;
      }
      const std::size_t added = fresh.insert(std::span<const Triple>(derived));
      report_.per_phase.push_back({label, rid, added, millis_since(t0)});
    }
    return fresh;
  }

  // One {SPO; Type} loop + surrounding Schema/SameAs phases.  Returns the
  // number of triples added and reports the loop iteration count.
  std::size_t run_pipeline(const std::string& prefix,
                           std::size_t& loop_iterations) {
    const std::size_t before = store_.size();
    store_.insert(run_phase(RuleClass::kSchema, prefix + "schema"));
    std::size_t iter = 0;
    while (true) {
      ++iter;
      check_valve(iter);
      const std::string n = std::to_string(iter);
      const std::size_t spo =
          store_.insert(run_phase(RuleClass::kSPO, prefix + "spo#" + n));
      const std::size_t type =
          store_.insert(run_phase(RuleClass::kType, prefix + "type#" + n));
      if (spo == 0 && type == 0) break;
    }
    store_.insert(run_phase(RuleClass::kSameAs, prefix + "sameas"));
    loop_iterations = iter;
    return store_.size() - before;
  }

  void run_paper() {
    std::size_t iters = 0;
    run_pipeline("", iters);
    report_.outer_iterations = iters;
  }

  void run_fixpoint() {
    std::size_t pass = 0;
    while (true) {
      ++pass;
      check_valve(pass);
      std::size_t inner = 0;
      const std::size_t added =
          run_pipeline("p" + std::to_string(pass) + "/", inner);
      if (added == 0) break;
    }
    report_.outer_iterations = pass;
  }

  void run_oracle() {
    const Vocab& v = store_.vocab();
    TripleStore base(v);
    TripleStore delta(v);
    delta.insert(store_);
    std::size_t round = 0;
    do {
      ++round;
      check_valve(round);
      const std::string label = "round#" + std::to_string(round);
      TripleStore next(v);
      for (const CompiledRule& rule : rules_) {
        if (!rule.enabled) continue;
        const auto t0 = Clock::now();
        std::vector<Triple> derived =
            apply_rule_delta(base, delta, rule, validity_);
        std::size_t added = 0;
        for (const Triple& t : derived)
          if (!delta.contains(t)) added += next.insert(t);
        report_.per_phase.push_back({label, rule.id, added, millis_since(t0)});
      }
      base.insert(delta);
      delta = std::move(next);
    } while (!delta.empty());
    report_.outer_iterations = round;
    store_.insert(base);
  }

  TripleStore& store_;
  const RunConfig& cfg_;
  std::vector<CompiledRule> rules_;
  TermValidity validity_;
  std::array<Strategy, 4> orders_;
  ClosureReport report_;
};

bool same_closure(const TripleStore& a, const TripleStore& b) {
  if (a.size() != b.size()) return false;
  for (const Triple& t : a.triples())
    if (!b.contains(t)) return false;
  return true;
}

}  // namespace

const char* to_string(ExecutionMode m) {
  switch (m) {
    case ExecutionMode::kPaperStrategy: return "paper";
    case ExecutionMode::kGlobalFixpoint: return "fixpoint";
    case ExecutionMode::kNaiveOracle: return "oracle";
  }
  return "?";
}

std::optional<ExecutionMode> execution_mode_from_string(std::string_view name) {
  if (name == "paper") return ExecutionMode::kPaperStrategy;
  if (name == "fixpoint") return ExecutionMode::kGlobalFixpoint;
  if (name == "oracle") return ExecutionMode::kNaiveOracle;
  return std::nullopt;
}

ClosureReport materialize(TripleStore& store, Dictionary& dict,
                          const RunConfig& config) {
  if (config.workers < 1) throw ConfigError("workers must be >= 1");
  Executor exec(store, dict, config);
  return exec.run();
}

Comparison compare_strategies(const TripleStore& store, Dictionary& dict,
                              std::span<const StrategyRun> runs) {
  if (runs.empty()) throw ConfigError("no strategies to compare");
  Comparison out;
  std::vector<std::pair<std::string, TripleStore>> complete_closures;
  for (const StrategyRun& run : runs) {
    TripleStore copy = store;
    ClosureReport rep = materialize(copy, dict, run.config);
    ComparisonRow row;
    row.name = run.name;
    row.mode = rep.mode;
    row.outer_iterations = rep.outer_iterations;
    row.rule_applications = rep.rule_applications();
    row.derived = rep.derived_count;
    row.output = rep.output_count;
    row.millis = rep.total_millis;
    out.rows.push_back(std::move(row));
    if (run.config.mode != ExecutionMode::kPaperStrategy)
      complete_closures.emplace_back(run.name, std::move(copy));
  }
  for (std::size_t i = 1; i < complete_closures.size(); ++i) {
    if (!same_closure(complete_closures[0].second,
                      complete_closures[i].second)) {
      throw VerificationError(
          "strategies disagree on the final closure: '" +
          complete_closures[0].first + "' produced " +
          std::to_string(complete_closures[0].second.size()) +
          " triples, '" + complete_closures[i].first + "' produced " +
          std::to_string(complete_closures[i].second.size()));
    }
  }
  return out;
}

std::string report_json(const ClosureReport& report) {
  nlohmann::ordered_json j;
  j["mode"] = to_string(report.mode);
  j["strategy"] = report.strategy;
  j["workers"] = report.workers;
  j["input_count"] = report.input_count;
  j["output_count"] = report.output_count;
  j["derived_count"] = report.derived_count;
  j["outer_iterations"] = report.outer_iterations;
  j["rule_applications"] = report.rule_applications();
  j["total_millis"] = report.total_millis;
  nlohmann::ordered_json phases = nlohmann::ordered_json::array();
  for (const PhaseEntry& e : report.per_phase) {
    nlohmann::ordered_json p;
    p["phase"] = e.phase;
    p["rule"] = to_string(e.rule);
    p["fresh"] = e.fresh;
    p["millis"] = e.millis;
    phases.push_back(std::move(p));
  }
  j["per_phase"] = std::move(phases);
  return j.dump(2);
}

std::string comparison_json(const Comparison& comparison) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ComparisonRow& r : comparison.rows) {
    nlohmann::ordered_json row;
    row["name"] = r.name;
    row["mode"] = to_string(r.mode);
    row["outer_iterations"] = r.outer_iterations;
    row["rule_applications"] = r.rule_applications;
    row["derived"] = r.derived;
    row["output"] = r.output;
    row["millis"] = r.millis;
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json j;
  j["rows"] = std::move(rows);
  return j.dump(2);
}

}  // namespace rors
