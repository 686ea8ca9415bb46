#ifndef RORS_EXECUTOR_HPP
#define RORS_EXECUTOR_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rors/dependency.hpp"
#include "rors/engine.hpp"
#include "rors/rule.hpp"
#include "rors/triple.hpp"

namespace rors {

// How the closure is driven.
//  - kPaperStrategy: Schema phase once, then {SPO phase; Type phase} looped
//    until neither derives anything, then SameAs phase once.  Fast and
//    faithful to the published pipeline, but may under-close inputs whose
//    sameAs facts feed instance rules.
//  - kGlobalFixpoint: the whole pipeline repeated until a full pass derives
//    nothing; complete on every input.
//  - kNaiveOracle: order-independent round-robin over all enabled rules with
//    semi-naive deltas until fixpoint; the reference the other two are
//    checked against.
enum class ExecutionMode { kPaperStrategy, kGlobalFixpoint, kNaiveOracle };

const char* to_string(ExecutionMode m);
std::optional<ExecutionMode> execution_mode_from_string(std::string_view name);

struct PhaseEntry {
  std::string phase;  // e.g. "schema", "spo#2", "p3/type#1", "round#4"
  RuleId rule;
  std::size_t fresh = 0;  // triples this application added to the store
  double millis = 0.0;
};

struct ClosureReport {
  ExecutionMode mode = ExecutionMode::kPaperStrategy;
  std::string strategy;  // human-readable description of the orders used
  int workers = 1;
  std::size_t input_count = 0;
  std::size_t output_count = 0;
  std::size_t derived_count = 0;  // output_count - input_count
  std::size_t outer_iterations = 0;
  double total_millis = 0.0;
  std::vector<PhaseEntry> per_phase;

  std::size_t rule_applications() const { return per_phase.size(); }
};

// Per-class order overrides; an unset class runs its canonical order.  Each
// override must be a permutation of the enabled rules of its class.
struct StrategyOverrides {
  std::optional<Strategy> schema;
  std::optional<Strategy> spo;
  std::optional<Strategy> type;
  std::optional<Strategy> sameas;
};

struct RunConfig {
  ExecutionMode mode = ExecutionMode::kPaperStrategy;
  int workers = 1;
  std::size_t max_outer_iterations = 10000;  // safety valve
  CatalogOptions catalog_options;
  StrategyOverrides overrides;
};

// Materializes the deductive closure of `store` in place and reports what
// happened.  `dict` is the dictionary the store's terms live in; rule
// constants are interned into it.  Throws ConfigError on invalid overrides
// and IterationLimitError when the safety valve trips.
ClosureReport materialize(TripleStore& store, Dictionary& dict,
                          const RunConfig& config = {});

struct StrategyRun {
  std::string name;
  RunConfig config;
};

struct ComparisonRow {
  std::string name;
  ExecutionMode mode = ExecutionMode::kPaperStrategy;
  std::size_t outer_iterations = 0;
  std::size_t rule_applications = 0;
  std::size_t derived = 0;
  std::size_t output = 0;
  double millis = 0.0;
};

struct Comparison {
  std::vector<ComparisonRow> rows;
};

// Runs every strategy on its own copy of `store` and tabulates the results.
// All runs in fixpoint or oracle mode must produce identical closures;
// a mismatch throws VerificationError (it would indicate an engine bug).
Comparison compare_strategies(const TripleStore& store, Dictionary& dict,
                              std::span<const StrategyRun> runs);

// JSON serializations (stable key order) for reports and comparisons.
std::string report_json(const ClosureReport& report);
std::string comparison_json(const Comparison& comparison);

}  // namespace rors

#endif  // RORS_EXECUTOR_HPP
