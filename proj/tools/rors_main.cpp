// rors — RDF reasoning workbench.
//
// Subcommands: materialize, stats, strategies, rules dump, generate, bench.
// Exit codes: 0 success, 1 usage/configuration error, 2 input parse or I/O
// error, 3 verification mismatch, 4 other runtime failure.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rors/dependency.hpp"
#include "rors/errors.hpp"
#include "rors/executor.hpp"
#include "rors/generator.hpp"
#include "rors/ntriples.hpp"
#include "rors/rule.hpp"
#include "rors/term.hpp"
#include "rors/triple.hpp"
#include "rors/vocab.hpp"

namespace {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// shared helpers

rors::Strictness strictness_from_flags(bool lenient) {
  return lenient ? rors::Strictness::kLenient : rors::Strictness::kStrict;
}

void report_diagnostics(const std::vector<rors::ParseDiagnostic>& diags) {
  for (const auto& d : diags) {
    std::cerr << "warning: line " << d.line_number << ": " << d.message << "\n";
  }
}

// Loads every input file into one deduplicated store.
rors::TripleStore load_inputs(const std::vector<std::string>& paths,
                              rors::Dictionary& dict, rors::Strictness strictness) {
  rors::Vocab vocab(dict);
  rors::TripleStore store(vocab);
  for (const auto& path : paths) {
    rors::ParseResult result = rors::parse_ntriples_file(path, dict, strictness);
    report_diagnostics(result.diagnostics);
    store.insert(result.triples);
  }
  return store;
}

rors::Strategy parse_order(const std::string& text) {
  rors::Strategy strategy;
  std::string token;
  std::stringstream in(text);
  while (std::getline(in, token, ',')) {
    // Trim surrounding whitespace.
    const auto b = token.find_first_not_of(" \t");
    const auto e = token.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    const std::string name = token.substr(b, e - b + 1);
    auto id = rors::rule_id_from_string(name);
    if (!id) throw rors::ConfigError("unknown rule name in order: " + name);
    strategy.order.push_back(*id);
  }
  if (strategy.order.empty()) throw rors::ConfigError("empty rule order");
  return strategy;
}

std::string order_to_string(const rors::Strategy& s) {
  std::string out;
  for (rors::RuleId id : s.order) {
    if (!out.empty()) out += " ";
    out += rors::to_string(id);
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rors::IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw rors::IoError("failed writing " + path);
}

void emit_text(const std::optional<std::string>& path, const std::string& text) {
  if (path) {
    write_text_file(*path, text);
  } else {
    std::cout << text;
  }
}

// Compact rendering for rule patterns: well-known IRIs get prefix names.
std::string short_term(const rors::Term& t) {
  static const std::pair<std::string_view, std::string_view> kPrefixes[] = {
      {"http://www.w3.org/1999/02/22-rdf-syntax-ns#", "rdf:"},
      {"http://www.w3.org/2000/01/rdf-schema#", "rdfs:"},
      {"http://www.w3.org/2002/07/owl#", "owl:"},
  };
  if (t.kind == rors::TermKind::kIri) {
    for (const auto& [ns, prefix] : kPrefixes) {
      if (t.lexical.rfind(ns, 0) == 0) {
        return std::string(prefix) + t.lexical.substr(ns.size());
      }
    }
  }
  return rors::term_to_ntriples(t);
}

std::string pattern_term_to_string(const rors::PatternTerm& pt) {
  if (pt.is_var) return "?" + pt.var;
  return short_term(pt.term);
}

std::string pattern_to_string(const rors::TriplePattern& p) {
  return "(" + pattern_term_to_string(p.s) + " " + pattern_term_to_string(p.p) +
         " " + pattern_term_to_string(p.o) + ")";
}

std::string rule_body_to_string(const rors::Rule& r) {
  std::string out;
  for (std::size_t i = 0; i < r.conditions.size(); ++i) {
    if (i) out += " ";
    out += pattern_to_string(r.conditions[i]);
  }
  out += " -> ";
  for (std::size_t i = 0; i < r.consequences.size(); ++i) {
    if (i) out += " ";
    out += pattern_to_string(r.consequences[i]);
  }
  return out;
}

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double median_of(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n % 2 == 1) return xs[n / 2];
  return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// ---------------------------------------------------------------------------
// materialize

struct MaterializeArgs {
  std::vector<std::string> inputs;
  std::string mode = "paper";
  std::optional<std::string> output;
  std::optional<std::string> report_path;
  bool sorted = false;
  bool lenient = false;
  bool table1_literal = false;
  int workers = 1;
  std::size_t max_iterations = 10000;
  std::string schema_order, spo_order, type_order, sameas_order;
};

int cmd_materialize(const MaterializeArgs& args) {
  rors::Dictionary dict;
  rors::TripleStore store =
      load_inputs(args.inputs, dict, strictness_from_flags(args.lenient));

  rors::RunConfig config;
  config.mode = *rors::execution_mode_from_string(args.mode);
  config.workers = args.workers;
  config.max_outer_iterations = args.max_iterations;
  config.catalog_options.table1_literal = args.table1_literal;
  if (!args.schema_order.empty()) config.overrides.schema = parse_order(args.schema_order);
  if (!args.spo_order.empty()) config.overrides.spo = parse_order(args.spo_order);
  if (!args.type_order.empty()) config.overrides.type = parse_order(args.type_order);
  if (!args.sameas_order.empty()) config.overrides.sameas = parse_order(args.sameas_order);

  rors::ClosureReport report = rors::materialize(store, dict, config);

  if (args.output) {
    rors::write_ntriples_file(*args.output, store.triples(), dict, args.sorted);
  }
  emit_text(args.report_path, rors::report_json(report) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// stats

struct StatsArgs {
  std::vector<std::string> inputs;
  bool lenient = false;
};

int cmd_stats(const StatsArgs& args) {
  rors::Dictionary dict;
  rors::TripleStore store =
      load_inputs(args.inputs, dict, strictness_from_flags(args.lenient));
  if (store.empty()) throw rors::EmptyDatasetError();

  const std::size_t schema = store.class_count(rors::TripleClass::kSchema);
  const std::size_t instance = store.size() - schema;
  std::printf("total triples:    %zu\n", store.size());
  std::printf("schema triples:   %zu\n", schema);
  std::printf("instance triples: %zu\n", instance);
  if (instance == 0) {
    std::printf("no instance triples\n");
    return 0;
  }
  const auto props = store.class_proportions();
  std::printf("  type:   %zu (%.3f%%)\n", store.class_count(rors::TripleClass::kType),
              props.at(rors::TripleClass::kType));
  std::printf("  sameas: %zu (%.3f%%)\n", store.class_count(rors::TripleClass::kSameAs),
              props.at(rors::TripleClass::kSameAs));
  std::printf("  spo:    %zu (%.3f%%)\n", store.class_count(rors::TripleClass::kSPO),
              props.at(rors::TripleClass::kSPO));
  return 0;
}

// ---------------------------------------------------------------------------
// strategies

struct StrategiesArgs {
  std::string cls = "all";
  std::size_t limit = 100;
  std::optional<std::string> dot_path;
};

int cmd_strategies(const StrategiesArgs& args) {
  std::vector<rors::RuleClass> classes;
  if (args.cls == "all") {
    classes = {rors::RuleClass::kSchema, rors::RuleClass::kSPO,
               rors::RuleClass::kType, rors::RuleClass::kSameAs};
  } else {
    auto c = rors::rule_class_from_string(args.cls);
    if (!c) throw rors::ConfigError("unknown rule class: " + args.cls);
    classes = {*c};
  }

  std::string dot;
  for (rors::RuleClass c : classes) {
    const rors::DependencyGraph g = rors::class_graph(c);
    std::printf("class %s: %zu rules, %zu edges, %zu excluded pairs\n",
                rors::to_string(c), g.nodes.size(), g.edges.size(),
                g.exclusions.size());
    std::printf("  canonical order: %s\n",
                order_to_string(rors::optimal_order(c)).c_str());
    const rors::EnumerationResult res = rors::enumerate_strategies(g, args.limit);
    std::printf("  maximal paths: %zu%s\n", res.strategies.size(),
                res.truncated ? " (truncated)" : "");
    for (const auto& s : res.strategies) {
      std::printf("    %s\n", order_to_string(s).c_str());
    }
    if (args.dot_path) {
      dot += rors::export_dot(g, rors::standard_display_groups(c));
    }
  }
  if (args.dot_path) write_text_file(*args.dot_path, dot);
  return 0;
}

// ---------------------------------------------------------------------------
// rules dump

struct RulesDumpArgs {
  bool json = false;
  bool table1_literal = false;
};

int cmd_rules_dump(const RulesDumpArgs& args) {
  rors::CatalogOptions options;
  options.table1_literal = args.table1_literal;
  const auto& rules = rors::catalog(options);

  if (args.json) {
    ordered_json out = ordered_json::array();
    for (const auto& r : rules) {
      ordered_json jr;
      jr["id"] = rors::to_string(r.id);
      jr["class"] = rors::to_string(r.rule_class);
      jr["enabled"] = r.enabled;
      ordered_json conds = ordered_json::array();
      for (const auto& p : r.conditions) conds.push_back(pattern_to_string(p));
      jr["conditions"] = conds;
      ordered_json cons = ordered_json::array();
      for (const auto& p : r.consequences) cons.push_back(pattern_to_string(p));
      jr["consequences"] = cons;
      if (!r.distinct_vars.empty()) {
        ordered_json dv = ordered_json::array();
        for (const auto& [a, b] : r.distinct_vars) dv.push_back(a + "!=" + b);
        jr["distinct_vars"] = dv;
      }
      if (r.reflexive_sameas) jr["reflexive_sameas"] = true;
      out.push_back(jr);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  std::printf("%-5s %-7s %-8s %s\n", "id", "class", "state", "rule");
  for (const auto& r : rules) {
    std::printf("%-5s %-7s %-8s %s\n", rors::to_string(r.id),
                rors::to_string(r.rule_class), r.enabled ? "on" : "off",
                rule_body_to_string(r).c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::uint64_t seed = 42;
  std::size_t size = 10000;
  double sameas_rate = 0.0;
  std::optional<std::string> output;
};

int cmd_generate(const GenerateArgs& args) {
  rors::Dictionary dict;
  rors::GeneratorConfig config;
  config.seed = args.seed;
  config.size = args.size;
  config.sameas_rate = args.sameas_rate;
  const std::vector<rors::Triple> triples = rors::generate_university(dict, config);
  const std::string text = rors::write_ntriples(triples, dict, /*sorted=*/false);
  if (args.output) {
    write_text_file(*args.output, text);
    std::printf("wrote %zu triples to %s\n", triples.size(), args.output->c_str());
  } else {
    std::cout << text;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::vector<std::string> inputs;
  std::uint64_t seed = 42;
  std::size_t size = 10000;
  double sameas_rate = 0.0;
  int repeat = 3;
  int workers = 1;
  bool with_reversed = false;
  bool json = false;
};

int cmd_bench(const BenchArgs& args) {
  if (args.repeat < 1) throw rors::ConfigError("repeat must be >= 1");

  rors::Dictionary dict;
  std::string source;
  rors::Vocab vocab(dict);
  rors::TripleStore store(vocab);
  if (!args.inputs.empty()) {
    store = load_inputs(args.inputs, dict, rors::Strictness::kStrict);
    source = args.inputs.front();
    for (std::size_t i = 1; i < args.inputs.size(); ++i) source += "," + args.inputs[i];
  } else {
    rors::GeneratorConfig config;
    config.seed = args.seed;
    config.size = args.size;
    config.sameas_rate = args.sameas_rate;
    store.insert(rors::generate_university(dict, config));
    source = "generated(seed=" + std::to_string(args.seed) +
             ",size=" + std::to_string(args.size) + ")";
  }

  std::vector<rors::StrategyRun> runs;
  {
    rors::StrategyRun rors_run;
    rors_run.name = "rors";
    rors_run.config.mode = rors::ExecutionMode::kGlobalFixpoint;
    rors_run.config.workers = args.workers;
    runs.push_back(rors_run);

    rors::StrategyRun rr;
    rr.name = "roundrobin";
    rr.config.mode = rors::ExecutionMode::kNaiveOracle;
    rr.config.workers = args.workers;
    runs.push_back(rr);

    if (args.with_reversed) {
      rors::StrategyRun spo_rev = rors_run;
      spo_rev.name = "spo-reversed";
      rors::Strategy s = rors::optimal_order(rors::RuleClass::kSPO);
      std::reverse(s.order.begin(), s.order.end());
      spo_rev.config.overrides.spo = s;
      runs.push_back(spo_rev);

      rors::StrategyRun type_rev = rors_run;
      type_rev.name = "type-reversed";
      rors::Strategy t = rors::optimal_order(rors::RuleClass::kType);
      std::reverse(t.order.begin(), t.order.end());
      type_rev.config.overrides.type = t;
      runs.push_back(type_rev);
    }
  }

  // Every repetition re-runs all strategies and cross-checks their closures.
  std::vector<rors::Comparison> reps;
  for (int r = 0; r < args.repeat; ++r) {
    reps.push_back(rors::compare_strategies(store, dict, runs));
  }

  struct Row {
    std::string name;
    rors::ExecutionMode mode;
    std::size_t iters, apps, derived, output;
    double mean_ms, median_ms, derived_per_s;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const rors::ComparisonRow& first = reps.front().rows[i];
    std::vector<double> times;
    for (const auto& rep : reps) times.push_back(rep.rows[i].millis);
    Row row;
    row.name = first.name;
    row.mode = first.mode;
    row.iters = first.outer_iterations;
    row.apps = first.rule_applications;
    row.derived = first.derived;
    row.output = first.output;
    row.mean_ms = mean_of(times);
    row.median_ms = median_of(times);
    row.derived_per_s = row.mean_ms > 0.0
                            ? static_cast<double>(row.derived) / (row.mean_ms / 1000.0)
                            : 0.0;
    rows.push_back(row);
  }

  if (args.json) {
    ordered_json out;
    out["dataset"] = source;
    out["input_count"] = store.size();
    out["repeat"] = args.repeat;
    out["workers"] = args.workers;
    ordered_json jrows = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json jr;
      jr["name"] = row.name;
      jr["mode"] = rors::to_string(row.mode);
      jr["outer_iterations"] = row.iters;
      jr["rule_applications"] = row.apps;
      jr["derived"] = row.derived;
      jr["output"] = row.output;
      jr["mean_ms"] = row.mean_ms;
      jr["median_ms"] = row.median_ms;
      jr["derived_per_second"] = row.derived_per_s;
      jrows.push_back(jr);
    }
    out["strategies"] = jrows;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  std::printf("dataset: %s (%zu triples), %d repetition%s, %d worker%s\n",
              source.c_str(), store.size(), args.repeat,
              args.repeat == 1 ? "" : "s", args.workers,
              args.workers == 1 ? "" : "s");
  std::printf("%-14s %-8s %6s %6s %10s %10s %10s %10s %12s\n", "strategy", "mode",
              "iters", "apps", "derived", "output", "mean_ms", "median_ms",
              "derived/s");
  for (const auto& row : rows) {
    std::printf("%-14s %-8s %6zu %6zu %10zu %10zu %10.1f %10.1f %12.0f\n",
                row.name.c_str(), rors::to_string(row.mode), row.iters, row.apps,
                row.derived, row.output, row.mean_ms, row.median_ms,
                row.derived_per_s);
  }
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"rors — forward-chaining RDF materialization workbench"};
  app.require_subcommand(1);

  MaterializeArgs mat;
  auto* cmd_mat = app.add_subcommand(
      "materialize", "Compute the deductive closure of N-Triples input");
  cmd_mat->add_option("inputs", mat.inputs, "input N-Triples files")
      ->required()
      ->expected(-1);
  cmd_mat->add_option("--mode", mat.mode, "execution mode (default paper)")
      ->check(CLI::IsMember({"paper", "fixpoint", "oracle"}));
  std::string mat_output, mat_report;
  cmd_mat->add_option("--output", mat_output, "write the closure to this file");
  cmd_mat->add_option("--report", mat_report,
                      "write the JSON run report here instead of stdout");
  cmd_mat->add_flag("--sorted", mat.sorted, "sort output triples byte-wise");
  auto* mat_strict = cmd_mat->add_flag("--strict", "fail on the first malformed line (default)");
  auto* mat_lenient =
      cmd_mat->add_flag("--lenient", mat.lenient, "skip malformed lines with warnings");
  mat_strict->excludes(mat_lenient);
  cmd_mat->add_option("--workers", mat.workers, "partition-parallel worker threads")
      ->check(CLI::PositiveNumber);
  cmd_mat->add_option("--max-iterations", mat.max_iterations,
                      "outer-iteration safety valve");
  cmd_mat->add_flag("--table1-literal", mat.table1_literal,
                    "run the uncorrected published hasValue rule variants");
  cmd_mat->add_option("--schema-order", mat.schema_order,
                      "comma-separated schema-phase rule order");
  cmd_mat->add_option("--spo-order", mat.spo_order,
                      "comma-separated plain-fact-phase rule order");
  cmd_mat->add_option("--type-order", mat.type_order,
                      "comma-separated type-phase rule order");
  cmd_mat->add_option("--sameas-order", mat.sameas_order,
                      "comma-separated sameAs-phase rule order");

  StatsArgs stats;
  auto* cmd_sta = app.add_subcommand("stats", "Report triple-class statistics");
  cmd_sta->add_option("inputs", stats.inputs, "input N-Triples files")
      ->required()
      ->expected(-1);
  auto* sta_strict = cmd_sta->add_flag("--strict", "fail on the first malformed line (default)");
  auto* sta_lenient =
      cmd_sta->add_flag("--lenient", stats.lenient, "skip malformed lines with warnings");
  sta_strict->excludes(sta_lenient);

  StrategiesArgs strat;
  auto* cmd_str = app.add_subcommand(
      "strategies", "Enumerate execution orders from the rule dependency graphs");
  cmd_str->add_option("--class", strat.cls, "rule class (spo|type|sameas|schema|all)")
      ->check(CLI::IsMember({"spo", "type", "sameas", "schema", "all"}));
  cmd_str->add_option("--limit", strat.limit, "maximum paths listed per class");
  std::string strat_dot;
  cmd_str->add_option("--dot", strat_dot, "write Graphviz output to this file");

  RulesDumpArgs rules_args;
  auto* cmd_rules = app.add_subcommand("rules", "Rule catalog tools");
  cmd_rules->require_subcommand(1);
  auto* cmd_dump = cmd_rules->add_subcommand("dump", "Print the rule catalog");
  cmd_dump->add_flag("--json", rules_args.json, "emit JSON instead of a table");
  cmd_dump->add_flag("--table1-literal", rules_args.table1_literal,
                     "show the uncorrected published hasValue rule variants");

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand("generate", "Emit a synthetic university dataset");
  cmd_gen->add_option("--seed", gen.seed, "generator seed (default 42)");
  cmd_gen->add_option("--size", gen.size, "approximate triple count (default 10000)")
      ->check(CLI::PositiveNumber);
  cmd_gen->add_option("--sameas-rate", gen.sameas_rate,
                      "fraction of instance triples that are sameAs aliases");
  std::string gen_output;
  cmd_gen->add_option("--output", gen_output, "output file (default stdout)");

  BenchArgs bench;
  auto* cmd_ben = app.add_subcommand(
      "bench", "Compare execution strategies on a dataset");
  cmd_ben->add_option("inputs", bench.inputs,
                      "input N-Triples files (omit to use the generator)");
  cmd_ben->add_option("--seed", bench.seed, "generator seed when no input is given");
  cmd_ben->add_option("--size", bench.size, "generator size when no input is given")
      ->check(CLI::PositiveNumber);
  cmd_ben->add_option("--sameas-rate", bench.sameas_rate,
                      "generator sameAs rate when no input is given");
  cmd_ben->add_option("--repeat", bench.repeat, "runs per strategy (default 3)");
  cmd_ben->add_option("--workers", bench.workers, "partition-parallel worker threads")
      ->check(CLI::PositiveNumber);
  cmd_ben->add_flag("--with-reversed", bench.with_reversed,
                    "also run reversed per-class orders");
  cmd_ben->add_flag("--json", bench.json, "emit JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(cmd_mat)) {
      if (!mat_output.empty()) mat.output = mat_output;
      if (!mat_report.empty()) mat.report_path = mat_report;
      return cmd_materialize(mat);
    }
    if (app.got_subcommand(cmd_sta)) return cmd_stats(stats);
    if (app.got_subcommand(cmd_str)) {
      if (!strat_dot.empty()) strat.dot_path = strat_dot;
      return cmd_strategies(strat);
    }
    if (app.got_subcommand(cmd_rules)) return cmd_rules_dump(rules_args);
    if (app.got_subcommand(cmd_gen)) {
      if (!gen_output.empty()) gen.output = gen_output;
      return cmd_generate(gen);
    }
    if (app.got_subcommand(cmd_ben)) return cmd_bench(bench);
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const rors::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const rors::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const rors::VerificationError& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return 3;
  } catch (const rors::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
