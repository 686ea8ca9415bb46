// Python bindings: text-in/text-out wrappers over the core operations.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rors/dependency.hpp"
#include "rors/errors.hpp"
#include "rors/executor.hpp"
#include "rors/generator.hpp"
#include "rors/ntriples.hpp"
#include "rors/rule.hpp"
#include "rors/term.hpp"
#include "rors/triple.hpp"
#include "rors/vocab.hpp"

namespace py = pybind11;

namespace {

rors::ExecutionMode parse_mode(const std::string& mode) {
  auto m = rors::execution_mode_from_string(mode);
  if (!m) throw rors::ConfigError("unknown execution mode: " + mode);
  return *m;
}

// Materializes the closure of the N-Triples text; returns (closure text,
// JSON run report).  The closure text is sorted for reproducibility.
std::pair<std::string, std::string> materialize_text(const std::string& text,
                                                     const std::string& mode,
                                                     int workers) {
  rors::Dictionary dict;
  rors::Vocab vocab(dict);
  rors::TripleStore store(vocab);
  rors::ParseResult parsed =
      rors::parse_ntriples(text, dict, rors::Strictness::kStrict);
  store.insert(parsed.triples);

  rors::RunConfig config;
  config.mode = parse_mode(mode);
  config.workers = workers;
  rors::ClosureReport report = rors::materialize(store, dict, config);
  return {rors::write_ntriples(store.triples(), dict, /*sorted=*/true),
          rors::report_json(report)};
}

std::string generate_text(std::uint64_t seed, std::size_t size, double sameas_rate) {
  rors::Dictionary dict;
  rors::GeneratorConfig config;
  config.seed = seed;
  config.size = size;
  config.sameas_rate = sameas_rate;
  return rors::write_ntriples(rors::generate_university(dict, config), dict,
                              /*sorted=*/false);
}

std::map<std::string, double> stats_text(const std::string& text) {
  rors::Dictionary dict;
  rors::Vocab vocab(dict);
  rors::TripleStore store(vocab);
  store.insert(rors::parse_ntriples(text, dict, rors::Strictness::kStrict).triples);
  std::map<std::string, double> out;
  out["total"] = static_cast<double>(store.size());
  out["schema"] = static_cast<double>(store.class_count(rors::TripleClass::kSchema));
  const auto props = store.class_proportions();
  out["type_pct"] = props.at(rors::TripleClass::kType);
  out["sameas_pct"] = props.at(rors::TripleClass::kSameAs);
  out["spo_pct"] = props.at(rors::TripleClass::kSPO);
  return out;
}

std::vector<std::vector<std::string>> strategies_for(const std::string& cls,
                                                     std::size_t limit) {
  auto c = rors::rule_class_from_string(cls);
  if (!c) throw rors::ConfigError("unknown rule class: " + cls);
  const rors::EnumerationResult res =
      rors::enumerate_strategies(rors::class_graph(*c), limit);
  std::vector<std::vector<std::string>> out;
  for (const auto& s : res.strategies) {
    std::vector<std::string> names;
    for (rors::RuleId id : s.order) names.emplace_back(rors::to_string(id));
    out.push_back(std::move(names));
  }
  return out;
}

std::vector<std::string> rule_names() {
  std::vector<std::string> out;
  for (const auto& r : rors::catalog()) out.emplace_back(rors::to_string(r.id));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Forward-chaining RDF materialization workbench";
  m.def("materialize", &materialize_text, py::arg("text"),
        py::arg("mode") = "paper", py::arg("workers") = 1,
        "Materialize the closure of N-Triples text; returns (closure_text, "
        "report_json).");
  m.def("generate", &generate_text, py::arg("seed") = 42,
        py::arg("size") = 10000, py::arg("sameas_rate") = 0.0,
        "Emit a deterministic synthetic university dataset as N-Triples text.");
  m.def("stats", &stats_text, py::arg("text"),
        "Triple-class statistics for N-Triples text.");
  m.def("strategies", &strategies_for, py::arg("rule_class"),
        py::arg("limit") = 100,
        "Maximal execution orders for one rule class ('spo', 'type', "
        "'sameas', 'schema').");
  m.def("rule_names", &rule_names, "Names of the 27 catalog rules.");
}
