#ifndef RORS_RULE_HPP
#define RORS_RULE_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rors/term.hpp"
#include "rors/triple.hpp"

namespace rors {

enum class RuleId : int {
  kR1, kR2, kR3, kR4, kR5, kR6,
  kO1, kO2, kO3, kO4, kO5, kO6,
  kO7a, kO7b, kO8, kO9, kO10,
  kO11a, kO11b, kO11c, kO12a, kO12b, kO12c,
  kO13, kO14, kO15, kO16,
};
inline constexpr int kRuleCount = 27;

const char* to_string(RuleId id);
std::optional<RuleId> rule_id_from_string(std::string_view name);

enum class RuleClass : int { kSchema = 0, kSPO = 1, kType = 2, kSameAs = 3 };
const char* to_string(RuleClass c);
std::optional<RuleClass> rule_class_from_string(std::string_view name);

// A pattern position: either a named variable or a constant term.
struct PatternTerm {
  bool is_var = false;
  std::string var;
  Term term;

  static PatternTerm make_var(std::string name) {
    PatternTerm t;
    t.is_var = true;
    t.var = std::move(name);
    return t;
  }
  static PatternTerm constant(Term term) {
    PatternTerm t;
    t.term = std::move(term);
    return t;
  }
};

struct TriplePattern {
  PatternTerm s, p, o;
};

// Which store partition a pattern reads or writes. A variable predicate
// denotes a plain instance fact; typed and sameAs facts are only reached
// through patterns naming rdf:type / owl:sameAs explicitly.
TripleClass pattern_scope(const TriplePattern& pattern);

struct Rule {
  RuleId id;
  RuleClass rule_class;
  bool enabled = true;
  std::vector<TriplePattern> conditions;
  std::vector<TriplePattern> consequences;
  // Variable pairs that must bind to distinct terms (functional-property
  // rules would otherwise emit x sameAs x for every value).
  std::vector<std::pair<std::string, std::string>> distinct_vars;
  // owl:sameAs conditions additionally match a virtual reflexive pair (t, t)
  // for every term that occurs in some sameAs triple. The virtual pairs are
  // never emitted to the store.
  bool reflexive_sameas = false;
};

struct CatalogOptions {
  // Swaps the corrected hasValue rules for the uncorrected published variants
  // (O13 matching u p v against the restriction node, O14 emitting u p v).
  bool table1_literal = false;

  bool operator==(const CatalogOptions& o) const { return table1_literal == o.table1_literal; }
};

// The full 27-rule catalog. Ontology-merging rules O8/O9 are present but
// disabled by default. Validated on first construction: every consequence
// variable occurs in some condition.
const std::vector<Rule>& catalog(const CatalogOptions& options = {});
const Rule& rule(RuleId id, const CatalogOptions& options = {});

std::vector<RuleId> rules_in_class(RuleClass c, bool enabled_only);
std::map<RuleClass, int> rule_class_counts();

}  // namespace rors

#endif
