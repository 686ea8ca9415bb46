#include "rors/rule.hpp"

#include <algorithm>
#include <unordered_set>

#include "rors/errors.hpp"
#include "rors/vocab.hpp"

namespace rors {

const char* to_string(RuleId id) {
  switch (id) {
    case RuleId::kR1: return "R1";
    case RuleId::kR2: return "R2";
    case RuleId::kR3: return "R3";
    case RuleId::kR4: return "R4";
    case RuleId::kR5: return "R5";
    case RuleId::kR6: return "R6";
    case RuleId::kO1: return "O1";
    case RuleId::kO2: return "O2";
    case RuleId::kO3: return "O3";
    case RuleId::kO4: return "O4";
    case RuleId::kO5: return "O5";
    case RuleId::kO6: return "O6";
    case RuleId::kO7a: return "O7a";
    case RuleId::kO7b: return "O7b";
    case RuleId::kO8: return "O8";
    case RuleId::kO9: return "O9";
    case RuleId::kO10: return "O10";
    case RuleId::kO11a: return "O11a";
    case RuleId::kO11b: return "O11b";
    case RuleId::kO11c: return "O11c";
    case RuleId::kO12a: return "O12a";
    case RuleId::kO12b: return "O12b";
    case RuleId::kO12c: return "O12c";
    case RuleId::kO13: return "O13";
    case RuleId::kO14: return "O14";
    case RuleId::kO15: return "O15";
    case RuleId::kO16: return "O16";
  }
  return "?";
}

std::optional<RuleId> rule_id_from_string(std::string_view name) {
  for (int i = 0; i < kRuleCount; ++i) {
    RuleId id = static_cast<RuleId>(i);
    if (name == to_string(id)) return id;
  }
  return std::nullopt;
}

const char* to_string(RuleClass c) {
  switch (c) {
    case RuleClass::kSchema: return "schema";
    case RuleClass::kSPO: return "spo";
    case RuleClass::kType: return "type";
    case RuleClass::kSameAs: return "sameas";
  }
  return "?";
}

std::optional<RuleClass> rule_class_from_string(std::string_view name) {
  for (RuleClass c : {RuleClass::kSchema, RuleClass::kSPO, RuleClass::kType, RuleClass::kSameAs})
    if (name == to_string(c)) return c;
  return std::nullopt;
}

TripleClass pattern_scope(const TriplePattern& pattern) {
  if (pattern.p.is_var) return TripleClass::kSPO;
  const std::string& p = pattern.p.term.lexical;
  if (iri::is_schema_predicate(p)) return TripleClass::kSchema;
  if (p == iri::kRdfType) {
    if (!pattern.o.is_var && iri::is_schema_type_object(pattern.o.term.lexical))
      return TripleClass::kSchema;
    return TripleClass::kType;
  }
  if (p == iri::kOwlSameAs) return TripleClass::kSameAs;
  return TripleClass::kSPO;
}

namespace {

PatternTerm V(const char* name) { return PatternTerm::make_var(name); }
PatternTerm C(std::string_view iri_text) {
  return PatternTerm::constant(Term::iri(std::string(iri_text)));
}
TriplePattern tp(PatternTerm s, PatternTerm p, PatternTerm o) {
  return {std::move(s), std::move(p), std::move(o)};
}

Rule make(RuleId id, RuleClass cls, std::vector<TriplePattern> conds,
          std::vector<TriplePattern> cons, bool enabled = true) {
  Rule r;
  r.id = id;
  r.rule_class = cls;
  r.enabled = enabled;
  r.conditions = std::move(conds);
  r.consequences = std::move(cons);
  return r;
}

void validate(const std::vector<Rule>& rules) {
  if (rules.size() != kRuleCount) throw InternalError("rule catalog has wrong size");
  for (const Rule& r : rules) {
    std::unordered_set<std::string> cond_vars;
    for (const TriplePattern& c : r.conditions)
      for (const PatternTerm* t : {&c.s, &c.p, &c.o})
        if (t->is_var) cond_vars.insert(t->var);
    for (const TriplePattern& c : r.consequences)
      for (const PatternTerm* t : {&c.s, &c.p, &c.o})
        if (t->is_var && !cond_vars.count(t->var))
          throw InternalError(std::string("rule ") + to_string(r.id) +
                              ": consequence variable " + t->var + " not bound by any condition");
    if (r.consequences.empty())
      throw InternalError(std::string("rule ") + to_string(r.id) + ": no consequence");
  }
}

std::vector<Rule> build_catalog(const CatalogOptions& options) {
  using namespace iri;
  std::vector<Rule> rules;
  rules.reserve(kRuleCount);

  auto type = [] { return C(kRdfType); };

  // Schema rules.
  rules.push_back(make(RuleId::kR1, RuleClass::kSchema,
                       {tp(V("c"), C(kRdfsSubClassOf), V("c1")), tp(V("c1"), C(kRdfsSubClassOf), V("c2"))},
                       {tp(V("c"), C(kRdfsSubClassOf), V("c2"))}));
  rules.push_back(make(RuleId::kR2, RuleClass::kSchema,
                       {tp(V("p"), C(kRdfsSubPropertyOf), V("p1")),
                        tp(V("p1"), C(kRdfsSubPropertyOf), V("p2"))},
                       {tp(V("p"), C(kRdfsSubPropertyOf), V("p2"))}));

  // Instance rules over plain facts.
  rules.push_back(make(RuleId::kR3, RuleClass::kSPO,
                       {tp(V("s"), V("p"), V("o")), tp(V("p"), C(kRdfsSubPropertyOf), V("p1"))},
                       {tp(V("s"), V("p1"), V("o"))}));
  rules.push_back(make(RuleId::kR4, RuleClass::kType,
                       {tp(V("s"), C(kRdfsDomain), V("x")), tp(V("u"), V("s"), V("y"))},
                       {tp(V("u"), type(), V("x"))}));
  rules.push_back(make(RuleId::kR5, RuleClass::kType,
                       {tp(V("p"), C(kRdfsRange), V("o")), tp(V("s"), V("p"), V("v"))},
                       {tp(V("v"), type(), V("o"))}));
  rules.push_back(make(RuleId::kR6, RuleClass::kType,
                       {tp(V("c"), C(kRdfsSubClassOf), V("c1")), tp(V("v"), type(), V("c"))},
                       {tp(V("v"), type(), V("c1"))}));

  {
    Rule o1 = make(RuleId::kO1, RuleClass::kSameAs,
                   {tp(V("p"), type(), C(kOwlFunctionalProperty)), tp(V("u"), V("p"), V("v")),
                    tp(V("u"), V("p"), V("w"))},
                   {tp(V("v"), C(kOwlSameAs), V("w"))});
    o1.distinct_vars = {{"v", "w"}};
    rules.push_back(std::move(o1));
  }
  {
    Rule o2 = make(RuleId::kO2, RuleClass::kSameAs,
                   {tp(V("p"), type(), C(kOwlInverseFunctionalProperty)), tp(V("v"), V("p"), V("u")),
                    tp(V("w"), V("p"), V("u"))},
                   {tp(V("v"), C(kOwlSameAs), V("w"))});
    o2.distinct_vars = {{"v", "w"}};
    rules.push_back(std::move(o2));
  }
  rules.push_back(make(RuleId::kO3, RuleClass::kSPO,
                       {tp(V("p"), type(), C(kOwlSymmetricProperty)), tp(V("v"), V("p"), V("u"))},
                       {tp(V("u"), V("p"), V("v"))}));
  rules.push_back(make(RuleId::kO4, RuleClass::kSPO,
                       {tp(V("p"), type(), C(kOwlTransitiveProperty)), tp(V("u"), V("p"), V("w")),
                        tp(V("w"), V("p"), V("v"))},
                       {tp(V("u"), V("p"), V("v"))}));
  rules.push_back(make(RuleId::kO5, RuleClass::kSameAs,
                       {tp(V("v"), C(kOwlSameAs), V("w"))},
                       {tp(V("w"), C(kOwlSameAs), V("v"))}));
  rules.push_back(make(RuleId::kO6, RuleClass::kSameAs,
                       {tp(V("v"), C(kOwlSameAs), V("w")), tp(V("w"), C(kOwlSameAs), V("u"))},
                       {tp(V("v"), C(kOwlSameAs), V("u"))}));
  rules.push_back(make(RuleId::kO7a, RuleClass::kSPO,
                       {tp(V("p"), C(kOwlInverseOf), V("q")), tp(V("v"), V("p"), V("w"))},
                       {tp(V("w"), V("q"), V("v"))}));
  rules.push_back(make(RuleId::kO7b, RuleClass::kSPO,
                       {tp(V("p"), C(kOwlInverseOf), V("q")), tp(V("v"), V("q"), V("w"))},
                       {tp(V("w"), V("p"), V("v"))}));

  // Ontology-merging rules; disabled unless two vocabularies are being fused.
  rules.push_back(make(RuleId::kO8, RuleClass::kSameAs,
                       {tp(V("v"), type(), C(kOwlClass)), tp(V("v"), C(kOwlSameAs), V("w"))},
                       {tp(V("v"), C(kRdfsSubClassOf), V("w"))}, false));
  rules.push_back(make(RuleId::kO9, RuleClass::kSameAs,
                       {tp(V("p"), type(), C(kOwlProperty)), tp(V("p"), C(kOwlSameAs), V("q"))},
                       {tp(V("p"), C(kRdfsSubPropertyOf), V("q"))}, false));

  {
    Rule o10 = make(RuleId::kO10, RuleClass::kSameAs,
                    {tp(V("u"), V("p"), V("v")), tp(V("u"), C(kOwlSameAs), V("x")),
                     tp(V("v"), C(kOwlSameAs), V("y"))},
                    {tp(V("x"), V("p"), V("y"))});
    o10.reflexive_sameas = true;
    rules.push_back(std::move(o10));
  }

  rules.push_back(make(RuleId::kO11a, RuleClass::kSchema,
                       {tp(V("v"), C(kOwlEquivalentClass), V("w"))},
                       {tp(V("v"), C(kRdfsSubClassOf), V("w"))}));
  rules.push_back(make(RuleId::kO11b, RuleClass::kSchema,
                       {tp(V("v"), C(kOwlEquivalentClass), V("w"))},
                       {tp(V("w"), C(kRdfsSubClassOf), V("v"))}));
  rules.push_back(make(RuleId::kO11c, RuleClass::kSchema,
                       {tp(V("v"), C(kRdfsSubClassOf), V("w")), tp(V("w"), C(kRdfsSubClassOf), V("v"))},
                       {tp(V("v"), C(kOwlEquivalentClass), V("w"))}));
  rules.push_back(make(RuleId::kO12a, RuleClass::kSchema,
                       {tp(V("v"), C(kOwlEquivalentProperty), V("w"))},
                       {tp(V("v"), C(kRdfsSubPropertyOf), V("w"))}));
  rules.push_back(make(RuleId::kO12b, RuleClass::kSchema,
                       {tp(V("v"), C(kOwlEquivalentProperty), V("w"))},
                       {tp(V("w"), C(kRdfsSubPropertyOf), V("v"))}));
  rules.push_back(make(RuleId::kO12c, RuleClass::kSchema,
                       {tp(V("v"), C(kRdfsSubPropertyOf), V("w")), tp(V("w"), C(kRdfsSubPropertyOf), V("v"))},
                       {tp(V("v"), C(kOwlEquivalentProperty), V("w"))}));

  // hasValue restrictions. The corrected forms relate the member to the
  // restriction's value w; the published variants used v in both places.
  if (options.table1_literal) {
    rules.push_back(make(RuleId::kO13, RuleClass::kType,
                         {tp(V("v"), C(kOwlHasValue), V("w")), tp(V("v"), C(kOwlOnProperty), V("p")),
                          tp(V("u"), V("p"), V("v"))},
                         {tp(V("u"), type(), V("v"))}));
    rules.push_back(make(RuleId::kO14, RuleClass::kType,
                         {tp(V("v"), C(kOwlHasValue), V("w")), tp(V("v"), C(kOwlOnProperty), V("p")),
                          tp(V("u"), type(), V("v"))},
                         {tp(V("u"), V("p"), V("v"))}));
  } else {
    rules.push_back(make(RuleId::kO13, RuleClass::kType,
                         {tp(V("v"), C(kOwlHasValue), V("w")), tp(V("v"), C(kOwlOnProperty), V("p")),
                          tp(V("u"), V("p"), V("w"))},
                         {tp(V("u"), type(), V("v"))}));
    rules.push_back(make(RuleId::kO14, RuleClass::kType,
                         {tp(V("v"), C(kOwlHasValue), V("w")), tp(V("v"), C(kOwlOnProperty), V("p")),
                          tp(V("u"), type(), V("v"))},
                         {tp(V("u"), V("p"), V("w"))}));
  }

  rules.push_back(make(RuleId::kO15, RuleClass::kType,
                       {tp(V("v"), C(kOwlSomeValuesFrom), V("w")), tp(V("v"), C(kOwlOnProperty), V("p")),
                        tp(V("u"), V("p"), V("x")), tp(V("x"), type(), V("w"))},
                       {tp(V("u"), type(), V("v"))}));
  rules.push_back(make(RuleId::kO16, RuleClass::kType,
                       {tp(V("v"), C(kOwlAllValuesFrom), V("w")), tp(V("v"), C(kOwlOnProperty), V("p")),
                        tp(V("u"), type(), V("v")), tp(V("u"), V("p"), V("x"))},
                       {tp(V("x"), type(), V("w"))}));

  validate(rules);
  return rules;
}

}  // namespace

const std::vector<Rule>& catalog(const CatalogOptions& options) {
  static const std::vector<Rule> corrected = build_catalog(CatalogOptions{false});
  static const std::vector<Rule> literal = build_catalog(CatalogOptions{true});
  return options.table1_literal ? literal : corrected;
}

const Rule& rule(RuleId id, const CatalogOptions& options) {
  for (const Rule& r : catalog(options))
    if (r.id == id) return r;
  throw InternalError("rule not in catalog");
}

std::vector<RuleId> rules_in_class(RuleClass c, bool enabled_only) {
  std::vector<RuleId> out;
  for (const Rule& r : catalog())
    if (r.rule_class == c && (!enabled_only || r.enabled)) out.push_back(r.id);
  return out;
}

std::map<RuleClass, int> rule_class_counts() {
  std::map<RuleClass, int> out;
  for (const Rule& r : catalog()) out[r.rule_class]++;
  return out;
}

}  // namespace rors
