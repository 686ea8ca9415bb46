#ifndef RORS_ENGINE_HPP
#define RORS_ENGINE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rors/rule.hpp"
#include "rors/term.hpp"
#include "rors/triple.hpp"

namespace rors {

// Snapshot of term kinds used to filter derived triples: a triple is only
// emitted when its subject is an IRI or blank node and its predicate is an
// IRI.  Literals can end up in subject/predicate position of a candidate
// consequence (e.g. sameAs-rewriting a literal object into subject position),
// and such malformed triples are silently dropped rather than stored.
class TermValidity {
 public:
  explicit TermValidity(const Dictionary& dict);

  bool subject_ok(TermId id) const { return kinds_[id] != kLiteralKind; }
  bool predicate_ok(TermId id) const { return kinds_[id] == kIriKind; }
  bool triple_ok(const Triple& t) const {
    return subject_ok(t.s) && predicate_ok(t.p);
  }

 private:
  static constexpr std::uint8_t kIriKind = 0;
  static constexpr std::uint8_t kBlankKind = 1;
  static constexpr std::uint8_t kLiteralKind = 2;
  std::vector<std::uint8_t> kinds_;
};

// A rule pattern lowered onto dictionary ids: each position is either a
// variable slot (index into the binding array) or an interned constant.
struct CompiledPattern {
  int s_var = -1;
  int p_var = -1;
  int o_var = -1;
  TermId s = 0;
  TermId p = 0;
  TermId o = 0;
  TripleClass scope = TripleClass::kSPO;
};

struct CompiledRule {
  RuleId id = RuleId::kR1;
  RuleClass rule_class = RuleClass::kSchema;
  bool enabled = true;
  bool reflexive_sameas = false;
  // True when the catalog was built with the literal hasValue reading
  // (affects the O13/O14 evaluation kernels).
  bool literal_has_value = false;
  int var_count = 0;
  std::vector<CompiledPattern> conditions;
  std::vector<CompiledPattern> consequences;
  // Pairs of binding slots that must bind distinct terms.
  std::vector<std::pair<int, int>> distinct_pairs;
  std::vector<std::string> var_names;
};

// Lowers a catalog rule onto dictionary ids.  Interns every constant, so the
// dictionary may grow; call before taking a TermValidity snapshot.
CompiledRule compile_rule(const Rule& rule, Dictionary& dict,
                          bool literal_has_value = false);

// Compiles the whole catalog in catalog order (index by static_cast<int> of
// the RuleId).
std::vector<CompiledRule> compile_catalog(Dictionary& dict,
                                          const CatalogOptions& options = {});

struct ClosureStats {
  std::size_t iterations = 0;
};

// Transitive closure of a binary relation by iterated delta composition:
// each round composes the previous round's new pairs with themselves and
// then extends the new pairs with the accumulated relation, doubling the
// covered path length per round.  Returns the closed relation (input
// included) sorted ascending.  Terminates on cycles; reflexive pairs appear
// only when derivable (or present in the input).
std::vector<std::pair<TermId, TermId>> transitive_closure(
    std::span<const std::pair<TermId, TermId>> pairs,
    ClosureStats* stats = nullptr);

// Read-only schema indexes shared by every worker during rule evaluation.
// Built from Schema-class triples only; contents equal a filtered scan of the
// source stores at build time.
struct BroadcastMaps {
  using Relation = std::unordered_map<TermId, std::vector<TermId>>;

  Relation sub_class_of;
  Relation sub_property_of;
  Relation domain;
  Relation range;
  Relation equivalent_class;
  Relation equivalent_property;
  Relation inverse_fwd;  // p -> q for (p inverseOf q)
  Relation inverse_rev;  // q -> p for (p inverseOf q)
  Relation on_property;
  Relation has_value;
  Relation some_values_from;
  Relation all_values_from;

  std::unordered_set<TermId> functional;
  std::unordered_set<TermId> inverse_functional;
  std::unordered_set<TermId> symmetric;
  std::unordered_set<TermId> transitive;
  std::unordered_set<TermId> class_decls;     // (v rdf:type owl:Class)
  std::unordered_set<TermId> property_decls;  // (v rdf:type owl:Property)

  // onProperty joined with each filler relation, keyed by restriction node
  // and by property, so restriction rules resolve in one probe.
  struct Restriction {
    TermId node = 0;
    TermId property = 0;
    TermId filler = 0;
  };
  std::unordered_map<TermId, std::vector<Restriction>> has_value_by_node;
  std::unordered_map<TermId, std::vector<Restriction>> has_value_by_prop;
  std::unordered_map<TermId, std::vector<Restriction>> some_values_by_prop;
  std::unordered_map<TermId, std::vector<Restriction>> all_values_by_node;
};

// Builds the broadcast indexes from the Schema partitions of `store` and
// (when given) `extra`.  The two stores are expected to be disjoint.
BroadcastMaps build_broadcasts(const TripleStore& store,
                               const TripleStore* extra = nullptr);

// Evaluates one rule against store ∪ extra using the broadcast kernels:
// schema-side conditions probe `maps`, instance-side conditions scan the
// relevant partition in `workers` parallel chunks.  Returns the instantiated
// consequences minus triples already in store ∪ extra, sorted ascending.
// `maps` must have been built over exactly store ∪ extra.
std::vector<Triple> apply_rule_broadcast(const TripleStore& store,
                                         const TripleStore* extra,
                                         const CompiledRule& rule,
                                         const BroadcastMaps& maps,
                                         const TermValidity& validity,
                                         int workers = 1);

// Generic nested-index backtracking join over store ∪ extra in the rule's
// condition order.  Semantically identical to apply_rule_broadcast; used as
// its cross-check and by the round-robin oracle.
std::vector<Triple> apply_rule_nested(const TripleStore& store,
                                      const TripleStore* extra,
                                      const CompiledRule& rule,
                                      const TermValidity& validity);

// Semi-naive evaluation: returns the consequences of every binding that
// matches at least one condition in `delta` (the remaining conditions match
// store ∪ delta), minus triples already in `store`.  Implemented by true
// per-condition source splitting, so store-only bindings are never
// re-enumerated.  `delta` must be disjoint from `store`.
std::vector<Triple> apply_rule_delta(const TripleStore& store,
                                     const TripleStore& delta,
                                     const CompiledRule& rule,
                                     const TermValidity& validity);

// Public one-shot entry point: broadcast evaluation when `delta` is null,
// semi-naive evaluation otherwise.  Builds the broadcast indexes and the
// validity snapshot internally; `dict` must be the dictionary the store's
// terms are interned in.
std::vector<Triple> apply_rule(const TripleStore& store,
                               const Dictionary& dict,
                               const CompiledRule& rule,
                               const TripleStore* delta = nullptr,
                               int workers = 1);

// For every property declared owl:TransitiveProperty in store ∪ extra, runs
// the pair-closure kernel over that property's SPO triples and returns the
// union of fresh triples (sorted).
std::vector<Triple> evaluate_transitive_properties(
    const TripleStore& store, const TripleStore* extra = nullptr);

// Pair-closure kernel over a single predicate: collects (s, o) pairs of
// `cls`-class triples with predicate `pred` from store ∪ extra, closes them
// transitively, and returns the composed pairs not already present, as
// triples.  Used for subClassOf (R1), subPropertyOf (R2), sameAs
// transitivity (O6) and per-property O4 closure.
std::vector<Triple> close_predicate_pairs(const TripleStore& store,
                                          const TripleStore* extra,
                                          TermId pred, TripleClass cls,
                                          ClosureStats* stats = nullptr);

}  // namespace rors

#endif  // RORS_ENGINE_HPP
