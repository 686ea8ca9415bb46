#include "rors/engine.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <thread>

#include "rors/errors.hpp"
#include "rors/vocab.hpp"

namespace rors {
namespace {

constexpr std::uint64_t pack_pair(TermId a, TermId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}
constexpr TermId pair_src(std::uint64_t p) {
  return static_cast<TermId>(p >> 32);
}
constexpr TermId pair_dst(std::uint64_t p) {
  return static_cast<TermId>(p & 0xffffffffu);
}

using PairSet = std::unordered_set<std::uint64_t>;
using SrcIndex = std::unordered_map<TermId, std::vector<TermId>>;

SrcIndex index_by_source(const PairSet& pairs) {
  SrcIndex idx;
  idx.reserve(pairs.size());
  for (std::uint64_t p : pairs) idx[pair_src(p)].push_back(pair_dst(p));
  return idx;
}

// Read-only union view over one or two disjoint stores.
class View {
 public:
  View(const TripleStore& base, const TripleStore* extra)
      : base_(base), extra_(extra) {}

  const Vocab& vocab() const { return base_.vocab(); }

  bool contains(const Triple& t) const {
    if (base_.contains(t)) return true;
    return extra_ != nullptr && extra_->contains(t);
  }

  std::size_t partition_size(TripleClass c) const {
    std::size_t n = base_.partition(c).size();
    if (extra_ != nullptr) n += extra_->partition(c).size();
    return n;
  }

  Triple partition_at(TripleClass c, std::size_t i) const {
    const auto& first = base_.partition(c);
    if (i < first.size()) return base_.triple(first[i]);
    return extra_->triple(extra_->partition(c)[i - first.size()]);
  }

  template <class Fn>
  void for_partition(TripleClass c, Fn&& fn) const {
    const std::size_t n = partition_size(c);
    for (std::size_t i = 0; i < n; ++i) fn(partition_at(c, i));
  }

  template <class Fn>
  void for_objects(TermId p, TermId s, Fn&& fn) const {
    if (const auto* v = base_.objects(p, s))
      for (TermId o : *v) fn(o);
    if (extra_ != nullptr)
      if (const auto* v = extra_->objects(p, s))
        for (TermId o : *v) fn(o);
  }

  template <class Fn>
  void for_subjects(TermId p, TermId o, Fn&& fn) const {
    if (const auto* v = base_.subjects(p, o))
      for (TermId s : *v) fn(s);
    if (extra_ != nullptr)
      if (const auto* v = extra_->subjects(p, o))
        for (TermId s : *v) fn(s);
  }

  template <class Fn>
  void for_postings(TermId p, Fn&& fn) const {
    if (const auto* v = base_.postings(p))
      for (std::uint32_t idx : *v) fn(base_.triple(idx));
    if (extra_ != nullptr)
      if (const auto* v = extra_->postings(p))
        for (std::uint32_t idx : *v) fn(extra_->triple(idx));
  }

 private:
  const TripleStore& base_;
  const TripleStore* extra_;
};

std::vector<Triple> sorted_triples(
    std::unordered_set<Triple, TripleHash>& set) {
  std::vector<Triple> out(set.begin(), set.end());
  std::sort(out.begin(), out.end());
  return out;
}

void scan_schema_partition(BroadcastMaps& maps, const TripleStore& store,
                           const Vocab& v) {
  for (std::uint32_t idx : store.partition(TripleClass::kSchema)) {
    const Triple& t = store.triple(idx);
    if (t.p == v.sub_class_of) {
      maps.sub_class_of[t.s].push_back(t.o);
    } else if (t.p == v.sub_property_of) {
      maps.sub_property_of[t.s].push_back(t.o);
    } else if (t.p == v.domain) {
      maps.domain[t.s].push_back(t.o);
    } else if (t.p == v.range) {
      maps.range[t.s].push_back(t.o);
    } else if (t.p == v.equivalent_class) {
      maps.equivalent_class[t.s].push_back(t.o);
    } else if (t.p == v.equivalent_property) {
      maps.equivalent_property[t.s].push_back(t.o);
    } else if (t.p == v.inverse_of) {
      maps.inverse_fwd[t.s].push_back(t.o);
      maps.inverse_rev[t.o].push_back(t.s);
    } else if (t.p == v.on_property) {
      maps.on_property[t.s].push_back(t.o);
    } else if (t.p == v.has_value) {
      maps.has_value[t.s].push_back(t.o);
    } else if (t.p == v.some_values_from) {
      maps.some_values_from[t.s].push_back(t.o);
    } else if (t.p == v.all_values_from) {
      maps.all_values_from[t.s].push_back(t.o);
    } else if (t.p == v.type) {
      if (t.o == v.functional_property) {
        maps.functional.insert(t.s);
      } else if (t.o == v.inverse_functional_property) {
        maps.inverse_functional.insert(t.s);
      } else if (t.o == v.symmetric_property) {
        maps.symmetric.insert(t.s);
      } else if (t.o == v.transitive_property) {
        maps.transitive.insert(t.s);
      } else if (t.o == v.owl_class) {
        maps.class_decls.insert(t.s);
      } else if (t.o == v.owl_property) {
        maps.property_decls.insert(t.s);
      }
    }
  }
}

// Endpoint set and forward successor map of the sameAs relation in a view,
// used by O10 and the virtual reflexive extension.
struct SameAsIndex {
  SrcIndex succ;
  std::unordered_set<TermId> terms;

  explicit SameAsIndex(const View& view) {
    const Vocab& v = view.vocab();
    view.for_partition(TripleClass::kSameAs, [&](const Triple& t) {
      if (t.p != v.same_as) return;  // partition is sameAs-only by definition
      succ[t.s].push_back(t.o);
      terms.insert(t.s);
      terms.insert(t.o);
    });
  }

  // Calls fn for every x with (u sameAs x), including the virtual x = u.
  template <class Fn>
  void for_successors(TermId u, Fn&& fn) const {
    auto it = succ.find(u);
    if (it != succ.end())
      for (TermId x : it->second) fn(x);
    if (terms.count(u) != 0) fn(u);
  }

  bool empty() const { return terms.empty(); }
};

}  // namespace

TermValidity::TermValidity(const Dictionary& dict) {
  kinds_.resize(dict.size());
  for (TermId id = 0; id < dict.size(); ++id) {
    switch (dict.decode(id).kind) {
      case TermKind::kIri: kinds_[id] = kIriKind; break;
      case TermKind::kBlank: kinds_[id] = kBlankKind; break;
      case TermKind::kLiteral: kinds_[id] = kLiteralKind; break;
    }
  }
}

CompiledRule compile_rule(const Rule& rule, Dictionary& dict,
                          bool literal_has_value) {
  CompiledRule out;
  out.id = rule.id;
  out.rule_class = rule.rule_class;
  out.enabled = rule.enabled;
  out.reflexive_sameas = rule.reflexive_sameas;
  out.literal_has_value = literal_has_value;

  std::unordered_map<std::string, int> slots;
  auto slot_of = [&](const std::string& name) {
    auto it = slots.find(name);
    if (it != slots.end()) return it->second;
    int s = static_cast<int>(out.var_names.size());
    slots.emplace(name, s);
    out.var_names.push_back(name);
    return s;
  };
  auto lower = [&](const TriplePattern& p) {
    CompiledPattern cp;
    cp.scope = pattern_scope(p);
    if (p.s.is_var) cp.s_var = slot_of(p.s.var);
    else cp.s = dict.intern(p.s.term);
    if (p.p.is_var) cp.p_var = slot_of(p.p.var);
    else cp.p = dict.intern(p.p.term);
    if (p.o.is_var) cp.o_var = slot_of(p.o.var);
    else cp.o = dict.intern(p.o.term);
    return cp;
  };
  for (const auto& c : rule.conditions) out.conditions.push_back(lower(c));
  for (const auto& c : rule.consequences) out.consequences.push_back(lower(c));
  out.var_count = static_cast<int>(out.var_names.size());
  for (const auto& [a, b] : rule.distinct_vars) {
    auto ia = slots.find(a);
    auto ib = slots.find(b);
    if (ia == slots.end() || ib == slots.end())
      throw InternalError("distinct-vars name not bound in rule " +
                          std::string(to_string(rule.id)));
    out.distinct_pairs.emplace_back(ia->second, ib->second);
  }
  return out;
}

std::vector<CompiledRule> compile_catalog(Dictionary& dict,
                                          const CatalogOptions& options) {
  std::vector<CompiledRule> out;
  out.reserve(kRuleCount);
  for (const Rule& r : catalog(options))
    out.push_back(compile_rule(r, dict, options.table1_literal));
  return out;
}

std::vector<std::pair<TermId, TermId>> transitive_closure(
    std::span<const std::pair<TermId, TermId>> pairs, ClosureStats* stats) {
  PairSet full;
  full.reserve(pairs.size() * 2);
  for (const auto& [a, b] : pairs) full.insert(pack_pair(a, b));
  PairSet delta = full;

  std::size_t iterations = 0;
  while (!delta.empty()) {
    ++iterations;
    // Compose the latest delta with itself; keep only unseen pairs.
    SrcIndex delta_idx = index_by_source(delta);
    PairSet next;
    for (std::uint64_t pr : delta) {
      auto it = delta_idx.find(pair_dst(pr));
      if (it == delta_idx.end()) continue;
      for (TermId z : it->second) {
        std::uint64_t np = pack_pair(pair_src(pr), z);
        if (full.find(np) == full.end()) next.insert(np);
      }
    }
    if (next.empty()) break;
    // Extend the unseen pairs by the accumulated relation before merging;
    // this is what doubles the covered path length every round.
    SrcIndex full_idx = index_by_source(full);
    std::vector<std::uint64_t> extended;
    for (std::uint64_t pr : next) {
      auto it = full_idx.find(pair_dst(pr));
      if (it == full_idx.end()) continue;
      for (TermId z : it->second)
        extended.push_back(pack_pair(pair_src(pr), z));
    }
    for (std::uint64_t pr : next) full.insert(pr);
    for (std::uint64_t pr : extended) full.insert(pr);
    delta = std::move(next);
  }

  if (stats != nullptr) stats->iterations = iterations;
  std::vector<std::pair<TermId, TermId>> out;
  out.reserve(full.size());
  for (std::uint64_t pr : full) out.emplace_back(pair_src(pr), pair_dst(pr));
  std::sort(out.begin(), out.end());
  return out;
}

BroadcastMaps build_broadcasts(const TripleStore& store,
                               const TripleStore* extra) {
  BroadcastMaps maps;
  const Vocab& v = store.vocab();
  scan_schema_partition(maps, store, v);
  if (extra != nullptr) scan_schema_partition(maps, *extra, v);
  // Materialize the onProperty ⋈ filler pre-joins once.
  for (const auto& [node, props] : maps.on_property) {
    for (TermId p : props) {
      if (auto it = maps.has_value.find(node); it != maps.has_value.end()) {
        for (TermId w : it->second) {
          BroadcastMaps::Restriction r{node, p, w};
          maps.has_value_by_node[node].push_back(r);
          maps.has_value_by_prop[p].push_back(r);
        }
      }
      if (auto it = maps.some_values_from.find(node);
          it != maps.some_values_from.end()) {
        for (TermId w : it->second)
          maps.some_values_by_prop[p].push_back({node, p, w});
      }
      if (auto it = maps.all_values_from.find(node);
          it != maps.all_values_from.end()) {
        for (TermId w : it->second)
          maps.all_values_by_node[node].push_back({node, p, w});
      }
    }
  }
  return maps;
}

namespace {

// Deduplicating sink shared by the kernels: keeps a candidate only when it is
// well-formed and absent from the view.
class Collector {
 public:
  Collector(const View& view, const TermValidity& validity)
      : view_(view), validity_(validity) {}

  void keep(const Triple& t) {
    if (!validity_.triple_ok(t)) return;
    if (view_.contains(t)) return;
    set_.insert(t);
  }

  void merge(const std::vector<Triple>& filtered) {
    for (const Triple& t : filtered) set_.insert(t);
  }

  std::vector<Triple> take_sorted() { return sorted_triples(set_); }

  const View& view() const { return view_; }
  const TermValidity& validity() const { return validity_; }

 private:
  const View& view_;
  const TermValidity& validity_;
  std::unordered_set<Triple, TripleHash> set_;
};

// Runs `kernel(triple, sink)` over every triple of one partition of the
// view, splitting the scan across workers.  Each worker filters its own
// emissions (validity + view membership) into a private buffer; buffers are
// merged in chunk order into the deduplicating collector, so the result is
// independent of the worker count and of scheduling.
template <class Kernel>
void drive_partition(Collector& out, TripleClass cls, int workers,
                     Kernel&& kernel) {
  const View& view = out.view();
  const std::size_t n = view.partition_size(cls);
  if (n == 0) return;
  const std::size_t p = std::min<std::size_t>(std::max(workers, 1), n);
  if (p <= 1) {
    auto sink = [&](const Triple& t) { out.keep(t); };
    for (std::size_t i = 0; i < n; ++i) kernel(view.partition_at(cls, i), sink);
    return;
  }

  std::vector<std::vector<Triple>> buffers(p);
  std::vector<std::exception_ptr> errors(p);
  std::vector<std::thread> threads;
  threads.reserve(p);
  for (std::size_t w = 0; w < p; ++w) {
    threads.emplace_back([&, w] {
      try {
        const std::size_t lo = n * w / p;
        const std::size_t hi = n * (w + 1) / p;
        auto& buf = buffers[w];
        auto sink = [&](const Triple& t) {
          if (out.validity().triple_ok(t) && !view.contains(t))
            buf.push_back(t);
        };
        for (std::size_t i = lo; i < hi; ++i)
          kernel(view.partition_at(cls, i), sink);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (const auto& buf : buffers) out.merge(buf);
}

template <class Fn>
void for_relation(const BroadcastMaps::Relation& rel, TermId key, Fn&& fn) {
  auto it = rel.find(key);
  if (it == rel.end()) return;
  for (TermId v : it->second) fn(v);
}

bool relation_has(const BroadcastMaps::Relation& rel, TermId key, TermId val) {
  auto it = rel.find(key);
  if (it == rel.end()) return false;
  const auto& vs = it->second;
  return std::find(vs.begin(), vs.end(), val) != vs.end();
}

template <class Fn>
void for_restrictions(
    const std::unordered_map<TermId, std::vector<BroadcastMaps::Restriction>>&
        by_key,
    TermId key, Fn&& fn) {
  auto it = by_key.find(key);
  if (it == by_key.end()) return;
  for (const auto& r : it->second) fn(r);
}

// Schema-relation composition used by R1/R2: emits (a, pred, c) for every
// a -> b -> c chain in `rel` (a single composition step, not the closure).
void compose_relation(Collector& out, const BroadcastMaps::Relation& rel,
                      TermId pred) {
  for (const auto& [a, bs] : rel)
    for (TermId b : bs)
      for_relation(rel, b, [&](TermId c) { out.keep({a, pred, c}); });
}

void mutual_to_equivalence(Collector& out, const BroadcastMaps::Relation& rel,
                           TermId eq_pred) {
  for (const auto& [a, bs] : rel)
    for (TermId b : bs)
      if (relation_has(rel, b, a)) out.keep({a, eq_pred, b});
}

void relation_to_triples(Collector& out, const BroadcastMaps::Relation& rel,
                         TermId pred, bool swapped) {
  for (const auto& [a, bs] : rel)
    for (TermId b : bs)
      out.keep(swapped ? Triple{b, pred, a} : Triple{a, pred, b});
}

// Groups the SPO postings of each property in `props` by subject (or by
// object) and emits every ordered pair of distinct co-grouped terms as a
// sameAs fact.  Implements O1 (by_subject=true) and O2.
void functional_pairs(Collector& out, const std::unordered_set<TermId>& props,
                      bool by_subject) {
  const View& view = out.view();
  const Vocab& v = view.vocab();
  for (TermId p : props) {
    SrcIndex groups;
    view.for_postings(p, [&](const Triple& t) {
      if (classify(t, v) != TripleClass::kSPO) return;
      if (by_subject) groups[t.s].push_back(t.o);
      else groups[t.o].push_back(t.s);
    });
    for (const auto& [key, vals] : groups) {
      (void)key;
      if (vals.size() < 2) continue;
      for (TermId a : vals)
        for (TermId b : vals)
          if (a != b) out.keep({a, v.same_as, b});
    }
  }
}

void eval_broadcast_rule(Collector& out, const CompiledRule& rule,
                         const BroadcastMaps& maps, int workers) {
  const View& view = out.view();
  const Vocab& v = view.vocab();
  switch (rule.id) {
    case RuleId::kR1:
      compose_relation(out, maps.sub_class_of, v.sub_class_of);
      break;
    case RuleId::kR2:
      compose_relation(out, maps.sub_property_of, v.sub_property_of);
      break;
    case RuleId::kR3:
      drive_partition(out, TripleClass::kSPO, workers,
                      [&](const Triple& t, auto&& sink) {
                        for_relation(maps.sub_property_of, t.p,
                                     [&](TermId p1) { sink({t.s, p1, t.o}); });
                      });
      break;
    case RuleId::kR4:
      drive_partition(out, TripleClass::kSPO, workers,
                      [&](const Triple& t, auto&& sink) {
                        for_relation(maps.domain, t.p, [&](TermId c) {
                          sink({t.s, v.type, c});
                        });
                      });
      break;
    case RuleId::kR5:
      drive_partition(out, TripleClass::kSPO, workers,
                      [&](const Triple& t, auto&& sink) {
                        for_relation(maps.range, t.p, [&](TermId c) {
                          sink({t.o, v.type, c});
                        });
                      });
      break;
    case RuleId::kR6:
      drive_partition(out, TripleClass::kType, workers,
                      [&](const Triple& t, auto&& sink) {
                        for_relation(maps.sub_class_of, t.o, [&](TermId c) {
                          sink({t.s, v.type, c});
                        });
                      });
      break;
    case RuleId::kO1:
      functional_pairs(out, maps.functional, /*by_subject=*/true);
      break;
    case RuleId::kO2:
      functional_pairs(out, maps.inverse_functional, /*by_subject=*/false);
      break;
    case RuleId::kO3:
      drive_partition(out, TripleClass::kSPO, workers,
                      [&](const Triple& t, auto&& sink) {
                        if (maps.symmetric.count(t.p) != 0)
                          sink({t.o, t.p, t.s});
                      });
      break;
    case RuleId::kO4:
      drive_partition(out, TripleClass::kSPO, workers,
                      [&](const Triple& t, auto&& sink) {
                        if (maps.transitive.count(t.p) == 0) return;
                        view.for_objects(t.p, t.o,
                                         [&](TermId o2) { sink({t.s, t.p, o2}); });
                      });
      break;
    case RuleId::kO5:
      drive_partition(out, TripleClass::kSameAs, workers,
                      [&](const Triple& t, auto&& sink) {
                        sink({t.o, v.same_as, t.s});
                      });
      break;
    case RuleId::kO6:
      drive_partition(out, TripleClass::kSameAs, workers,
                      [&](const Triple& t, auto&& sink) {
                        view.for_objects(v.same_as, t.o, [&](TermId u) {
                          sink({t.s, v.same_as, u});
                        });
                      });
      break;
    case RuleId::kO7a:
      drive_partition(out, TripleClass::kSPO, workers,
                      [&](const Triple& t, auto&& sink) {
                        for_relation(maps.inverse_fwd, t.p,
                                     [&](TermId q) { sink({t.o, q, t.s}); });
                      });
      break;
    case RuleId::kO7b:
      drive_partition(out, TripleClass::kSPO, workers,
                      [&](const Triple& t, auto&& sink) {
                        for_relation(maps.inverse_rev, t.p,
                                     [&](TermId p) { sink({t.o, p, t.s}); });
                      });
      break;
    case RuleId::kO8:
      for (TermId c : maps.class_decls)
        view.for_objects(v.same_as, c,
                         [&](TermId w) { out.keep({c, v.sub_class_of, w}); });
      break;
    case RuleId::kO9:
      for (TermId p : maps.property_decls)
        view.for_objects(v.same_as, p, [&](TermId w) {
          out.keep({p, v.sub_property_of, w});
        });
      break;
    case RuleId::kO10: {
      const SameAsIndex sa(view);
      if (sa.empty()) break;
      drive_partition(out, TripleClass::kSPO, workers,
                      [&](const Triple& t, auto&& sink) {
                        sa.for_successors(t.s, [&](TermId x) {
                          sa.for_successors(t.o, [&](TermId y) {
                            sink({x, t.p, y});
                          });
                        });
                      });
      break;
    }
    case RuleId::kO11a:
      relation_to_triples(out, maps.equivalent_class, v.sub_class_of,
                          /*swapped=*/false);
      break;
    case RuleId::kO11b:
      relation_to_triples(out, maps.equivalent_class, v.sub_class_of,
                          /*swapped=*/true);
      break;
    case RuleId::kO11c:
      mutual_to_equivalence(out, maps.sub_class_of, v.equivalent_class);
      break;
    case RuleId::kO12a:
      relation_to_triples(out, maps.equivalent_property, v.sub_property_of,
                          /*swapped=*/false);
      break;
    case RuleId::kO12b:
      relation_to_triples(out, maps.equivalent_property, v.sub_property_of,
                          /*swapped=*/true);
      break;
    case RuleId::kO12c:
      mutual_to_equivalence(out, maps.sub_property_of, v.equivalent_property);
      break;
    case RuleId::kO13:
      if (rule.literal_has_value) {
        // Literal reading: the instance triple's object is the restriction
        // node itself.
        drive_partition(out, TripleClass::kSPO, workers,
                        [&](const Triple& t, auto&& sink) {
                          for_restrictions(maps.has_value_by_node, t.o,
                                           [&](const auto& r) {
                                             if (r.property == t.p)
                                               sink({t.s, v.type, r.node});
                                           });
                        });
      } else {
        drive_partition(out, TripleClass::kSPO, workers,
                        [&](const Triple& t, auto&& sink) {
                          for_restrictions(maps.has_value_by_prop, t.p,
                                           [&](const auto& r) {
                                             if (r.filler == t.o)
                                               sink({t.s, v.type, r.node});
                                           });
                        });
      }
      break;
    case RuleId::kO14:
      drive_partition(out, TripleClass::kType, workers,
                      [&](const Triple& t, auto&& sink) {
                        for_restrictions(
                            maps.has_value_by_node, t.o, [&](const auto& r) {
                              sink({t.s, r.property,
                                    rule.literal_has_value ? r.node : r.filler});
                            });
                      });
      break;
    case RuleId::kO15:
      drive_partition(
          out, TripleClass::kSPO, workers, [&](const Triple& t, auto&& sink) {
            for_restrictions(
                maps.some_values_by_prop, t.p, [&](const auto& r) {
                  // The (x rdf:type w) condition is Type-scoped, so a filler
                  // that is an owl meta-term (which would classify the probe
                  // as Schema) cannot satisfy it.
                  if (v.is_schema_type_object(r.filler)) return;
                  if (view.contains({t.o, v.type, r.filler}))
                    sink({t.s, v.type, r.node});
                });
          });
      break;
    case RuleId::kO16:
      drive_partition(
          out, TripleClass::kType, workers, [&](const Triple& t, auto&& sink) {
            for_restrictions(
                maps.all_values_by_node, t.o, [&](const auto& r) {
                  view.for_objects(r.property, t.s, [&](TermId x) {
                    // The (u p x) condition is SPO-scoped; re-check because
                    // the restriction property may be a classifying
                    // predicate such as rdf:type.
                    if (classify({t.s, r.property, x}, v) != TripleClass::kSPO)
                      return;
                    sink({x, v.type, r.filler});
                  });
                });
          });
      break;
  }
}

// ---------------------------------------------------------------------------
// Generic nested-index backtracking join.

enum class Source { kUnion, kBaseOnly, kDeltaOnly };

class NestedEval {
 public:
  NestedEval(const TripleStore& base, const TripleStore* other,
             const CompiledRule& rule, const TermValidity& validity,
             bool delta_mode)
      : base_(base),
        other_(other),
        rule_(rule),
        validity_(validity),
        delta_mode_(delta_mode),
        vocab_(base.vocab()),
        binding_(static_cast<std::size_t>(rule.var_count), 0),
        bound_(static_cast<std::size_t>(rule.var_count), false) {
    if (rule_.reflexive_sameas) {
      collect_sameas_terms(base_, base_terms_);
      if (other_ != nullptr) {
        std::unordered_set<TermId> all;
        collect_sameas_terms(*other_, all);
        for (TermId t : all)
          if (base_terms_.count(t) == 0) other_terms_.insert(t);
      }
    }
  }

  std::vector<Triple> run() {
    const std::size_t n = rule_.conditions.size();
    sources_.assign(n, Source::kUnion);
    if (!delta_mode_) {
      solve(0);
    } else {
      // Semi-naive source splitting: pass i requires condition i to match in
      // the delta, earlier conditions to match in the base only, and later
      // conditions to match anywhere.  Every delta-touching binding is
      // enumerated exactly once across the passes.
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          sources_[j] = j < i    ? Source::kBaseOnly
                        : j == i ? Source::kDeltaOnly
                                 : Source::kUnion;
        }
        solve(0);
      }
    }
    return sorted_triples(out_);
  }

 private:
  static void collect_sameas_terms(const TripleStore& store,
                                   std::unordered_set<TermId>& into) {
    for (std::uint32_t idx : store.partition(TripleClass::kSameAs)) {
      const Triple& t = store.triple(idx);
      into.insert(t.s);
      into.insert(t.o);
    }
  }

  std::optional<TermId> resolve(int var, TermId constant) const {
    if (var < 0) return constant;
    if (bound_[static_cast<std::size_t>(var)])
      return binding_[static_cast<std::size_t>(var)];
    return std::nullopt;
  }

  bool matches(const CompiledPattern& c, const Triple& t) const {
    if (classify(t, vocab_) != c.scope) return false;
    auto pos_ok = [&](int var, TermId constant, TermId val) {
      if (var < 0) return constant == val;
      const auto v = static_cast<std::size_t>(var);
      return !bound_[v] || binding_[v] == val;
    };
    return pos_ok(c.s_var, c.s, t.s) && pos_ok(c.p_var, c.p, t.p) &&
           pos_ok(c.o_var, c.o, t.o);
  }

  // Binds the pattern's unbound variables from t; records what was newly
  // bound so the caller can roll back.  Assumes matches(c, t).
  void bind(const CompiledPattern& c, const Triple& t,
            std::vector<int>& newly) {
    auto b = [&](int var, TermId val) {
      if (var < 0) return;
      const auto v = static_cast<std::size_t>(var);
      if (!bound_[v]) {
        bound_[v] = true;
        binding_[v] = val;
        newly.push_back(var);
      }
    };
    b(c.s_var, t.s);
    b(c.p_var, t.p);
    b(c.o_var, t.o);
  }

  void unbind(const std::vector<int>& newly) {
    for (int var : newly) bound_[static_cast<std::size_t>(var)] = false;
  }

  bool virtual_applies(const CompiledPattern& c) const {
    return rule_.reflexive_sameas && c.p_var < 0 && c.p == vocab_.same_as &&
           c.scope == TripleClass::kSameAs;
  }

  bool in_virtual_terms(TermId t, Source src) const {
    switch (src) {
      case Source::kBaseOnly: return base_terms_.count(t) != 0;
      case Source::kDeltaOnly: return other_terms_.count(t) != 0;
      case Source::kUnion:
        return base_terms_.count(t) != 0 || other_terms_.count(t) != 0;
    }
    return false;
  }

  template <class Fn>
  void for_stores(Source src, Fn&& fn) const {
    if (src != Source::kDeltaOnly) fn(base_);
    if (src != Source::kBaseOnly && other_ != nullptr) fn(*other_);
  }

  // Enumerates a superset of the triples that can match condition c from the
  // given source; matches() is the definitive filter.
  template <class Fn>
  void for_candidates(const CompiledPattern& c, Source src, Fn&& fn) {
    const auto p = resolve(c.p_var, c.p);
    if (p.has_value()) {
      const auto s = resolve(c.s_var, c.s);
      const auto o = resolve(c.o_var, c.o);
      if (s.has_value() && o.has_value()) {
        const Triple t{*s, *p, *o};
        bool present = false;
        for_stores(src, [&](const TripleStore& st) {
          present = present || st.contains(t);
        });
        if (present) fn(t);
      } else if (s.has_value()) {
        for_stores(src, [&](const TripleStore& st) {
          if (const auto* v = st.objects(*p, *s))
            for (TermId ov : *v) fn(Triple{*s, *p, ov});
        });
      } else if (o.has_value()) {
        for_stores(src, [&](const TripleStore& st) {
          if (const auto* v = st.subjects(*p, *o))
            for (TermId sv : *v) fn(Triple{sv, *p, *o});
        });
      } else {
        for_stores(src, [&](const TripleStore& st) {
          if (const auto* v = st.postings(*p))
            for (std::uint32_t idx : *v) fn(st.triple(idx));
        });
      }
      if (virtual_applies(c)) {
        if (s.has_value()) {
          if (in_virtual_terms(*s, src)) fn(Triple{*s, *p, *s});
        } else if (o.has_value()) {
          if (in_virtual_terms(*o, src)) fn(Triple{*o, *p, *o});
        } else {
          auto each = [&](const std::unordered_set<TermId>& terms) {
            for (TermId t : terms) fn(Triple{t, *p, t});
          };
          if (src != Source::kDeltaOnly) each(base_terms_);
          if (src != Source::kBaseOnly) each(other_terms_);
        }
      }
    } else {
      // Variable predicate: scan the pattern's partition.
      for_stores(src, [&](const TripleStore& st) {
        for (std::uint32_t idx : st.partition(c.scope)) fn(st.triple(idx));
      });
    }
  }

  void solve(std::size_t ci) {
    if (ci == rule_.conditions.size()) {
      emit();
      return;
    }
    const CompiledPattern& c = rule_.conditions[ci];
    const Source src = sources_[ci];
    for_candidates(c, src, [&](const Triple& t) {
      if (!matches(c, t)) return;
      std::vector<int> newly;
      bind(c, t, newly);
      solve(ci + 1);
      unbind(newly);
    });
  }

  void emit() {
    for (const auto& [a, b] : rule_.distinct_pairs) {
      if (binding_[static_cast<std::size_t>(a)] ==
          binding_[static_cast<std::size_t>(b)])
        return;
    }
    for (const CompiledPattern& c : rule_.consequences) {
      auto value = [&](int var, TermId constant) {
        return var < 0 ? constant : binding_[static_cast<std::size_t>(var)];
      };
      const Triple t{value(c.s_var, c.s), value(c.p_var, c.p),
                     value(c.o_var, c.o)};
      if (!validity_.triple_ok(t)) continue;
      if (base_.contains(t)) continue;
      // Full evaluation subtracts the whole view; semi-naive evaluation
      // subtracts only the base store (delta re-derivations are reported).
      if (!delta_mode_ && other_ != nullptr && other_->contains(t)) continue;
      out_.insert(t);
    }
  }

  const TripleStore& base_;
  const TripleStore* other_;
  const CompiledRule& rule_;
  const TermValidity& validity_;
  const bool delta_mode_;
  const Vocab& vocab_;

  std::vector<TermId> binding_;
  std::vector<char> bound_;
  std::vector<Source> sources_;
  std::unordered_set<TermId> base_terms_;
  std::unordered_set<TermId> other_terms_;
  std::unordered_set<Triple, TripleHash> out_;
};

}  // namespace

std::vector<Triple> apply_rule_broadcast(const TripleStore& store,
                                         const TripleStore* extra,
                                         const CompiledRule& rule,
                                         const BroadcastMaps& maps,
                                         const TermValidity& validity,
                                         int workers) {
  const View view(store, extra);
  Collector out(view, validity);
  eval_broadcast_rule(out, rule, maps, workers);
  return out.take_sorted();
}

std::vector<Triple> apply_rule_nested(const TripleStore& store,
                                      const TripleStore* extra,
                                      const CompiledRule& rule,
                                      const TermValidity& validity) {
  NestedEval eval(store, extra, rule, validity, /*delta_mode=*/false);
  return eval.run();
}

std::vector<Triple> apply_rule_delta(const TripleStore& store,
                                     const TripleStore& delta,
                                     const CompiledRule& rule,
                                     const TermValidity& validity) {
  NestedEval eval(store, &delta, rule, validity, /*delta_mode=*/true);
  return eval.run();
}

std::vector<Triple> apply_rule(const TripleStore& store,
                               const Dictionary& dict,
                               const CompiledRule& rule,
                               const TripleStore* delta, int workers) {
  const TermValidity validity(dict);
  if (delta == nullptr) {
    const BroadcastMaps maps = build_broadcasts(store);
    return apply_rule_broadcast(store, nullptr, rule, maps, validity, workers);
  }
  return apply_rule_delta(store, *delta, rule, validity);
}

std::vector<Triple> evaluate_transitive_properties(const TripleStore& store,
                                                   const TripleStore* extra) {
  const Vocab& v = store.vocab();
  std::vector<TermId> props;
  auto scan = [&](const TripleStore& st) {
    for (std::uint32_t idx : st.partition(TripleClass::kSchema)) {
      const Triple& t = st.triple(idx);
      if (t.p == v.type && t.o == v.transitive_property)
        props.push_back(t.s);
    }
  };
  scan(store);
  if (extra != nullptr) scan(*extra);
  std::sort(props.begin(), props.end());
  props.erase(std::unique(props.begin(), props.end()), props.end());

  std::vector<Triple> out;
  for (TermId p : props) {
    auto fresh = close_predicate_pairs(store, extra, p, TripleClass::kSPO);
    out.insert(out.end(), fresh.begin(), fresh.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Triple> close_predicate_pairs(const TripleStore& store,
                                          const TripleStore* extra,
                                          TermId pred, TripleClass cls,
                                          ClosureStats* stats) {
  const View view(store, extra);
  std::vector<std::pair<TermId, TermId>> pairs;
  view.for_postings(pred, [&](const Triple& t) {
    if (classify(t, view.vocab()) == cls) pairs.emplace_back(t.s, t.o);
  });
  auto closed = transitive_closure(pairs, stats);
  std::vector<Triple> out;
  for (const auto& [a, b] : closed) {
    const Triple t{a, pred, b};
    if (!view.contains(t)) out.push_back(t);
  }
  return out;
}

}  // namespace rors
