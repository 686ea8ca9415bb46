#include "rors/triple.hpp"

#include "rors/errors.hpp"

namespace rors {

const char* to_string(TripleClass c) {
  switch (c) {
    case TripleClass::kSchema: return "schema";
    case TripleClass::kType: return "type";
    case TripleClass::kSameAs: return "sameas";
    case TripleClass::kSPO: return "spo";
  }
  return "?";
}

std::size_t TripleStore::insert(const Triple& t) {
  if (!set_.insert(t).second) return 0;
  auto idx = static_cast<std::uint32_t>(triples_.size());
  triples_.push_back(t);
  TripleClass c = classify(t, vocab_);
  classes_.push_back(c);
  partitions_[static_cast<int>(c)].push_back(idx);
  by_p_[t.p].push_back(idx);
  ps_[key(t.p, t.s)].push_back(t.o);
  po_[key(t.p, t.o)].push_back(t.s);
  return 1;
}

std::size_t TripleStore::insert(std::span<const Triple> ts) {
  std::size_t added = 0;
  for (const Triple& t : ts) added += insert(t);
  return added;
}

std::size_t TripleStore::insert(const TripleStore& other) {
  std::size_t added = 0;
  for (const Triple& t : other.triples()) added += insert(t);
  return added;
}

const std::vector<std::uint32_t>* TripleStore::postings(TermId p) const {
  auto it = by_p_.find(p);
  return it == by_p_.end() ? nullptr : &it->second;
}

const std::vector<TermId>* TripleStore::objects(TermId p, TermId s) const {
  auto it = ps_.find(key(p, s));
  return it == ps_.end() ? nullptr : &it->second;
}

const std::vector<TermId>* TripleStore::subjects(TermId p, TermId o) const {
  auto it = po_.find(key(p, o));
  return it == po_.end() ? nullptr : &it->second;
}

std::map<TripleClass, double> TripleStore::class_proportions() const {
  if (triples_.empty()) throw EmptyDatasetError();
  std::size_t instance = size() - class_count(TripleClass::kSchema);
  if (instance == 0) throw ConfigError("no instance triples");
  std::map<TripleClass, double> out;
  for (TripleClass c : {TripleClass::kType, TripleClass::kSameAs, TripleClass::kSPO})
    out[c] = 100.0 * static_cast<double>(class_count(c)) / static_cast<double>(instance);
  return out;
}

void TripleStore::reserve(std::size_t n) {
  triples_.reserve(n);
  classes_.reserve(n);
  set_.reserve(n * 2);
}

}  // namespace rors
