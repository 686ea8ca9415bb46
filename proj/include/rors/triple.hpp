#ifndef RORS_TRIPLE_HPP
#define RORS_TRIPLE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rors/term.hpp"
#include "rors/vocab.hpp"

namespace rors {

struct Triple {
  TermId s = 0, p = 0, o = 0;

  bool operator==(const Triple& t) const { return s == t.s && p == t.p && o == t.o; }
  bool operator!=(const Triple& t) const { return !(*this == t); }
  bool operator<(const Triple& t) const {
    if (s != t.s) return s < t.s;
    if (p != t.p) return p < t.p;
    return o < t.o;
  }
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const {
    std::uint64_t h = (std::uint64_t(t.s) << 32) ^ (std::uint64_t(t.p) << 16) ^ t.o;
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ULL;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};

enum class TripleClass : std::uint8_t { kSchema = 0, kType = 1, kSameAs = 2, kSPO = 3 };
inline constexpr int kTripleClassCount = 4;
const char* to_string(TripleClass c);

// Classification order: schema patterns win over rdf:type, rdf:type over
// owl:sameAs, everything else is a plain subject-predicate-object fact.
inline TripleClass classify(const Triple& t, const Vocab& v) {
  if (v.is_schema_predicate(t.p)) return TripleClass::kSchema;
  if (t.p == v.type)
    return v.is_schema_type_object(t.o) ? TripleClass::kSchema : TripleClass::kType;
  if (t.p == v.same_as) return TripleClass::kSameAs;
  return TripleClass::kSPO;
}

// Set-semantics triple container with by-predicate, (predicate, subject) and
// (predicate, object) indexes plus one partition per triple class. The
// partitions are disjoint and their union is the whole store.
class TripleStore {
 public:
  explicit TripleStore(const Vocab& vocab) : vocab_(vocab) {}

  std::size_t insert(const Triple& t);
  std::size_t insert(std::span<const Triple> ts);
  std::size_t insert(const TripleStore& other);

  bool contains(const Triple& t) const { return set_.count(t) != 0; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  const std::vector<Triple>& triples() const { return triples_; }
  const Triple& triple(std::uint32_t idx) const { return triples_[idx]; }
  TripleClass class_of(std::uint32_t idx) const { return classes_[idx]; }
  const std::vector<std::uint32_t>& partition(TripleClass c) const {
    return partitions_[static_cast<int>(c)];
  }
  std::size_t class_count(TripleClass c) const { return partitions_[static_cast<int>(c)].size(); }

  // Index accessors; null when the key has no entries.
  const std::vector<std::uint32_t>* postings(TermId p) const;
  const std::vector<TermId>* objects(TermId p, TermId s) const;
  const std::vector<TermId>* subjects(TermId p, TermId o) const;

  const Vocab& vocab() const { return vocab_; }

  // Fractions of instance (non-schema) triples per class. Throws
  // EmptyDatasetError on an empty store and ConfigError when the store holds
  // schema axioms only.
  std::map<TripleClass, double> class_proportions() const;

  void reserve(std::size_t n);

 private:
  static std::uint64_t key(TermId a, TermId b) { return (std::uint64_t(a) << 32) | b; }

  Vocab vocab_;
  std::vector<Triple> triples_;
  std::vector<TripleClass> classes_;
  std::unordered_set<Triple, TripleHash> set_;
  std::unordered_map<TermId, std::vector<std::uint32_t>> by_p_;
  std::unordered_map<std::uint64_t, std::vector<TermId>> ps_;
  std::unordered_map<std::uint64_t, std::vector<TermId>> po_;
  std::array<std::vector<std::uint32_t>, kTripleClassCount> partitions_;
};

}  // namespace rors

#endif
