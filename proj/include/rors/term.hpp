#ifndef RORS_TERM_HPP
#define RORS_TERM_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rors/errors.hpp"

namespace rors {

using TermId = std::uint32_t;

enum class TermKind : std::uint8_t { kIri, kBlank, kLiteral };

// An RDF term. `lexical` holds the IRI text without angle brackets, the blank
// node label without the "_:" prefix, or the full literal token as written
// (quotes, escapes, and any @lang / ^^<datatype> suffix included). Literals
// are compared by exact lexical form; no normalization is applied.
struct Term {
  TermKind kind = TermKind::kIri;
  std::string lexical;

  static Term iri(std::string s) { return {TermKind::kIri, std::move(s)}; }
  static Term blank(std::string s) { return {TermKind::kBlank, std::move(s)}; }
  static Term literal(std::string s) { return {TermKind::kLiteral, std::move(s)}; }

  bool operator==(const Term& o) const { return kind == o.kind && lexical == o.lexical; }
  bool operator!=(const Term& o) const { return !(*this == o); }
};

struct TermHash {
  std::size_t operator()(const Term& t) const {
    return std::hash<std::string>()(t.lexical) * 31u + static_cast<std::size_t>(t.kind);
  }
};

// Bijection between terms and dense ids assigned in first-seen order.
// Interning is append-only; ids are never reused or remapped.
class Dictionary {
 public:
  TermId intern(const Term& t) {
    auto it = forward_.find(t);
    if (it != forward_.end()) return it->second;
    TermId id = static_cast<TermId>(backward_.size());
    forward_.emplace(t, id);
    backward_.push_back(t);
    return id;
  }

  const Term& decode(TermId id) const {
    if (id >= backward_.size())
      throw InternalError("dictionary corruption: unknown term id " + std::to_string(id));
    return backward_[id];
  }

  std::optional<TermId> lookup(const Term& t) const {
    auto it = forward_.find(t);
    if (it == forward_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return backward_.size(); }

 private:
  std::unordered_map<Term, TermId, TermHash> forward_;
  std::vector<Term> backward_;
};

}  // namespace rors

#endif
