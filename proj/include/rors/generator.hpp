#ifndef RORS_GENERATOR_HPP
#define RORS_GENERATOR_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rors/term.hpp"
#include "rors/triple.hpp"

namespace rors {

struct GeneratorConfig {
  std::uint64_t seed = 42;
  // Approximate total triple count (schema block included); generation stops
  // at the first entity-block boundary at or past this size.
  std::size_t size = 10000;
  // Fraction of instance triples that are owl:sameAs alias facts.  0 keeps
  // the dataset sameAs-free.  Must lie in [0, 0.15].
  double sameas_rate = 0.0;
};

// Deterministic university-domain dataset: a fixed schema block (class and
// property hierarchies, domain/range axioms, transitive/symmetric/inverse/
// functional declarations, and value restrictions) plus randomized instance
// blocks whose class mix lands near 20% rdf:type / 80% plain facts.  The
// seed fully determines the output sequence.  Terms are interned into
// `dict`; triples are returned in generation order.
std::vector<Triple> generate_university(Dictionary& dict,
                                        const GeneratorConfig& config);

}  // namespace rors

#endif  // RORS_GENERATOR_HPP
