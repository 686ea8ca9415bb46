#ifndef RORS_VOCAB_HPP
#define RORS_VOCAB_HPP

#include <array>
#include <string_view>

#include "rors/term.hpp"

namespace rors {

namespace iri {

inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

inline constexpr std::string_view kRdfsSubClassOf = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view kRdfsSubPropertyOf = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
inline constexpr std::string_view kRdfsDomain = "http://www.w3.org/2000/01/rdf-schema#domain";
inline constexpr std::string_view kRdfsRange = "http://www.w3.org/2000/01/rdf-schema#range";

inline constexpr std::string_view kOwlSameAs = "http://www.w3.org/2002/07/owl#sameAs";
inline constexpr std::string_view kOwlEquivalentClass = "http://www.w3.org/2002/07/owl#equivalentClass";
inline constexpr std::string_view kOwlEquivalentProperty = "http://www.w3.org/2002/07/owl#equivalentProperty";
inline constexpr std::string_view kOwlInverseOf = "http://www.w3.org/2002/07/owl#inverseOf";
inline constexpr std::string_view kOwlHasValue = "http://www.w3.org/2002/07/owl#hasValue";
inline constexpr std::string_view kOwlOnProperty = "http://www.w3.org/2002/07/owl#onProperty";
inline constexpr std::string_view kOwlSomeValuesFrom = "http://www.w3.org/2002/07/owl#someValuesFrom";
inline constexpr std::string_view kOwlAllValuesFrom = "http://www.w3.org/2002/07/owl#allValuesFrom";

inline constexpr std::string_view kOwlFunctionalProperty = "http://www.w3.org/2002/07/owl#FunctionalProperty";
inline constexpr std::string_view kOwlInverseFunctionalProperty =
    "http://www.w3.org/2002/07/owl#InverseFunctionalProperty";
inline constexpr std::string_view kOwlSymmetricProperty = "http://www.w3.org/2002/07/owl#SymmetricProperty";
inline constexpr std::string_view kOwlTransitiveProperty = "http://www.w3.org/2002/07/owl#TransitiveProperty";
inline constexpr std::string_view kOwlClass = "http://www.w3.org/2002/07/owl#Class";
inline constexpr std::string_view kOwlProperty = "http://www.w3.org/2002/07/owl#Property";
inline constexpr std::string_view kOwlObjectProperty = "http://www.w3.org/2002/07/owl#ObjectProperty";
inline constexpr std::string_view kOwlDatatypeProperty = "http://www.w3.org/2002/07/owl#DatatypeProperty";
inline constexpr std::string_view kOwlRestriction = "http://www.w3.org/2002/07/owl#Restriction";

// Predicates whose triples always carry schema information.
inline constexpr std::array<std::string_view, 11> kSchemaPredicates = {
    kRdfsSubClassOf,     kRdfsSubPropertyOf,    kRdfsDomain,     kRdfsRange,
    kOwlEquivalentClass, kOwlEquivalentProperty, kOwlInverseOf,  kOwlHasValue,
    kOwlOnProperty,      kOwlSomeValuesFrom,    kOwlAllValuesFrom};

// rdf:type objects that make the typing triple a schema axiom rather than
// instance data (property characteristics and meta-class declarations).
inline constexpr std::array<std::string_view, 9> kSchemaTypeObjects = {
    kOwlFunctionalProperty, kOwlInverseFunctionalProperty, kOwlSymmetricProperty,
    kOwlTransitiveProperty, kOwlClass,                     kOwlProperty,
    kOwlObjectProperty,     kOwlDatatypeProperty,          kOwlRestriction};

inline bool is_schema_predicate(std::string_view s) {
  for (auto p : kSchemaPredicates)
    if (p == s) return true;
  return false;
}

inline bool is_schema_type_object(std::string_view s) {
  for (auto p : kSchemaTypeObjects)
    if (p == s) return true;
  return false;
}

}  // namespace iri

// Well-known term ids against one dictionary. Construction interns every
// vocabulary term so rule constants never mutate the dictionary later.
struct Vocab {
  TermId type, same_as;
  TermId sub_class_of, sub_property_of, domain, range;
  TermId equivalent_class, equivalent_property, inverse_of;
  TermId has_value, on_property, some_values_from, all_values_from;
  TermId functional_property, inverse_functional_property;
  TermId symmetric_property, transitive_property;
  TermId owl_class, owl_property, owl_object_property, owl_datatype_property, owl_restriction;

  std::array<TermId, 11> schema_predicates;
  std::array<TermId, 9> schema_type_objects;

  explicit Vocab(Dictionary& dict) {
    auto id = [&dict](std::string_view s) { return dict.intern(Term::iri(std::string(s))); };
    type = id(iri::kRdfType);
    same_as = id(iri::kOwlSameAs);
    sub_class_of = id(iri::kRdfsSubClassOf);
    sub_property_of = id(iri::kRdfsSubPropertyOf);
    domain = id(iri::kRdfsDomain);
    range = id(iri::kRdfsRange);
    equivalent_class = id(iri::kOwlEquivalentClass);
    equivalent_property = id(iri::kOwlEquivalentProperty);
    inverse_of = id(iri::kOwlInverseOf);
    has_value = id(iri::kOwlHasValue);
    on_property = id(iri::kOwlOnProperty);
    some_values_from = id(iri::kOwlSomeValuesFrom);
    all_values_from = id(iri::kOwlAllValuesFrom);
    functional_property = id(iri::kOwlFunctionalProperty);
    inverse_functional_property = id(iri::kOwlInverseFunctionalProperty);
    symmetric_property = id(iri::kOwlSymmetricProperty);
    transitive_property = id(iri::kOwlTransitiveProperty);
    owl_class = id(iri::kOwlClass);
    owl_property = id(iri::kOwlProperty);
    owl_object_property = id(iri::kOwlObjectProperty);
    owl_datatype_property = id(iri::kOwlDatatypeProperty);
    owl_restriction = id(iri::kOwlRestriction);

    schema_predicates = {sub_class_of,     sub_property_of,    domain,     range,
                         equivalent_class, equivalent_property, inverse_of, has_value,
                         on_property,      some_values_from,   all_values_from};
    schema_type_objects = {functional_property, inverse_functional_property, symmetric_property,
                           transitive_property, owl_class,                   owl_property,
                           owl_object_property, owl_datatype_property,       owl_restriction};
  }

  bool is_schema_predicate(TermId p) const {
    for (TermId s : schema_predicates)
      if (s == p) return true;
    return false;
  }

  bool is_schema_type_object(TermId o) const {
    for (TermId s : schema_type_objects)
      if (s == o) return true;
    return false;
  }
};

}  // namespace rors

#endif
