#include <doctest.h>

#include "test_support.hpp"

using namespace rors;

TEST_SUITE("dictionary") {
  TEST_CASE("interning is a bijection with dense first-seen ids") {
    Dictionary dict;
    const TermId a = dict.intern(Term::iri("http://example.org/a"));
    const TermId b = dict.intern(Term::iri("http://example.org/b"));
    const TermId a2 = dict.intern(Term::iri("http://example.org/a"));
    CHECK(a == a2);
    CHECK(a != b);
    CHECK(dict.size() == 2);
    CHECK(dict.decode(a) == Term::iri("http://example.org/a"));
    CHECK(dict.decode(b) == Term::iri("http://example.org/b"));
  }

  TEST_CASE("kinds distinguish equal lexical forms") {
    Dictionary dict;
    const TermId iri = dict.intern(Term::iri("x"));
    const TermId blank = dict.intern(Term::blank("x"));
    CHECK(iri != blank);
  }

  TEST_CASE("lookup never interns") {
    Dictionary dict;
    CHECK(!dict.lookup(Term::iri("u")).has_value());
    CHECK(dict.size() == 0);
    dict.intern(Term::iri("u"));
    CHECK(dict.lookup(Term::iri("u")).has_value());
  }

  TEST_CASE("decoding an unknown id throws") {
    Dictionary dict;
    CHECK_THROWS_AS(dict.decode(5), InternalError);
  }
}

TEST_SUITE("classification") {
  TEST_CASE("the four classes partition by predicate and type object") {
    ts::Fixture f(ts::nt({
        {"ex:C", "rdfs:subClassOf", "ex:D"},       // schema predicate
        {"ex:p", "owl:inverseOf", "ex:q"},         // schema predicate
        {"ex:p", "rdf:type", "owl:TransitiveProperty"},  // type with meta object
        {"ex:a", "rdf:type", "ex:C"},              // plain type fact
        {"ex:a", "owl:sameAs", "ex:b"},            // sameAs
        {"ex:a", "ex:p", "ex:b"},                  // plain fact
    }));
    CHECK(f.store.class_count(TripleClass::kSchema) == 3);
    CHECK(f.store.class_count(TripleClass::kType) == 1);
    CHECK(f.store.class_count(TripleClass::kSameAs) == 1);
    CHECK(f.store.class_count(TripleClass::kSPO) == 1);
  }

  TEST_CASE("every reserved schema predicate classifies as schema") {
    ts::Fixture f;
    const Vocab& v = f.vocab;
    const TermId s = f.dict.intern(Term::iri("http://example.org/s"));
    const TermId o = f.dict.intern(Term::iri("http://example.org/o"));
    for (TermId p : {v.sub_class_of, v.sub_property_of, v.domain, v.range,
                     v.equivalent_class, v.equivalent_property, v.inverse_of,
                     v.on_property, v.has_value, v.some_values_from,
                     v.all_values_from}) {
      CHECK(classify(Triple{s, p, o}, v) == TripleClass::kSchema);
    }
  }

  TEST_CASE("rdf:type splits on whether the object is reserved") {
    ts::Fixture f;
    const Vocab& v = f.vocab;
    const TermId s = f.dict.intern(Term::iri("http://example.org/s"));
    for (TermId meta : {v.functional_property, v.inverse_functional_property,
                        v.symmetric_property, v.transitive_property, v.owl_class,
                        v.owl_property, v.owl_object_property,
                        v.owl_datatype_property, v.owl_restriction}) {
      CHECK(classify(Triple{s, v.type, meta}, v) == TripleClass::kSchema);
    }
    const TermId cls = f.dict.intern(Term::iri("http://example.org/C"));
    CHECK(classify(Triple{s, v.type, cls}, v) == TripleClass::kType);
  }
}

TEST_SUITE("triple store") {
  TEST_CASE("insert deduplicates and reports the number added") {
    ts::Fixture f;
    const Triple t{f.dict.intern(Term::iri("a")), f.dict.intern(Term::iri("p")),
                   f.dict.intern(Term::iri("b"))};
    CHECK(f.store.insert(t) == 1);
    CHECK(f.store.insert(t) == 0);
    CHECK(f.store.size() == 1);
    CHECK(f.store.contains(t));
  }

  TEST_CASE("partitions are disjoint and cover the store") {
    Dictionary dict;
    auto triples = ts::random_store(dict, {.seed = 9, .size = 200});
    Vocab vocab(dict);
    TripleStore store(vocab);
    store.insert(triples);
    std::size_t total = 0;
    for (TripleClass c : {TripleClass::kSchema, TripleClass::kSPO,
                          TripleClass::kType, TripleClass::kSameAs}) {
      total += store.class_count(c);
      for (std::uint32_t idx : store.partition(c)) {
        CHECK(classify(store.triple(idx), vocab) == c);
      }
    }
    CHECK(total == store.size());
  }

  TEST_CASE("postings index matches a linear scan") {
    Dictionary dict;
    auto triples = ts::random_store(dict, {.seed = 21, .size = 150});
    Vocab vocab(dict);
    TripleStore store(vocab);
    store.insert(triples);
    // For each distinct (p, s), objects(p, s) must equal the scan result.
    for (const Triple& t : store.triples()) {
      const auto* objs = store.objects(t.p, t.s);
      REQUIRE(objs != nullptr);
      std::size_t expected = 0;
      for (const Triple& u : store.triples())
        if (u.p == t.p && u.s == t.s) ++expected;
      CHECK(objs->size() == expected);
      CHECK(std::find(objs->begin(), objs->end(), t.o) != objs->end());
      const auto* subs = store.subjects(t.p, t.o);
      REQUIRE(subs != nullptr);
      CHECK(std::find(subs->begin(), subs->end(), t.s) != subs->end());
    }
    const TermId ghost = dict.intern(Term::iri("http://example.org/ghost"));
    CHECK(store.objects(ghost, ghost) == nullptr);
    CHECK(store.postings(ghost) == nullptr);
  }

  TEST_CASE("class proportions sum to 100 over instance triples") {
    ts::Fixture f(ts::nt({
        {"ex:a", "rdf:type", "ex:C"},
        {"ex:a", "ex:p", "ex:b"},
        {"ex:a", "owl:sameAs", "ex:b"},
        {"ex:C", "rdfs:subClassOf", "ex:D"},
    }));
    auto props = f.store.class_proportions();
    const double sum = props[TripleClass::kType] + props[TripleClass::kSameAs] +
                       props[TripleClass::kSPO];
    CHECK(sum == doctest::Approx(100.0));
    CHECK(props[TripleClass::kType] == doctest::Approx(100.0 / 3.0));
  }

  TEST_CASE("proportions on an empty store raise the empty-dataset error") {
    ts::Fixture f;
    CHECK_THROWS_AS(f.store.class_proportions(), EmptyDatasetError);
  }

  TEST_CASE("proportions with only schema triples raise a config error") {
    ts::Fixture f(ts::nt({{"ex:C", "rdfs:subClassOf", "ex:D"}}));
    CHECK_THROWS_AS(f.store.class_proportions(), ConfigError);
  }

  TEST_CASE("store-to-store insert merges without duplicates") {
    ts::Fixture a(ts::nt({{"ex:a", "ex:p", "ex:b"}, {"ex:b", "ex:p", "ex:c"}}));
    TripleStore other(a.store.vocab());
    other.insert(a.store.triples()[0]);
    const Triple extra{a.dict.intern(Term::iri("x")), a.dict.intern(Term::iri("y")),
                       a.dict.intern(Term::iri("z"))};
    other.insert(extra);
    CHECK(a.store.insert(other) == 1);
    CHECK(a.store.size() == 3);
  }
}
