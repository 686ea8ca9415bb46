#include <doctest.h>

#include "rors/generator.hpp"
#include "test_support.hpp"

using namespace rors;

namespace {

std::string generated_text(const GeneratorConfig& config) {
  ts::Fixture f;
  auto triples = generate_university(f.dict, config);
  return write_ntriples(triples, f.dict, /*sorted=*/false);
}

ts::Fixture materialized_fixture(const GeneratorConfig& config) {
  ts::Fixture f;
  auto triples = generate_university(f.dict, config);
  f.store.insert(std::span<const Triple>(triples));
  return f;
}

}  // namespace

TEST_SUITE("synthetic dataset generator") {
  TEST_CASE("same seed reproduces the dataset byte for byte") {
    GeneratorConfig config;
    config.seed = 42;
    config.size = 3000;
    CHECK(generated_text(config) == generated_text(config));

    GeneratorConfig other = config;
    other.seed = 43;
    CHECK(generated_text(config) != generated_text(other));
  }

  TEST_CASE("requested size is reached, overshooting one campus at most") {
    for (std::size_t size : {500UL, 2000UL, 10000UL}) {
      GeneratorConfig config;
      config.size = size;
      ts::Fixture f;
      auto triples = generate_university(f.dict, config);
      CHECK(triples.size() >= size);
      CHECK(triples.size() <= size + 1200);
    }
  }

  TEST_CASE("class mix is stable at scale") {
    GeneratorConfig config;
    config.size = 10000;
    ts::Fixture f;
    auto triples = generate_university(f.dict, config);
    f.store.insert(std::span<const Triple>(triples));
    auto prop = f.store.class_proportions();
    CHECK(prop.at(TripleClass::kType) >= 17.0);
    CHECK(prop.at(TripleClass::kType) <= 23.0);
    CHECK(prop.at(TripleClass::kSameAs) == 0.0);
    CHECK(prop.at(TripleClass::kSPO) > prop.at(TripleClass::kType));
  }

  TEST_CASE("alias rate is honored within a point") {
    GeneratorConfig config;
    config.size = 10000;
    config.sameas_rate = 0.05;
    for (std::uint64_t seed : {3ULL, 11ULL, 29ULL}) {
      config.seed = seed;
      ts::Fixture f;
      auto triples = generate_university(f.dict, config);
      f.store.insert(std::span<const Triple>(triples));
      auto prop = f.store.class_proportions();
      CHECK(prop.at(TripleClass::kSameAs) >= 4.0);
      CHECK(prop.at(TripleClass::kSameAs) <= 6.0);
    }
  }

  TEST_CASE("schema block declares the property algebra exercised downstream") {
    GeneratorConfig config;
    config.size = 500;
    const std::string text = generated_text(config);
    for (const char* needle :
         {"TransitiveProperty", "FunctionalProperty", "InverseFunctionalProperty",
          "SymmetricProperty", "inverseOf", "hasValue", "someValuesFrom",
          "allValuesFrom", "equivalentClass", "equivalentProperty",
          "subPropertyOf", "domain", "range"}) {
      CAPTURE(needle);
      CHECK(text.find(needle) != std::string::npos);
    }
  }

  TEST_CASE("invalid configurations are rejected") {
    ts::Fixture f;
    GeneratorConfig bad_rate;
    bad_rate.sameas_rate = 0.2;
    CHECK_THROWS_AS(generate_university(f.dict, bad_rate), ConfigError);
    GeneratorConfig negative;
    negative.sameas_rate = -0.01;
    CHECK_THROWS_AS(generate_university(f.dict, negative), ConfigError);
    GeneratorConfig empty;
    empty.size = 0;
    CHECK_THROWS_AS(generate_university(f.dict, empty), ConfigError);
  }

  TEST_CASE("complete modes close generated data identically") {
    GeneratorConfig config;
    config.size = 2000;
    config.sameas_rate = 0.1;

    ts::Fixture fix = materialized_fixture(config);
    RunConfig fixpoint;
    fixpoint.mode = ExecutionMode::kGlobalFixpoint;
    materialize(fix.store, fix.dict, fixpoint);

    ts::Fixture orc = materialized_fixture(config);
    RunConfig oracle;
    oracle.mode = ExecutionMode::kNaiveOracle;
    materialize(orc.store, orc.dict, oracle);

    CHECK(fix.canonical() == orc.canonical());
  }

  TEST_CASE("the restriction feedback chain makes the pipeline loop three times") {
    GeneratorConfig config;
    config.size = 3000;
    ts::Fixture f = materialized_fixture(config);
    ClosureReport report = materialize(f.store, f.dict);
    CHECK(report.outer_iterations == 3);
    CHECK(report.derived_count > 0);
  }
}
