"""End-to-end smoke tests for the Python bindings."""

import json

import pytest

import rors

SUBCLASS = "<http://www.w3.org/2000/01/rdf-schema#subClassOf>"
CHAIN = (
    f"<http://example.org/A> {SUBCLASS} <http://example.org/B> .\n"
    f"<http://example.org/B> {SUBCLASS} <http://example.org/C> .\n"
)


def test_rule_names_cover_the_catalog():
    names = rors.rule_names()
    assert len(names) == 27
    for needle in ("R1", "R6", "O1", "O7a", "O7b", "O11c", "O16"):
        assert needle in names


def test_materialize_closes_a_subclass_chain():
    closure, report = rors.materialize(CHAIN, mode="fixpoint")
    lines = [line for line in closure.splitlines() if line]
    assert len(lines) == 3
    assert f"<http://example.org/A> {SUBCLASS} <http://example.org/C> ." in lines

    data = json.loads(report)
    assert data["mode"] == "fixpoint"
    assert data["input_count"] == 2
    assert data["output_count"] == 3
    assert data["derived_count"] == 1


def test_materialize_output_is_sorted_and_stable():
    first, _ = rors.materialize(CHAIN)
    second, _ = rors.materialize(CHAIN)
    assert first == second
    lines = [line for line in first.splitlines() if line]
    assert lines == sorted(lines)


def test_generate_is_deterministic_and_materializable():
    text = rors.generate(seed=7, size=2000, sameas_rate=0.05)
    assert text == rors.generate(seed=7, size=2000, sameas_rate=0.05)
    assert text != rors.generate(seed=8, size=2000, sameas_rate=0.05)

    closure, report = rors.materialize(text, mode="fixpoint", workers=2)
    data = json.loads(report)
    assert data["derived_count"] > 0
    assert len([line for line in closure.splitlines() if line]) == data["output_count"]


def test_stats_report_instance_shares():
    stats = rors.stats(rors.generate(seed=42, size=10000, sameas_rate=0.1))
    assert stats["total"] >= 10000
    assert stats["schema"] > 0
    assert stats["type_pct"] == pytest.approx(20.055, abs=3.0)
    assert stats["sameas_pct"] > 0
    assert stats["type_pct"] + stats["sameas_pct"] + stats["spo_pct"] == pytest.approx(100.0)


def test_strategies_include_the_canonical_plain_fact_order():
    orders = rors.strategies("spo")
    assert ["O3", "R3", "O7a", "O7b", "O4"] in orders
    assert all(len(order) == len(set(order)) for order in orders)

    limited = rors.strategies("type", limit=2)
    assert len(limited) <= 2


def test_errors_surface_as_runtime_errors():
    with pytest.raises(RuntimeError):
        rors.materialize(CHAIN, mode="sideways")
    with pytest.raises(RuntimeError):
        rors.strategies("nope")
    with pytest.raises(RuntimeError):
        rors.materialize("this is not a triple\n")
