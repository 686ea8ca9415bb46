"""Forward-chaining RDF materialization workbench."""

from ._core import generate, materialize, rule_names, stats, strategies

__all__ = ["generate", "materialize", "rule_names", "stats", "strategies"]
