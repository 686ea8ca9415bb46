#ifndef RORS_DEPENDENCY_HPP
#define RORS_DEPENDENCY_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rors/rule.hpp"

namespace rors {

// Directed rule dependency graph. Edge (i -> j) means a consequence pattern
// of i can produce a triple that a condition pattern of j reads: the
// patterns' partition scopes agree and every position unifies (two constants
// must be equal, a variable matches anything). Self-edges are not recorded;
// excluded pairs are suppressed in both directions.
struct DependencyGraph {
  std::vector<RuleId> nodes;                         // sorted
  std::vector<std::pair<RuleId, RuleId>> edges;      // sorted (i, j) arcs
  std::vector<std::pair<RuleId, RuleId>> exclusions; // normalized unordered pairs

  bool has_edge(RuleId a, RuleId b) const;
  std::vector<RuleId> successors(RuleId a) const;
  std::vector<RuleId> predecessors(RuleId b) const;
};

// Symmetric-vs-inverse interaction suppressed on domain grounds.
std::vector<std::pair<RuleId, RuleId>> default_exclusions();

bool patterns_unify(const TriplePattern& consequence, const TriplePattern& condition);

DependencyGraph build_graph(std::span<const Rule> rules,
                            std::span<const std::pair<RuleId, RuleId>> exclusions);

// Convenience: graph over the enabled rules of one class with the default
// exclusions applied.
DependencyGraph class_graph(RuleClass c);

// An execution order: a simple path through the dependency graph.
struct Strategy {
  std::vector<RuleId> order;

  bool operator==(const Strategy& o) const { return order == o.order; }
};

struct EnumerationResult {
  std::vector<Strategy> strategies;  // length-descending, then lexicographic
  bool truncated = false;
};

// All maximal simple paths: simple paths that cannot be extended by
// prepending or appending an edge. In an edgeless graph every node is its
// own length-1 path. With a limit, enumeration stops once that many paths
// were collected and the result is flagged truncated.
EnumerationResult enumerate_strategies(const DependencyGraph& g,
                                       std::optional<std::size_t> limit = std::nullopt);

// The per-class execution orders the executor runs by default.
Strategy optimal_order(RuleClass c);

// Display groups: rule variants rendered as one node (O7a/O7b as O7).
using DisplayGroups = std::vector<std::pair<std::string, std::vector<RuleId>>>;
DisplayGroups standard_display_groups(RuleClass c);

// Edge set after collapsing grouped nodes to their labels; collapse-induced
// self-edges are dropped. Pairs are sorted and unique.
std::vector<std::pair<std::string, std::string>> collapsed_edges(const DependencyGraph& g,
                                                                 const DisplayGroups& groups);

// Graphviz rendering. Reciprocal arcs are folded into one dir=both edge;
// output is deterministically ordered.
std::string export_dot(const DependencyGraph& g, const DisplayGroups& groups = {});

}  // namespace rors

#endif
