#include "rors/dependency.hpp"

#include <algorithm>
#include <map>

#include "rors/errors.hpp"

namespace rors {

namespace {

std::pair<RuleId, RuleId> normalize(RuleId a, RuleId b) {
  return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
}

bool position_unifies(const PatternTerm& a, const PatternTerm& b) {
  if (!a.is_var && !b.is_var) return a.term == b.term;
  return true;
}

}  // namespace

bool DependencyGraph::has_edge(RuleId a, RuleId b) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

std::vector<RuleId> DependencyGraph::successors(RuleId a) const {
  std::vector<RuleId> out;
  for (const auto& e : edges)
    if (e.first == a) out.push_back(e.second);
  return out;
}

std::vector<RuleId> DependencyGraph::predecessors(RuleId b) const {
  std::vector<RuleId> out;
  for (const auto& e : edges)
    if (e.second == b) out.push_back(e.first);
  return out;
}

std::vector<std::pair<RuleId, RuleId>> default_exclusions() {
  return {normalize(RuleId::kO3, RuleId::kO7a), normalize(RuleId::kO3, RuleId::kO7b)};
}

bool patterns_unify(const TriplePattern& consequence, const TriplePattern& condition) {
  if (pattern_scope(consequence) != pattern_scope(condition)) return false;
  return position_unifies(consequence.s, condition.s) &&
         position_unifies(consequence.p, condition.p) &&
         position_unifies(consequence.o, condition.o);
}

DependencyGraph build_graph(std::span<const Rule> rules,
                            std::span<const std::pair<RuleId, RuleId>> exclusions) {
  DependencyGraph g;
  for (const Rule& r : rules) g.nodes.push_back(r.id);
  std::sort(g.nodes.begin(), g.nodes.end());
  g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());

  for (const auto& e : exclusions) g.exclusions.push_back(normalize(e.first, e.second));
  std::sort(g.exclusions.begin(), g.exclusions.end());
  g.exclusions.erase(std::unique(g.exclusions.begin(), g.exclusions.end()), g.exclusions.end());

  auto excluded = [&g](RuleId a, RuleId b) {
    return std::binary_search(g.exclusions.begin(), g.exclusions.end(), normalize(a, b));
  };

  for (const Rule& from : rules) {
    for (const Rule& to : rules) {
      if (from.id == to.id || excluded(from.id, to.id)) continue;
      bool connects = false;
      for (const TriplePattern& cons : from.consequences) {
        for (const TriplePattern& cond : to.conditions) {
          if (patterns_unify(cons, cond)) {
            connects = true;
            break;
          }
        }
        if (connects) break;
      }
      if (connects) g.edges.emplace_back(from.id, to.id);
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

DependencyGraph class_graph(RuleClass c) {
  std::vector<Rule> rules;
  for (const Rule& r : catalog())
    if (r.rule_class == c && r.enabled) rules.push_back(r);
  auto excl = default_exclusions();
  return build_graph(rules, excl);
}

namespace {

struct Enumerator {
  const DependencyGraph& g;
  std::optional<std::size_t> limit;
  std::vector<std::vector<int>> out;  // successor indices, sorted
  std::vector<std::uint32_t> in_mask;
  std::vector<std::uint32_t> out_mask;
  std::vector<int> path;
  std::uint32_t path_mask = 0;
  std::vector<Strategy> found;
  bool truncated = false;

  explicit Enumerator(const DependencyGraph& graph, std::optional<std::size_t> lim)
      : g(graph), limit(lim) {
    int n = static_cast<int>(g.nodes.size());
    out.assign(n, {});
    in_mask.assign(n, 0);
    out_mask.assign(n, 0);
    auto index_of = [this](RuleId id) {
      return static_cast<int>(std::lower_bound(g.nodes.begin(), g.nodes.end(), id) - g.nodes.begin());
    };
    for (const auto& e : g.edges) {
      int a = index_of(e.first), b = index_of(e.second);
      out[a].push_back(b);
      out_mask[a] |= 1u << b;
      in_mask[b] |= 1u << a;
    }
  }

  bool full() const { return limit && found.size() >= *limit; }

  void dfs(int v) {
    if (full()) return;
    path.push_back(v);
    path_mask |= 1u << v;
    bool front_closed = (in_mask[path.front()] & ~path_mask) == 0;
    bool back_closed = (out_mask[v] & ~path_mask) == 0;
    if (front_closed && back_closed) {
      Strategy s;
      for (int i : path) s.order.push_back(g.nodes[i]);
      found.push_back(std::move(s));
      if (full()) truncated = true;
    }
    for (int w : out[v]) {
      if (path_mask & (1u << w)) continue;
      dfs(w);
      if (full()) break;
    }
    path_mask &= ~(1u << v);
    path.pop_back();
  }
};

}  // namespace

EnumerationResult enumerate_strategies(const DependencyGraph& g, std::optional<std::size_t> limit) {
  if (g.nodes.size() > 32) throw ConfigError("dependency graph too large to enumerate");
  Enumerator e(g, limit);
  for (int v = 0; v < static_cast<int>(g.nodes.size()); ++v) {
    e.dfs(v);
    if (e.full()) break;
  }
  EnumerationResult result;
  result.strategies = std::move(e.found);
  result.truncated = e.truncated;
  std::sort(result.strategies.begin(), result.strategies.end(),
            [](const Strategy& a, const Strategy& b) {
              if (a.order.size() != b.order.size()) return a.order.size() > b.order.size();
              return a.order < b.order;
            });
  return result;
}

Strategy optimal_order(RuleClass c) {
  using enum RuleId;
  switch (c) {
    case RuleClass::kSchema:
      return {{kO11a, kO11b, kR1, kO11c, kO12a, kO12b, kR2, kO12c}};
    case RuleClass::kSPO:
      return {{kO3, kR3, kO7a, kO7b, kO4}};
    case RuleClass::kType:
      return {{kR4, kR5, kR6, kO14, kO13, kO15, kO16}};
    case RuleClass::kSameAs:
      return {{kO1, kO10, kO2, kO6, kO5}};
  }
  throw ConfigError("unknown rule class");
}

DisplayGroups standard_display_groups(RuleClass c) {
  if (c == RuleClass::kSPO) return {{"O7", {RuleId::kO7a, RuleId::kO7b}}};
  return {};
}

namespace {

std::map<RuleId, std::string> label_map(const DependencyGraph& g, const DisplayGroups& groups) {
  std::map<RuleId, std::string> labels;
  for (RuleId n : g.nodes) labels[n] = to_string(n);
  for (const auto& [label, members] : groups)
    for (RuleId m : members)
      if (labels.count(m)) labels[m] = label;
  return labels;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> collapsed_edges(const DependencyGraph& g,
                                                                 const DisplayGroups& groups) {
  auto labels = label_map(g, groups);
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : g.edges) {
    std::string a = labels.at(e.first), b = labels.at(e.second);
    if (a == b) continue;
    out.emplace_back(std::move(a), std::move(b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string export_dot(const DependencyGraph& g, const DisplayGroups& groups) {
  auto labels = label_map(g, groups);
  std::vector<std::string> nodes;
  for (RuleId n : g.nodes) nodes.push_back(labels.at(n));
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  auto arcs = collapsed_edges(g, groups);
  auto has = [&arcs](const std::string& a, const std::string& b) {
    return std::binary_search(arcs.begin(), arcs.end(), std::make_pair(a, b));
  };

  std::string out = "digraph dependencies {\n";
  for (const auto& n : nodes) out += "  \"" + n + "\";\n";
  for (const auto& [a, b] : arcs) {
    if (has(b, a) && !(a < b)) continue;  // reciprocal pair emitted once
    out += "  \"" + a + "\" -> \"" + b + "\"";
    if (has(b, a)) out += " [dir=both]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace rors
