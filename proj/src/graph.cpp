#include "dofam/graph.hpp"

#include <algorithm>
#include <unordered_set>

#include "dofam/errors.hpp"
#include "dofam/separation.hpp"

namespace dofam {

Bdmg::Bdmg(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxNodes) {
    throw InvalidGraph("too many nodes: " + std::to_string(names_.size()) + " (limit " +
                       std::to_string(kMaxNodes) + ")");
  }
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InvalidGraph("empty node label");
    if (!seen.insert(n).second) throw InvalidGraph("duplicate node label: " + n);
  }
  parents_.assign(names_.size(), {});
  children_.assign(names_.size(), {});
  spouses_.assign(names_.size(), {});
}

Bdmg::Bdmg(std::vector<std::string> names, const std::vector<NodePair>& arrows, const std::vector<NodePair>& arcs)
    : Bdmg(std::move(names)) {
  for (auto [u, v] : arrows) add_arrow(u, v);
  for (auto [u, v] : arcs) add_arc(u, v);
}

Bdmg Bdmg::from_labels(std::vector<std::string> names,
                       const std::vector<std::pair<std::string, std::string>>& arrows,
                       const std::vector<std::pair<std::string, std::string>>& arcs) {
  Bdmg g(std::move(names));
  for (const auto& [u, v] : arrows) g.add_arrow(g.index(u), g.index(v));
  for (const auto& [u, v] : arcs) g.add_arc(g.index(u), g.index(v));
  return g;
}

std::optional<NodeId> Bdmg::find(std::string_view label) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == label) return static_cast<NodeId>(i);
  }
  return std::nullopt;
}

NodeId Bdmg::index(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw UnknownLabel(std::string(label));
}

void Bdmg::check_node(NodeId i) const {
  if (i >= names_.size()) throw UnknownLabel("#" + std::to_string(i));
}

NodeSet Bdmg::parents(NodeSet a) const {
  NodeSet out;
  for (NodeId j : a) out |= parents_[j];
  return out - a;
}

std::vector<NodePair> Bdmg::arrows() const {
  std::vector<NodePair> out;
  for (NodeId u = 0; u < size(); ++u) {
    for (NodeId v : children_[u]) out.emplace_back(u, v);
  }
  return out;
}

std::vector<NodePair> Bdmg::arcs() const {
  std::vector<NodePair> out;
  for (NodeId u = 0; u < size(); ++u) {
    for (NodeId v : spouses_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::size_t Bdmg::arrow_count() const {
  std::size_t n = 0;
  for (auto c : children_) n += c.size();
  return n;
}

std::size_t Bdmg::arc_count() const {
  std::size_t n = 0;
  for (auto s : spouses_) n += s.size();
  return n / 2;
}

void Bdmg::add_arrow(NodeId from, NodeId to) {
  check_node(from);
  check_node(to);
  if (from == to) throw InvalidGraph("self-loop at " + names_[from]);
  if (!bows_allowed_ && has_arc(from, to)) throw InvalidGraph("bow between " + names_[from] + " and " + names_[to]);
  children_[from].insert(to);
  parents_[to].insert(from);
}

void Bdmg::add_arc(NodeId a, NodeId b) {
  check_node(a);
  check_node(b);
  if (a == b) throw InvalidGraph("self-loop at " + names_[a]);
  if (!bows_allowed_ && arrow_adjacent(a, b)) throw InvalidGraph("bow between " + names_[a] + " and " + names_[b]);
  spouses_[a].insert(b);
  spouses_[b].insert(a);
}

void Bdmg::remove_arrow(NodeId from, NodeId to) {
  check_node(from);
  check_node(to);
  children_[from].erase(to);
  parents_[to].erase(from);
}

void Bdmg::remove_arc(NodeId a, NodeId b) {
  check_node(a);
  check_node(b);
  spouses_[a].erase(b);
  spouses_[b].erase(a);
}

Bdmg Bdmg::intervened(NodeId i) const {
  check_node(i);
  Bdmg g = *this;
  for (NodeId p : parents_[i]) g.remove_arrow(p, i);
  for (NodeId s : spouses_[i]) g.remove_arc(i, s);
  return g;
}

Bdmg Bdmg::without_arcs() const {
  Bdmg g = *this;
  for (auto& s : g.spouses_) s = {};
  return g;
}

namespace {

// Nodes reachable from `start` by following `next` one or more times.
NodeSet reach(const std::vector<NodeSet>& next, NodeSet start) {
  NodeSet seen;
  NodeSet frontier;
  for (NodeId s : start) frontier |= next[s];
  while (!frontier.empty()) {
    NodeId v = frontier.first();
    frontier.erase(v);
    if (seen.contains(v)) continue;
    seen.insert(v);
    frontier |= next[v] - seen;
  }
  return seen;
}

std::vector<NodeSet> parent_lists(const Bdmg& g) {
  std::vector<NodeSet> out(g.size());
  for (NodeId i = 0; i < g.size(); ++i) out[i] = g.parents(i);
  return out;
}

std::vector<NodeSet> child_lists(const Bdmg& g) {
  std::vector<NodeSet> out(g.size());
  for (NodeId i = 0; i < g.size(); ++i) out[i] = g.children(i);
  return out;
}

}  // namespace

NodeSet ancestors(const Bdmg& g, NodeId j) {
  if (j >= g.size()) throw UnknownLabel("#" + std::to_string(j));
  return reach(parent_lists(g), NodeSet::single(j)).without(j);
}

NodeSet ancestors(const Bdmg& g, NodeSet a) {
  if (!a.subset_of(g.nodes())) throw UnknownLabel("node set outside roster");
  return reach(parent_lists(g), a) - a;
}

NodeSet descendants(const Bdmg& g, NodeId j) {
  if (j >= g.size()) throw UnknownLabel("#" + std::to_string(j));
  return reach(child_lists(g), NodeSet::single(j)).without(j);
}

NodeSet strong_component(const Bdmg& g, NodeId i) {
  return (ancestors(g, i) & descendants(g, i)).with(i);
}

std::vector<NodeSet> strong_components(const Bdmg& g) {
  std::vector<NodeSet> out;
  NodeSet covered;
  for (NodeId i = 0; i < g.size(); ++i) {
    if (covered.contains(i)) continue;
    NodeSet sc = strong_component(g, i);
    covered |= sc;
    out.push_back(sc);
  }
  return out;
}

Bdmg acyclify(const Bdmg& g) {
  const std::size_t n = g.size();
  std::vector<NodeSet> sc(n);
  for (NodeId i = 0; i < n; ++i) sc[i] = strong_component(g, i);

  Bdmg out(g.names());
  out.bows_allowed_ = true;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j : g.parents(sc[i])) out.add_arrow(j, i);
  }
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      bool joined = !sc[i].disjoint(sc[j]);
      for (NodeId a : sc[i]) {
        if (joined) break;
        joined = !g.spouses(a).disjoint(sc[j]);
      }
      if (joined) out.add_arc(i, j);
    }
  }
  return out;
}

bool is_acyclic(const Bdmg& g) {
  auto pa = parent_lists(g);
  for (NodeId i = 0; i < g.size(); ++i) {
    if (reach(pa, NodeSet::single(i)).contains(i)) return false;
  }
  return true;
}

bool is_dag(const Bdmg& g) { return g.arc_count() == 0 && is_acyclic(g); }

bool is_ancestral(const Bdmg& g) {
  if (!is_acyclic(g)) return false;
  for (auto [a, b] : g.arcs()) {
    if (ancestors(g, a).contains(b) || ancestors(g, b).contains(a)) return false;
  }
  return true;
}

std::vector<NodePair> inseparable_pairs(const Bdmg& g) {
  SigmaSeparator sep(g);
  std::vector<NodePair> out;
  const NodeSet all = g.nodes();
  for (NodeId i = 0; i < g.size(); ++i) {
    for (NodeId j = i + 1; j < g.size(); ++j) {
      if (g.adjacent(i, j)) continue;
      const NodeSet a = NodeSet::single(i);
      const NodeSet b = NodeSet::single(j);
      bool separable = any_subset(all - a - b, [&](NodeSet c) { return sep(a, b, c); });
      if (!separable) out.emplace_back(i, j);
    }
  }
  return out;
}

bool is_maximal(const Bdmg& g) { return inseparable_pairs(g).empty(); }

GraphClassification classify(const Bdmg& g) {
  GraphClassification c;
  c.is_valid_bdmg = true;
  for (NodeId i = 0; i < g.size(); ++i) {
    if (g.parents(i).contains(i) || g.spouses(i).contains(i)) c.is_valid_bdmg = false;
    if (!(g.parents(i) | g.children(i)).disjoint(g.spouses(i))) c.is_valid_bdmg = false;
  }
  c.is_admg = is_acyclic(g);
  c.is_dag = c.is_admg && g.arc_count() == 0;
  c.is_ancestral = is_ancestral(g);
  c.inseparable_pairs = inseparable_pairs(g);
  c.is_maximal = c.inseparable_pairs.empty();
  // Arrows generate the order; arcs demand incomparability. Both hold exactly
  // when the transitive closure is irreflexive and no arc joins comparable nodes.
  if (c.is_ancestral) c.valid_order = g.arrows();
  return c;
}

AncestralOrder::AncestralOrder(const Bdmg& g) : an_(g.size()) {
  for (NodeId i = 0; i < g.size(); ++i) an_[i] = ancestors(g, i);
}

}  // namespace dofam
