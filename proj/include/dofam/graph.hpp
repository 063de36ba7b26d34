#ifndef DOFAM_GRAPH_HPP
#define DOFAM_GRAPH_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dofam/node_set.hpp"

namespace dofam {

using NodePair = std::pair<NodeId, NodeId>;

/**
 * Bowless directed mixed graph: arrows i->j and arcs i<->j over a named roster.
 *
 * Self-loops and bows (an arc together with an arrow on the same pair) are
 * rejected. Opposite arrows i->j and j->i may coexist. The one exception is the
 * output of acyclify, which may carry bows and is marked by bows_allowed().
 */
class Bdmg {
 public:
  Bdmg() = default;
  explicit Bdmg(std::vector<std::string> names);
  Bdmg(std::vector<std::string> names, const std::vector<NodePair>& arrows, const std::vector<NodePair>& arcs);

  /// Builds from label pairs; throws UnknownLabel on labels missing from the roster.
  static Bdmg from_labels(std::vector<std::string> names,
                          const std::vector<std::pair<std::string, std::string>>& arrows,
                          const std::vector<std::pair<std::string, std::string>>& arcs);

  std::size_t size() const { return names_.size(); }
  NodeSet nodes() const { return NodeSet::range(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(NodeId i) const { return names_.at(i); }
  NodeId index(std::string_view label) const;
  std::optional<NodeId> find(std::string_view label) const;

  NodeSet parents(NodeId i) const { return parents_[i]; }
  NodeSet children(NodeId i) const { return children_[i]; }
  NodeSet spouses(NodeId i) const { return spouses_[i]; }
  /// Parents of a set, minus the set itself.
  NodeSet parents(NodeSet a) const;

  bool has_arrow(NodeId from, NodeId to) const { return children_[from].contains(to); }
  bool has_arc(NodeId a, NodeId b) const { return spouses_[a].contains(b); }
  bool adjacent(NodeId a, NodeId b) const { return has_arrow(a, b) || has_arrow(b, a) || has_arc(a, b); }
  bool arrow_adjacent(NodeId a, NodeId b) const { return has_arrow(a, b) || has_arrow(b, a); }

  /// Arrows sorted by (from, to).
  std::vector<NodePair> arrows() const;
  /// Arcs as (smaller, larger) sorted pairs.
  std::vector<NodePair> arcs() const;
  std::size_t arrow_count() const;
  std::size_t arc_count() const;

  void add_arrow(NodeId from, NodeId to);
  void add_arc(NodeId a, NodeId b);
  void remove_arrow(NodeId from, NodeId to);
  void remove_arc(NodeId a, NodeId b);

  /// Removes every arrow into i and every arc at i.
  Bdmg intervened(NodeId i) const;
  Bdmg without_arcs() const;

  /// True only for acyclifications.
  bool bows_allowed() const { return bows_allowed_; }

  bool operator==(const Bdmg&) const = default;

 private:
  void check_node(NodeId i) const;

  std::vector<std::string> names_;
  std::vector<NodeSet> parents_;
  std::vector<NodeSet> children_;
  std::vector<NodeSet> spouses_;
  bool bows_allowed_ = false;

  friend Bdmg acyclify(const Bdmg& g);
};


/// an(j): nodes with a directed path of length >= 1 into j. j itself is never included.
NodeSet ancestors(const Bdmg& g, NodeId j);
/// an(A) = union of an(j) over j in A, minus A.
NodeSet ancestors(const Bdmg& g, NodeSet a);
/// de(j): nodes reachable from j by a directed path of length >= 1, minus j.
NodeSet descendants(const Bdmg& g, NodeId j);
/// sc(i): i together with every node that is both an ancestor and a descendant of i.
NodeSet strong_component(const Bdmg& g, NodeId i);
/// Distinct strongly connected components, ordered by smallest member.
std::vector<NodeSet> strong_components(const Bdmg& g);

/// The acyclification: arrow j->i iff j in pa(sc(i)) \ sc(i); arc i<->j iff
/// sc(i) and sc(j) share a node or are joined by an arc.
Bdmg acyclify(const Bdmg& g);

bool is_acyclic(const Bdmg& g);
inline bool is_admg(const Bdmg& g) { return is_acyclic(g); }
bool is_dag(const Bdmg& g);
/// Acyclic, and no arc joins a node to one of its ancestors.
bool is_ancestral(const Bdmg& g);

struct GraphClassification {
  bool is_valid_bdmg = true;
  bool is_dag = false;
  bool is_admg = false;
  bool is_ancestral = false;
  bool is_maximal = false;
  std::vector<NodePair> inseparable_pairs;
  /// Cover relations (greater, lesser) of the generated order, present iff one exists.
  std::optional<std::vector<NodePair>> valid_order;
};

GraphClassification classify(const Bdmg& g);

/// Non-adjacent pairs (i < j) not sigma-separated by any subset of the other nodes.
std::vector<NodePair> inseparable_pairs(const Bdmg& g);
bool is_maximal(const Bdmg& g);

/// Strict order induced by a graph: greater(a, b) iff a is an ancestor of b.
/// Only a strict order when the graph is acyclic.
class AncestralOrder {
 public:
  explicit AncestralOrder(const Bdmg& g);
  bool greater(NodeId a, NodeId b) const { return an_[b].contains(a); }
  bool less(NodeId a, NodeId b) const { return greater(b, a); }
  bool comparable(NodeId a, NodeId b) const { return greater(a, b) || greater(b, a); }

 private:
  std::vector<NodeSet> an_;
};

}  // namespace dofam

#endif
