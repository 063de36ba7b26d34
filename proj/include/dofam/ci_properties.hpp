#ifndef DOFAM_CI_PROPERTIES_HPP
#define DOFAM_CI_PROPERTIES_HPP

#include <functional>
#include <string>
#include <vector>

#include "dofam/graph.hpp"
#include "dofam/table.hpp"

namespace dofam {

/// Answers "A independent of B given C" over index sets of a fixed roster.
using CiOracle = std::function<bool(NodeSet, NodeSet, NodeSet)>;
/// less(a, b): a strictly below b.
using StrictOrder = std::function<bool(NodeId, NodeId)>;

enum class CiProperty { intersection, composition, singleton_transitivity, upward_stability, downward_stability };

const char* to_string(CiProperty p);

/// singletons: |A| = |B| = |D| = 1 with any C. full: all disjoint set tuples.
enum class CheckScope { singletons, full };

/// One violated instance. Intersection and composition use A, B, D, C as in
/// "A ⊥ B | C ∪ D"; the singleton properties use A = {i}, B = {j}, D = {k}.
struct CiWitness {
  NodeSet a;
  NodeSet b;
  NodeSet c;
  NodeSet d;
  bool operator==(const CiWitness&) const = default;
};

struct CiReport {
  CiProperty property;
  std::vector<CiWitness> violations;
  bool holds() const { return violations.empty(); }
};

/// Exhaustively checks one property of an abstract CI relation over n variables.
/// The stabilities need an order; other properties ignore it.
CiReport check_property(const CiOracle& indep, std::size_t n, CiProperty property, const StrictOrder& order = {},
                        CheckScope scope = CheckScope::singletons);
CiReport check_property(const JointTable& p, CiProperty property, const StrictOrder& order = {},
                        CheckScope scope = CheckScope::singletons);

/// Intersection and composition together (a compositional graphoid given the semigraphoid rules).
bool has_intersection_and_composition(const CiOracle& indep, std::size_t n, CheckScope scope);

enum class MarkovKind { pairwise, global, converse_pairwise, faithful, adjacency_faithful };

const char* to_string(MarkovKind k);

struct MarkovViolation {
  NodeSet a;
  NodeSet b;
  NodeSet c;
  /// "separated-but-dependent" or "connected-but-independent".
  std::string reason;
};

struct MarkovReport {
  MarkovKind kind;
  std::vector<MarkovViolation> violations;
  bool holds() const { return violations.empty(); }
};

/// Graph separation is sigma-separation on g; indices of `indep` are g's node indices.
MarkovReport markov_check(const CiOracle& indep, const Bdmg& g, MarkovKind kind,
                          CheckScope scope = CheckScope::singletons);
/// Table variables are matched to graph nodes by label.
MarkovReport markov_check(const JointTable& p, const Bdmg& g, MarkovKind kind,
                          CheckScope scope = CheckScope::singletons);

/// CI oracle view of a table (indices are table variable indices).
CiOracle table_oracle(const JointTable& p);

/// Calls f(a, b, c) for every disjoint (A, B, C) with A, B non-empty and min(A) < min(B);
/// singleton scope restricts A and B to single nodes. Stops early if f returns false.
bool for_each_triple(NodeSet all, CheckScope scope, const std::function<bool(NodeSet, NodeSet, NodeSet)>& f);

}  // namespace dofam

#endif
