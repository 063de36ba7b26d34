#ifndef DOFAM_DERIVE_HPP
#define DOFAM_DERIVE_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dofam/family.hpp"
#include "dofam/graph.hpp"
#include "dofam/separation.hpp"

namespace dofam {

enum class DeriveMode { iterative, ancestral_shortcut };
enum class ArcRule { standard, every_c };
enum class ArcPolicy { every_i, some_i };

const char* to_string(DeriveMode m);
const char* to_string(ArcRule r);
const char* to_string(ArcPolicy p);
DeriveMode derive_mode_from_string(const std::string& s);
ArcRule arc_rule_from_string(const std::string& s);
ArcPolicy arc_policy_from_string(const std::string& s);

using Triple = std::array<NodeId, 3>;

struct CauseRelations {
  /// cause[k]: nodes i != k with i dependent on k after intervening on i.
  std::vector<NodeSet> cause;
  /// eff[i] = {k : i in cause[k]}.
  std::vector<NodeSet> eff;
  /// cc[i]: i together with the nodes that are both causes and effects of i.
  std::vector<NodeSet> cc;
  /// above[i] = {k : k causes i and i does not cause k}; i sits strictly below each.
  std::vector<NodeSet> above;

  /// cause(A) = union of cause[k] over k in A, minus A.
  NodeSet cause_of(NodeSet a) const;
};

CauseRelations cause_relations(const InterventionalFamily& fam);

struct TransitivityReport {
  bool axiom_holds = true;
  /// (i, j, k) with i causing j, j causing k, and i not causing k.
  std::vector<Triple> violations;
  /// Whether every source could be checked for singleton-transitivity (needs a table).
  bool singleton_transitivity_checked = false;
  std::string unavailable_reason;
  std::vector<NodeId> not_singleton_transitive;
  /// (i, j, k) with i not causing k, j causing k, failing the stated requirement.
  std::vector<Triple> condition_a_failures;  // i independent of k given j under do(i)
  std::vector<Triple> condition_b_failures;  // j dependent on k under do(i)

  bool sufficient_conditions_hold() const {
    return singleton_transitivity_checked && not_singleton_transitive.empty() && condition_a_failures.empty() &&
           condition_b_failures.empty();
  }
};

TransitivityReport check_transitivity(const InterventionalFamily& fam);
/// Only the transitivity axiom, without the sufficient conditions.
bool is_transitive(const CauseRelations& rel);

struct CausalDerivation {
  DeriveMode mode = DeriveMode::iterative;
  CauseRelations relations;
  std::vector<NodeSet> dcause;
  /// icause[i][k]: ancestors of k once arrows into i are removed from S.
  std::vector<std::vector<NodeSet>> icause;
  Bdmg s;
  std::vector<Bdmg> s_i;
  std::vector<Bdmg> g_i;
  Bdmg g;
  std::size_t rounds = 0;
  /// S after each round.
  std::vector<Bdmg> trace;

  const std::vector<NodeSet>& cause() const { return relations.cause; }
  /// icause_i(A) = union of icause[i][k] over k in A, minus A.
  NodeSet icause_of(NodeId i, NodeSet a) const;
};

/// Runs the direct-cause fixed point and builds S, S_i, G_i and G.
/// Shortcut mode throws PreconditionViolation when the resulting G is not ancestral.
CausalDerivation derive(const InterventionalFamily& fam, DeriveMode mode = DeriveMode::iterative);

/// Causal graph under a chosen arc rule and aggregation policy; standard/every_i equals d.g.
Bdmg derive_variants(const InterventionalFamily& fam, const CausalDerivation& d, ArcRule rule, ArcPolicy policy);
/// The arc-augmented graph for one intervention under the every-C rule: arc j<->k when
/// j and k stay dependent under do(i) given every C avoiding j and k.
Bdmg intervened_graph_every_c(const InterventionalFamily& fam, const CausalDerivation& d, NodeId i);

/// Arrows of S plus arcs j<->k (not arrow-adjacent) with j dependent on k given cause({j,k}) under p.
Bdmg graph_from_observation(const InterventionalFamily& fam, const CausalDerivation& d, const JointTable& p);
Bdmg graph_from_observation(const InterventionalFamily& fam, const JointTable& p);

enum class PipOutcome { removed, kept, unresolved };
const char* to_string(PipOutcome o);

struct PipEntry {
  NodeId from = 0;
  NodeId to = 0;
  /// true for an arc of G, false for an arrow of S.
  bool arc = false;
  std::vector<Path> pips;
  PipOutcome outcome = PipOutcome::kept;
  /// Inner nodes whose intervention was tested, and those that gave independence.
  std::vector<NodeId> tested;
  std::vector<NodeId> separating;
};

struct PipAdjustment {
  std::vector<NodeSet> dcause;
  Bdmg s;
  std::vector<PipEntry> entries;
  std::vector<NodePair> unresolved;
};

/// Re-examines arrows of S whose endpoints are joined by primitive inducing paths in G_i,
/// and arcs of G joined by several such paths in G.
PipAdjustment pip_adjust(const InterventionalFamily& fam, const CausalDerivation& d);

}  // namespace dofam

#endif
