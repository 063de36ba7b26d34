#ifndef DOFAM_SCM_HPP
#define DOFAM_SCM_HPP

#include <map>
#include <string>
#include <vector>

#include "dofam/family.hpp"
#include "dofam/graph.hpp"
#include "dofam/table.hpp"

namespace dofam {

/// Lookup-table structural equation: value = table[row-major index over inputs].
/// Inputs are the node's parents (any order) followed by its own noise variable.
struct Mechanism {
  std::vector<std::string> inputs;
  std::vector<std::size_t> table;
  bool operator==(const Mechanism&) const = default;
};

/**
 * Discrete structural causal model over an acyclic graph.
 *
 * Each node owns one noise variable. Noise variables are grouped into components,
 * each with its own joint table; components are independent of each other. A
 * component must gather exactly the noises of one arc-connected set of nodes.
 */
class Scm {
 public:
  Scm(Bdmg graph, std::vector<std::size_t> cards, std::vector<JointTable> noise, std::vector<Mechanism> mechanisms);

  const Bdmg& graph() const { return graph_; }
  std::size_t size() const { return graph_.size(); }
  const std::vector<std::size_t>& cards() const { return cards_; }
  std::size_t card(NodeId i) const { return cards_.at(i); }
  const std::vector<JointTable>& noise() const { return noise_; }
  const std::vector<Mechanism>& mechanisms() const { return mechanisms_; }
  const Mechanism& mechanism(NodeId i) const { return mechanisms_.at(i); }
  /// Variables of the observed joint, in graph order.
  std::vector<Variable> variables() const;

  bool operator==(const Scm&) const = default;

 private:
  Bdmg graph_;
  std::vector<std::size_t> cards_;
  std::vector<JointTable> noise_;
  std::vector<Mechanism> mechanisms_;
};

struct ValidationIssue {
  std::string code;
  std::string witness;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool valid() const { return issues.empty(); }
  std::string summary() const;
};

/// Acyclicity, mechanism totality, and noise structure. The noise check asks, for
/// every pair of disjoint node sets A, B inside one component, that the noises of A
/// and B be independent exactly when no arc joins A and B.
ValidationReport validate(const Scm& scm);

/// Exact pushforward of the noise law through the mechanisms. Throws InvalidScm.
JointTable joint(const Scm& scm);

/// Standard intervention on i: arrows into i and arcs at i are dropped, and X_i is
/// set to a fresh independent noise with law `replacement`.
Scm intervene_standard(const Scm& scm, NodeId i, const std::vector<Rational>& replacement);

/// P_do(i) = joint(intervene_standard(scm, i, override or the X_i marginal of the joint)).
InterventionalFamily standard_family(const Scm& scm, const std::map<NodeId, std::vector<Rational>>& overrides = {});
std::vector<JointTable> standard_family_tables(const Scm& scm,
                                               const std::map<NodeId, std::vector<Rational>>& overrides = {});

/// One kernel per value of the target, each a law over the other roster variables.
struct AtomicKernelSet {
  std::vector<Variable> roster;
  NodeId target = 0;
  std::vector<JointTable> kernels;
  std::vector<Rational> reference;
};

/// The joint law x -> reference(x_target) * kernels[x_target](x_rest).
JointTable atomic_to_family(const AtomicKernelSet& aks);

}  // namespace dofam

#endif
