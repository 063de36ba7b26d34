#ifndef DOFAM_SEPARATION_HPP
#define DOFAM_SEPARATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "dofam/graph.hpp"

namespace dofam {

enum class Criterion { sigma, m, d };

const char* to_string(Criterion c);
Criterion criterion_from_string(const std::string& s);

struct SeparationQuery {
  NodeSet a;
  NodeSet b;
  NodeSet c;
  Criterion criterion = Criterion::sigma;
};

/// Throws PreconditionViolation unless A, B are non-empty and A, B, C pairwise disjoint,
/// and CriterionMismatch if d is used off DAGs or m off ADMGs.
bool separated(const Bdmg& g, const SeparationQuery& q);
bool separated(const Bdmg& g, NodeSet a, NodeSet b, NodeSet c, Criterion criterion = Criterion::sigma);

/// m-connection by reachability over (node, arrowhead-at-node) states.
/// Applies to any graph; callers check the graph class.
bool m_separated_reach(const Bdmg& g, NodeSet a, NodeSet b, NodeSet c);

/// Sigma-separation with the acyclification computed once.
class SigmaSeparator {
 public:
  explicit SigmaSeparator(const Bdmg& g);
  bool operator()(NodeSet a, NodeSet b, NodeSet c) const { return m_separated_reach(acy_, a, b, c); }
  const Bdmg& acyclified() const { return acy_; }

 private:
  Bdmg acy_;
};

/// Kind of the edge between path positions t and t+1.
enum class Step { forward, backward, bidirected };

/// Simple path with one chosen edge per consecutive pair.
struct Path {
  std::vector<NodeId> nodes;
  std::vector<Step> steps;
  auto operator<=>(const Path&) const = default;
};

std::string format_path(const Bdmg& g, const Path& p);

/// First connecting path (depth-first, neighbours in index order) between a and b given c,
/// checked against the raw path definition of the criterion. No graph-class check.
std::optional<Path> find_connecting_path(const Bdmg& g, NodeId a, NodeId b, NodeSet c, Criterion criterion);

/// Sigma-separation by enumerating simple paths on g itself; slow, used as a test oracle.
bool sigma_separated_by_paths(const Bdmg& g, NodeSet a, NodeSet b, NodeSet c);

/// All primitive inducing paths between i and j, sorted lexicographically.
std::vector<Path> find_pips(const Bdmg& g, NodeId i, NodeId j);

enum class EquivalenceScope { singletons, full };

/// Same sigma-separations; g2 is matched to g1 by node label.
bool markov_equivalent(const Bdmg& g1, const Bdmg& g2, EquivalenceScope scope = EquivalenceScope::singletons);

/// For an ancestral g and a separable pair (i, j) with pa({i,j}) within A within an({i,j}),
/// returns whether i and j are m-separated by A. Throws PreconditionViolation otherwise.
bool squeeze_separation_holds(const Bdmg& g, NodeId i, NodeId j, NodeSet a);

}  // namespace dofam

#endif
