#ifndef DOFAM_AXIOMS_HPP
#define DOFAM_AXIOMS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dofam/derive.hpp"
#include "dofam/family.hpp"
#include "dofam/table.hpp"

namespace dofam {

using Witness = std::map<std::string, std::string>;

struct AxiomReport {
  std::string axiom;
  /// The first violations in canonical order; `count` holds the full number.
  std::vector<Witness> witnesses;
  std::size_t count = 0;
  std::vector<std::string> skipped;

  bool holds() const { return count == 0 && skipped.empty(); }
  void add(Witness w);
};

/// At most this many witnesses are kept per report.
inline constexpr std::size_t kMaxWitnesses = 64;

/// Observational axiom: each intervention independence implies the matching
/// independence in p. Clause a runs over separable pairs of the causal graph.
AxiomReport check_observable(const InterventionalFamily& fam, const JointTable& p);
AxiomReport check_observable(const InterventionalFamily& fam, const CausalDerivation& d, const JointTable& p);

/// The converse implications, over all distinct triples.
AxiomReport check_strongly_observable(const InterventionalFamily& fam, const JointTable& p);
AxiomReport check_strongly_observable(const InterventionalFamily& fam, const CausalDerivation& d,
                                      const JointTable& p);

/// Same support of each P_do(i) and p on cause(k) + k, for all distinct i, k.
AxiomReport check_compatible(const InterventionalFamily& fam, const JointTable& p);

/// Conditional law of X_k matches between P_do(i) and p, on positive contexts.
/// Throws Incompatible when the family is not compatible with p.
AxiomReport check_quantifiable(const InterventionalFamily& fam, const JointTable& p);

/// P_do(i)(x_k | x_cause(k)) equals p(x_k | x_cause(k)) for all distinct i, k, on positive contexts.
/// A consequence of quantifiability that no longer mentions x_i.
AxiomReport check_cause_conditionals(const InterventionalFamily& fam, const JointTable& p);

/// Which pairs the bivariate check visits.
enum class PairScope {
  /// Pairs {j, k} where neither causes the other.
  causally_unrelated,
  /// Every pair; an audit beyond what the axiom asks.
  all_pairs,
};

/// Joint law of (X_j, X_k) matches between P_do(i) and p, on positive contexts.
/// Throws Incompatible when the family is not compatible with p.
AxiomReport check_bivariate_quantifiable(const InterventionalFamily& fam, const JointTable& p,
                                         PairScope scope = PairScope::causally_unrelated);

/// Every arrow i->j of g is a direct cause: i dependent on j under do(i), also given icause_i(j) minus i.
AxiomReport check_edge_cause(const InterventionalFamily& fam, const Bdmg& g);

/// Same causes, and every dcause test and arc test agrees between the two families.
AxiomReport check_congruent(const InterventionalFamily& a, const InterventionalFamily& b);

struct Reconstruction {
  JointTable p_hat;
  /// Which intervention each X_k conditional was read from.
  std::vector<NodeId> source_of;
  std::optional<bool> matches_reference;
  /// Hypotheses that fail on the reference law, checked only when it does not match.
  std::vector<std::string> failed_hypotheses;
};

/// Product over k of P_do(i_k)(x_k | x_cause(k)) for a DAG causal graph, i_k the first node other than k.
/// Throws PreconditionViolation when the graph is not a DAG or a needed context has no mass.
Reconstruction reconstruct_p(const InterventionalFamily& fam, const CausalDerivation& d,
                             const std::optional<JointTable>& reference = std::nullopt);

}  // namespace dofam

#endif
