#ifndef DOFAM_TABLE_HPP
#define DOFAM_TABLE_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "dofam/node_set.hpp"
#include "dofam/rational.hpp"

namespace dofam {

struct Variable {
  std::string name;
  std::size_t card = 1;
  bool operator==(const Variable&) const = default;
};

/// One value per table variable, in table order.
using Assignment = std::vector<std::size_t>;

/// Unnormalized marginal over a subset of a table's variables.
/// Weights share the parent table's common denominator, so ratios are exact probabilities.
struct MarginalWeights {
  NodeSet vars;
  std::vector<std::size_t> strides;  // per table variable; zero outside `vars`
  std::vector<mpz_class> weight;
  mpz_class total;

  /// Index of the sub-cell picked out by a full assignment (entries outside `vars` ignored).
  std::size_t index(const Assignment& x) const {
    std::size_t k = 0;
    for (NodeId v : vars) k += x[v] * strides[v];
    return k;
  }
  const mpz_class& at(const Assignment& x) const { return weight[index(x)]; }
};

/**
 * Exact joint distribution over named finite variables.
 *
 * Probabilities are rationals laid out row-major with the last variable fastest.
 * Construction checks that entries are non-negative and sum to exactly one.
 */
class JointTable {
 public:
  JointTable() = default;
  JointTable(std::vector<Variable> vars, std::vector<Rational> probs);

  static JointTable uniform(std::vector<Variable> vars);
  /// Independent product; variables of `a` come first.
  static JointTable product(const JointTable& a, const JointTable& b);

  const std::vector<Variable>& variables() const { return vars_; }
  std::size_t var_count() const { return vars_.size(); }
  std::size_t cell_count() const { return probs_.size(); }
  const std::vector<Rational>& probs() const { return probs_; }
  const Rational& prob(std::size_t cell) const { return probs_[cell]; }
  Rational prob(const Assignment& x) const { return probs_[encode(x)]; }
  std::vector<std::string> names() const;

  std::size_t var_index(const std::string& label) const;
  bool has_var(const std::string& label) const;
  NodeSet var_set(const std::vector<std::string>& labels) const;

  Assignment decode(std::size_t cell) const;
  std::size_t encode(const Assignment& x) const;

  MarginalWeights marginal_weights(NodeSet keep) const;
  /// Marginal table over `keep`, variables in table order.
  JointTable marginal(NodeSet keep) const;
  JointTable marginal(const std::vector<std::string>& labels) const;

  /// X_A independent of X_B given X_C, over contexts with positive probability.
  bool independent(NodeSet a, NodeSet b, NodeSet c) const;

  /// Distribution of the remaining variables given X_on = values (full assignment,
  /// entries outside `on` ignored); nullopt when the context has probability zero.
  std::optional<JointTable> condition(NodeSet on, const Assignment& values) const;

  /// Same law with variables permuted into `order` (a permutation of the labels).
  JointTable reordered(const std::vector<std::string>& order) const;

  /// Cells with positive probability, projected on `keep`, as a sorted index list.
  std::vector<std::size_t> support(NodeSet keep) const;

  bool operator==(const JointTable& o) const { return vars_ == o.vars_ && probs_ == o.probs_; }

 private:
  std::vector<Variable> vars_;
  std::vector<std::size_t> strides_;
  std::vector<Rational> probs_;
  std::vector<mpz_class> weights_;  // probs_ times a common denominator
  mpz_class scale_;
};

/// Label-based form of JointTable::independent.
bool ci(const JointTable& p, const std::vector<std::string>& a, const std::vector<std::string>& b,
        const std::vector<std::string>& c);

/// Calls f(x) for every assignment of the variables in `vars`, other entries held at zero.
template <class F>
void for_each_assignment(const std::vector<Variable>& all, NodeSet vars, F&& f) {
  Assignment x(all.size(), 0);
  const std::vector<NodeId> order = vars.to_vector();
  while (true) {
    f(static_cast<const Assignment&>(x));
    // odometer, last variable fastest
    std::size_t k = order.size();
    while (k > 0) {
      const NodeId v = order[k - 1];
      if (++x[v] < all[v].card) break;
      x[v] = 0;
      --k;
    }
    if (k == 0) return;
  }
}

}  // namespace dofam

#endif
