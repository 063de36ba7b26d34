#include "dofam/table.hpp"

#include <algorithm>
#include <unordered_set>

#include "dofam/errors.hpp"

namespace dofam {

JointTable::JointTable(std::vector<Variable> vars, std::vector<Rational> probs)
    : vars_(std::move(vars)), probs_(std::move(probs)) {
  if (vars_.size() > kMaxNodes) throw InvalidTable("too many variables");
  std::unordered_set<std::string> seen;
  std::size_t cells = 1;
  for (const auto& v : vars_) {
    if (v.name.empty()) throw InvalidTable("empty variable label");
    if (!seen.insert(v.name).second) throw InvalidTable("duplicate variable " + v.name);
    if (v.card == 0) throw InvalidTable("variable " + v.name + " has cardinality 0");
    if (cells > (std::size_t{1} << 26) / v.card) throw InvalidTable("table too large");
    cells *= v.card;
  }
  if (probs_.size() != cells) {
    throw InvalidTable("expected " + std::to_string(cells) + " probabilities, got " + std::to_string(probs_.size()));
  }
  strides_.assign(vars_.size(), 1);
  for (std::size_t k = vars_.size(); k-- > 1;) strides_[k - 1] = strides_[k] * vars_[k].card;

  Rational sum = 0;
  scale_ = 1;
  for (auto& p : probs_) {
    p.canonicalize();
    if (p < 0) throw InvalidTable("negative probability " + format_rational(p));
    sum += p;
    mpz_lcm(scale_.get_mpz_t(), scale_.get_mpz_t(), p.get_den_mpz_t());
  }
  if (sum != 1) throw InvalidTable("probabilities sum to " + format_rational(sum) + ", not 1");
  weights_.resize(probs_.size());
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    weights_[k] = probs_[k].get_num() * (scale_ / probs_[k].get_den());
  }
}

JointTable JointTable::uniform(std::vector<Variable> vars) {
  std::size_t cells = 1;
  for (const auto& v : vars) cells *= v.card;
  return JointTable(std::move(vars), std::vector<Rational>(cells, Rational(1, static_cast<unsigned long>(cells))));
}

JointTable JointTable::product(const JointTable& a, const JointTable& b) {
  std::vector<Variable> vars = a.vars_;
  vars.insert(vars.end(), b.vars_.begin(), b.vars_.end());
  std::vector<Rational> probs;
  probs.reserve(a.cell_count() * b.cell_count());
  for (const auto& p : a.probs_) {
    for (const auto& q : b.probs_) probs.push_back(p * q);
  }
  return JointTable(std::move(vars), std::move(probs));
}

std::vector<std::string> JointTable::names() const {
  std::vector<std::string> out;
  for (const auto& v : vars_) out.push_back(v.name);
  return out;
}

bool JointTable::has_var(const std::string& label) const {
  for (const auto& v : vars_) {
    if (v.name == label) return true;
  }
  return false;
}

std::size_t JointTable::var_index(const std::string& label) const {
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    if (vars_[k].name == label) return k;
  }
  throw UnknownLabel(label);
}

NodeSet JointTable::var_set(const std::vector<std::string>& labels) const {
  NodeSet s;
  for (const auto& l : labels) s.insert(static_cast<NodeId>(var_index(l)));
  return s;
}

Assignment JointTable::decode(std::size_t cell) const {
  Assignment x(vars_.size());
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    x[k] = (cell / strides_[k]) % vars_[k].card;
  }
  return x;
}

std::size_t JointTable::encode(const Assignment& x) const {
  std::size_t cell = 0;
  for (std::size_t k = 0; k < vars_.size(); ++k) cell += x[k] * strides_[k];
  return cell;
}

MarginalWeights JointTable::marginal_weights(NodeSet keep) const {
  if (!keep.subset_of(NodeSet::range(vars_.size()))) throw UnknownLabel("variable index outside table");
  MarginalWeights m;
  m.vars = keep;
  m.strides.assign(vars_.size(), 0);
  std::size_t size = 1;
  const auto order = keep.to_vector();
  for (std::size_t k = order.size(); k-- > 0;) {
    m.strides[order[k]] = size;
    size *= vars_[order[k]].card;
  }
  m.weight.assign(size, 0);
  m.total = scale_;
  if (keep.empty()) {
    m.weight[0] = scale_;
    return m;
  }
  // Map every cell to its sub-index with an odometer; cheaper than decoding each cell.
  Assignment x(vars_.size(), 0);
  std::size_t sub = 0;
  for (std::size_t cell = 0; cell < probs_.size(); ++cell) {
    if (sgn(weights_[cell]) != 0) m.weight[sub] += weights_[cell];
    for (std::size_t k = vars_.size(); k-- > 0;) {
      sub += m.strides[k];
      if (++x[k] < vars_[k].card) break;
      sub -= m.strides[k] * x[k];
      x[k] = 0;
    }
  }
  return m;
}

JointTable JointTable::marginal(NodeSet keep) const {
  if (keep.empty()) throw PreconditionViolation("marginal over an empty set");
  const MarginalWeights m = marginal_weights(keep);
  std::vector<Variable> vars;
  for (NodeId v : keep) vars.push_back(vars_[v]);
  std::vector<Rational> probs;
  probs.reserve(m.weight.size());
  for (const auto& w : m.weight) {
    Rational q(w, scale_);
    q.canonicalize();
    probs.push_back(q);
  }
  return JointTable(std::move(vars), std::move(probs));
}

JointTable JointTable::marginal(const std::vector<std::string>& labels) const { return marginal(var_set(labels)); }

bool JointTable::independent(NodeSet a, NodeSet b, NodeSet c) const {
  if (!(a | b | c).subset_of(NodeSet::range(vars_.size()))) throw UnknownLabel("variable index outside table");
  if (a.empty() || b.empty()) throw PreconditionViolation("ci needs non-empty A and B");
  if (!a.disjoint(b) || !a.disjoint(c) || !b.disjoint(c)) throw PreconditionViolation("ci sets overlap");

  const NodeSet abc = a | b | c;
  const MarginalWeights m = marginal_weights(abc);
  // Sub-marginals over A∪C, B∪C, C computed inside the A∪B∪C space.
  std::vector<Variable> sub_vars;
  for (NodeId v : abc) sub_vars.push_back(vars_[v]);
  std::vector<std::size_t> sub_strides(sub_vars.size(), 1);
  for (std::size_t k = sub_vars.size(); k-- > 1;) sub_strides[k - 1] = sub_strides[k] * sub_vars[k].card;

  auto project = [&](NodeSet keep, std::vector<std::size_t>& strides) {
    strides.assign(sub_vars.size(), 0);
    std::size_t size = 1;
    const auto order = abc.to_vector();
    for (std::size_t k = order.size(); k-- > 0;) {
      if (keep.contains(order[k])) {
        strides[k] = size;
        size *= sub_vars[k].card;
      }
    }
    return size;
  };
  std::vector<std::size_t> s_ac, s_bc, s_c;
  std::vector<mpz_class> w_ac(project(a | c, s_ac)), w_bc(project(b | c, s_bc)), w_c(project(c, s_c));
  std::vector<std::size_t> i_ac(m.weight.size()), i_bc(m.weight.size()), i_c(m.weight.size());
  {
    Assignment x(sub_vars.size(), 0);
    std::size_t ac = 0, bc = 0, cc = 0;
    for (std::size_t cell = 0; cell < m.weight.size(); ++cell) {
      i_ac[cell] = ac;
      i_bc[cell] = bc;
      i_c[cell] = cc;
      const auto& w = m.weight[cell];
      if (sgn(w) != 0) {
        w_ac[ac] += w;
        w_bc[bc] += w;
        w_c[cc] += w;
      }
      for (std::size_t k = sub_vars.size(); k-- > 0;) {
        ac += s_ac[k];
        bc += s_bc[k];
        cc += s_c[k];
        if (++x[k] < sub_vars[k].card) break;
        ac -= s_ac[k] * x[k];
        bc -= s_bc[k] * x[k];
        cc -= s_c[k] * x[k];
        x[k] = 0;
      }
    }
  }
  mpz_class lhs, rhs;
  for (std::size_t cell = 0; cell < m.weight.size(); ++cell) {
    const auto& wc = w_c[i_c[cell]];
    if (sgn(wc) == 0) continue;
    lhs = m.weight[cell] * wc;
    rhs = w_ac[i_ac[cell]] * w_bc[i_bc[cell]];
    if (lhs != rhs) return false;
  }
  return true;
}

std::optional<JointTable> JointTable::condition(NodeSet on, const Assignment& values) const {
  const NodeSet rest = NodeSet::range(vars_.size()) - on;
  if (rest.empty()) throw PreconditionViolation("conditioning on every variable leaves nothing");
  const MarginalWeights m_on = marginal_weights(on);
  const mpz_class& denom = m_on.at(values);
  if (sgn(denom) == 0) return std::nullopt;
  std::vector<Variable> vars;
  for (NodeId v : rest) vars.push_back(vars_[v]);
  std::vector<Rational> probs;
  Assignment x = values;
  x.resize(vars_.size(), 0);
  for_each_assignment(vars_, rest, [&](const Assignment& y) {
    for (NodeId v : rest) x[v] = y[v];
    Rational q(weights_[encode(x)], denom);
    q.canonicalize();
    probs.push_back(q);
  });
  return JointTable(std::move(vars), std::move(probs));
}

JointTable JointTable::reordered(const std::vector<std::string>& order) const {
  if (order.size() != vars_.size()) throw RosterMismatch("reorder: roster sizes differ");
  std::vector<std::size_t> src(order.size());
  std::vector<Variable> vars;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (!has_var(order[k])) throw RosterMismatch("reorder: no variable named \"" + order[k] + "\"");
    src[k] = var_index(order[k]);
    vars.push_back(vars_[src[k]]);
  }
  std::vector<Rational> probs;
  probs.reserve(probs_.size());
  Assignment x(vars_.size());
  for_each_assignment(vars, NodeSet::range(vars.size()), [&](const Assignment& y) {
    for (std::size_t k = 0; k < y.size(); ++k) x[src[k]] = y[k];
    probs.push_back(probs_[encode(x)]);
  });
  return JointTable(std::move(vars), std::move(probs));
}

std::vector<std::size_t> JointTable::support(NodeSet keep) const {
  const MarginalWeights m = marginal_weights(keep);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < m.weight.size(); ++k) {
    if (sgn(m.weight[k]) != 0) out.push_back(k);
  }
  return out;
}

bool ci(const JointTable& p, const std::vector<std::string>& a, const std::vector<std::string>& b,
        const std::vector<std::string>& c) {
  return p.independent(p.var_set(a), p.var_set(b), p.var_set(c));
}

}  // namespace dofam
