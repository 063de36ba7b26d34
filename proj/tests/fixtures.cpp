#include "fixtures.hpp"

namespace fixtures {

using dofam::Mechanism;
using dofam::Variable;

Rational q(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::vector<Variable> bits(const std::vector<std::string>& names) {
  std::vector<Variable> out;
  for (const auto& n : names) out.push_back({n, 2});
  return out;
}

Bdmg iterative_graph() {
  return Bdmg::from_labels({"i", "j", "k", "l"}, {{"i", "j"}, {"j", "k"}, {"k", "l"}, {"l", "i"}, {"i", "l"}}, {});
}

Bdmg non_maximal_graph() {
  return Bdmg::from_labels({"i", "j", "k", "l", "h"}, {{"l", "k"}, {"h", "j"}},
                           {{"j", "l"}, {"l", "h"}, {"h", "k"}});
}

Bdmg single_pip_graph() {
  return Bdmg::from_labels({"i", "j", "h", "k"}, {{"i", "j"}, {"j", "h"}, {"h", "k"}}, {{"j", "k"}});
}

Bdmg two_pip_graph() {
  return Bdmg::from_labels({"j", "k", "l", "h", "l2", "h2"}, {{"l", "k"}, {"h", "j"}, {"l2", "k"}, {"h2", "j"}},
                           {{"j", "l"}, {"l", "h"}, {"h", "k"}, {"j", "l2"}, {"l2", "h2"}, {"h2", "k"}});
}

Bdmg chain_graph() { return Bdmg::from_labels({"x1", "x2", "x3"}, {{"x1", "x2"}, {"x2", "x3"}}, {}); }

Bdmg collider_graph() { return Bdmg::from_labels({"x1", "x2", "x3"}, {{"x1", "x3"}, {"x2", "x3"}}, {}); }

namespace {

JointTable bernoulli(const std::string& name, const Rational& p1) {
  return JointTable({{name, 2}}, {1 - p1, p1});
}

JointTable point(const std::string& name) { return JointTable({{name, 1}}, {q(1)}); }

}  // namespace

Scm xor_scm(const Rational& p1, const Rational& p2) {
  Bdmg g = collider_graph();
  std::vector<JointTable> noise{bernoulli("e1", p1), bernoulli("e2", p2), point("e3")};
  std::vector<Mechanism> mech{{{"e1"}, {0, 1}}, {{"e2"}, {0, 1}}, {{"x1", "x2", "e3"}, {0, 1, 1, 0}}};
  return Scm(g, {2, 2, 2}, noise, mech);
}

InterventionalFamily xor_biased_family() {
  const Scm scm = xor_scm(q(1, 100), q(1, 2));
  return dofam::standard_family(scm, {{0, {q(1, 2), q(1, 2)}}, {1, {q(99, 100), q(1, 100)}}});
}

Scm two_graphs_scm() {
  Bdmg g = Bdmg::from_labels({"x1", "x2", "x3"}, {{"x1", "x2"}, {"x1", "x3"}}, {});
  std::vector<JointTable> noise{bernoulli("e1", q(1, 2)), bernoulli("e2", q(1, 2)), bernoulli("e3", q(1, 2))};
  std::vector<Mechanism> mech{
      {{"e1"}, {0, 1}}, {{"x1", "e2"}, {0, 1, 1, 2}}, {{"x1", "e3"}, {0, 1, 1, 2}}};
  return Scm(g, {2, 3, 3}, noise, mech);
}

Scm chain_with_shortcut_scm() {
  Bdmg g = Bdmg::from_labels({"x1", "x2", "x3"}, {{"x1", "x2"}, {"x2", "x3"}, {"x1", "x3"}}, {});
  std::vector<JointTable> noise{bernoulli("e1", q(1, 2)), bernoulli("e2", q(1, 4)), bernoulli("e3", q(1, 5))};
  // x2 flips x1 with probability 1/4; x3 flips (x1 or x2) with probability 1/5
  std::vector<Mechanism> mech{{{"e1"}, {0, 1}},
                              {{"x1", "e2"}, {0, 1, 1, 0}},
                              {{"x1", "x2", "e3"}, {0, 1, 1, 0, 1, 0, 1, 0}}};
  return Scm(g, {2, 2, 2}, noise, mech);
}

Scm intransitive_scm() {
  Bdmg g = chain_graph();
  // e2 = 2 d + g
  std::vector<JointTable> noise{bernoulli("e1", q(1, 2)),
                                JointTable({{"e2", 4}}, {q(3, 8), q(3, 8), q(1, 8), q(1, 8)}), point("e3")};
  std::vector<Mechanism> mech(3);
  mech[0] = {{"e1"}, {0, 1}};
  mech[1].inputs = {"x1", "e2"};
  for (std::size_t x1 = 0; x1 < 2; ++x1)
    for (std::size_t e = 0; e < 4; ++e) mech[1].table.push_back(2 * (x1 ^ (e / 2)) + e % 2);
  mech[2] = {{"x2", "e3"}, {0, 1, 0, 1}};
  return Scm(g, {2, 4, 2}, noise, mech);
}

JointTable product_law() { return JointTable::uniform(bits({"x1", "x2", "x3"})); }

InterventionalFamily product_family() {
  return InterventionalFamily::from_tables({product_law(), product_law(), product_law()});
}

InterventionalFamily coupled_joint_family() {
  // x1 fair and independent of x2 = x3 fair
  JointTable coupled(bits({"x1", "x2", "x3"}),
                     {q(1, 4), q(0), q(0), q(1, 4), q(1, 4), q(0), q(0), q(1, 4)});
  return InterventionalFamily::from_tables({coupled, product_law(), product_law()});
}

JointTable dependent_pair_law() {
  const JointTable pair(bits({"x1", "x2"}), {q(3, 8), q(1, 8), q(1, 8), q(3, 8)});
  return JointTable::product(pair, bernoulli("x3", q(1, 2)));
}

namespace {

JointTable independent_version(const JointTable& p) {
  JointTable out = p.marginal(dofam::NodeSet::single(0));
  for (dofam::NodeId v = 1; v < p.var_count(); ++v)
    out = JointTable::product(out, p.marginal(dofam::NodeSet::single(v)));
  return out;
}

}  // namespace

InterventionalFamily arc_only_family() {
  const JointTable p = dependent_pair_law();
  const JointTable ind = independent_version(p);
  return InterventionalFamily::from_tables({ind, ind, p});
}

InterventionalFamily forward_family() {
  const JointTable p = dependent_pair_law();
  return InterventionalFamily::from_tables({p, independent_version(p), p});
}

InterventionalFamily backward_family() {
  const JointTable p = dependent_pair_law();
  return InterventionalFamily::from_tables({independent_version(p), p, p});
}

}  // namespace fixtures
