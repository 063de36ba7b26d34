#ifndef DOFAM_TESTS_FIXTURES_HPP
#define DOFAM_TESTS_FIXTURES_HPP

#include <string>
#include <vector>

#include "dofam/family.hpp"
#include "dofam/graph.hpp"
#include "dofam/rational.hpp"
#include "dofam/scm.hpp"
#include "dofam/table.hpp"

namespace fixtures {

using dofam::Bdmg;
using dofam::InterventionalFamily;
using dofam::JointTable;
using dofam::Rational;
using dofam::Scm;

Rational q(long num, long den = 1);
std::vector<dofam::Variable> bits(const std::vector<std::string>& names);

// Graphs drawn in the worked examples. Node labels follow the drawings:
// i, j, k, l, h, with primed nodes written l2 and h2.

/// i->j, j->k, k->l, l->i, i->l. The first round keeps i->k, the second drops it.
Bdmg iterative_graph();
/// i isolated; j<->l, l<->h, h<->k; l->k, h->j. The jk-arc appears in G_i but not in G_l.
Bdmg non_maximal_graph();
/// i->j, j->h, h->k; j<->k. Exactly one primitive inducing path from i to k.
Bdmg single_pip_graph();
/// Two parallel routes l, h and l2, h2 between j and k, each a primitive inducing path.
Bdmg two_pip_graph();
/// x1->x2->x3.
Bdmg chain_graph();
/// x1->x3<-x2.
Bdmg collider_graph();

/// X3 = X1 xor X2 with X1 ~ Bernoulli(p1), X2 ~ Bernoulli(p2).
Scm xor_scm(const Rational& p1, const Rational& p2);
/// The collider family with p1 = 1/100, p2 = 1/2, do(1) setting X1 fair and do(2) making X2 ~ Bernoulli(1/100).
InterventionalFamily xor_biased_family();
/// X1 = e1, X2 = X1 + e2, X3 = X1 + e3 over fair bits.
Scm two_graphs_scm();
/// x1->x2->x3 plus x1->x3, each child a noisy function of its parents.
Scm chain_with_shortcut_scm();
/// X1 fair; X2 = 2 (X1 xor d) + g with d ~ Bernoulli(1/4), g fair; X3 = X2 mod 2.
Scm intransitive_scm();

/// Three fair bits, every intervention equal to the product law.
InterventionalFamily product_family();
JointTable product_law();
/// Independent fair bits; only do(x1) couples x2 and x3.
InterventionalFamily coupled_joint_family();
/// X1 fair, X2 copies X1 with probability 3/4, X3 an independent fair bit.
JointTable dependent_pair_law();
/// (P^ind, P^ind, P) with P the dependent pair law.
InterventionalFamily arc_only_family();
/// (P, P^ind, P): x1 causes x2.
InterventionalFamily forward_family();
/// (P^ind, P, P): x2 causes x1.
InterventionalFamily backward_family();

}  // namespace fixtures

#endif
