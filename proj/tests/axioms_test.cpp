#include <gtest/gtest.h>

#include <algorithm>

#include "dofam/axioms.hpp"
#include "dofam/errors.hpp"
#include "dofam/generators.hpp"
#include "dofam/scm.hpp"
#include "fixtures.hpp"

using namespace dofam;
using fixtures::q;

namespace {

bool has_witness(const AxiomReport& r, const Witness& want) {
  return std::any_of(r.witnesses.begin(), r.witnesses.end(), [&](const Witness& w) {
    return std::all_of(want.begin(), want.end(), [&](const auto& kv) {
      auto it = w.find(kv.first);
      return it != w.end() && it->second == kv.second;
    });
  });
}

// X1 and X2 always equal, X3 a fair bit.
JointTable copy_law() {
  const JointTable pair(fixtures::bits({"x1", "x2"}), {q(1, 2), q(0), q(0), q(1, 2)});
  return JointTable::product(pair, JointTable::uniform(fixtures::bits({"x3"})));
}

}  // namespace

TEST(Observable, CoupledInterventionBreaksOnlyTheStrongForm) {
  const InterventionalFamily fam = fixtures::coupled_joint_family();
  const JointTable p = fixtures::product_law();
  EXPECT_TRUE(check_observable(fam, p).holds());
  const AxiomReport strong = check_strongly_observable(fam, p);
  EXPECT_FALSE(strong.holds());
  EXPECT_TRUE(has_witness(strong, {{"clause", "a"}, {"i", "x1"}, {"j", "x2"}, {"k", "x3"}}));
}

TEST(Observable, ConsistentFamiliesHoldBothForms) {
  const Scm scm = fixtures::two_graphs_scm();
  const InterventionalFamily fam = standard_family(scm);
  EXPECT_TRUE(check_observable(fam, joint(scm)).holds());
  EXPECT_TRUE(check_strongly_observable(fam, joint(scm)).holds());
  EXPECT_TRUE(check_observable(fixtures::product_family(), fixtures::product_law()).holds());
  EXPECT_TRUE(check_strongly_observable(fixtures::product_family(), fixtures::product_law()).holds());
}

TEST(Observable, ArcOnlyFamilyWithItsLaw) {
  // The arc pair is not separable, so only the converse direction has content.
  const InterventionalFamily fam = fixtures::arc_only_family();
  EXPECT_TRUE(check_observable(fam, fixtures::dependent_pair_law()).holds());
}

TEST(Compatible, Examples) {
  EXPECT_TRUE(check_compatible(fixtures::coupled_joint_family(), fixtures::product_law()).holds());
  const Scm scm = fixtures::two_graphs_scm();
  EXPECT_TRUE(check_compatible(standard_family(scm), joint(scm)).holds());

  // x1 causes x2; under do(x3) every (x1, x2) cell is reachable, under the copy law only two are.
  const AxiomReport r = check_compatible(fixtures::forward_family(), copy_law());
  EXPECT_FALSE(r.holds());
  EXPECT_TRUE(has_witness(r, {{"i", "x3"}, {"k", "x2"}, {"p_positive", "false"}}));
  EXPECT_THROW(check_quantifiable(fixtures::forward_family(), copy_law()), Incompatible);
  EXPECT_THROW(check_bivariate_quantifiable(fixtures::forward_family(), copy_law()), Incompatible);
}

TEST(Quantifiable, FairXorHolds) {
  const Scm fair = fixtures::xor_scm(q(1, 2), q(1, 2));
  EXPECT_TRUE(check_quantifiable(standard_family(fair), joint(fair)).holds());
  EXPECT_TRUE(check_cause_conditionals(standard_family(fair), joint(fair)).holds());
}

TEST(Quantifiable, BiasedXorHasAWitness) {
  const InterventionalFamily fam = fixtures::xor_biased_family();
  const JointTable p = joint(fixtures::xor_scm(q(1, 100), q(1, 2)));
  const AxiomReport r = check_quantifiable(fam, p);
  EXPECT_FALSE(r.holds());
  EXPECT_EQ(r.count, r.witnesses.size());
  for (const Witness& w : r.witnesses) {
    EXPECT_NE(w.at("lhs"), w.at("rhs"));
    EXPECT_EQ(w.at("k"), "x3");
  }
}

TEST(Quantifiable, NoisyModelsHold) {
  for (const Scm& scm : {fixtures::two_graphs_scm(), fixtures::chain_with_shortcut_scm()}) {
    const InterventionalFamily fam = standard_family(scm);
    EXPECT_TRUE(check_quantifiable(fam, joint(scm)).holds());
    EXPECT_TRUE(check_cause_conditionals(fam, joint(scm)).holds());
    EXPECT_TRUE(check_bivariate_quantifiable(fam, joint(scm)).holds());
  }
}

TEST(Bivariate, AllPairsAuditSeesTheInterventionOnTheMiddle) {
  const Scm scm = fixtures::chain_with_shortcut_scm();
  const InterventionalFamily fam = standard_family(scm);
  const AxiomReport r = check_bivariate_quantifiable(fam, joint(scm), PairScope::all_pairs);
  EXPECT_FALSE(r.holds());
  EXPECT_TRUE(has_witness(r, {{"i", "x2"}, {"j", "x1"}, {"k", "x3"}}));
}

TEST(EdgeCause, Examples) {
  const InterventionalFamily xor_fam = standard_family(fixtures::xor_scm(q(1, 2), q(1, 2)));
  const AxiomReport r = check_edge_cause(xor_fam, fixtures::collider_graph());
  EXPECT_FALSE(r.holds());
  EXPECT_EQ(r.count, 2u);

  const Scm scm = fixtures::two_graphs_scm();
  EXPECT_TRUE(check_edge_cause(standard_family(scm), scm.graph()).holds());
  EXPECT_TRUE(check_edge_cause(fixtures::product_family(), Bdmg({"x1", "x2", "x3"})).holds());
}

TEST(Congruent, Examples) {
  EXPECT_TRUE(check_congruent(fixtures::forward_family(), fixtures::forward_family()).holds());
  const AxiomReport r = check_congruent(fixtures::forward_family(), fixtures::backward_family());
  EXPECT_FALSE(r.holds());
  EXPECT_TRUE(has_witness(r, {{"clause", "causes"}}));
}

TEST(Congruent, ImpliesTheSameCausalGraph) {
  std::size_t congruent = 0;
  for (std::uint64_t s = 0; s < 120; ++s) {
    const Bdmg a = random_bdmg(mix_seed(71, s), 3, 0.35, 0.3, GraphClass::any);
    const Bdmg b = random_bdmg(mix_seed(72, s % 30), 3, 0.35, 0.3, GraphClass::any);
    const InterventionalFamily fa = oracle_family(a), fb = oracle_family(b);
    if (!check_congruent(fa, fb).holds()) continue;
    ++congruent;
    ASSERT_EQ(derive(fa).g, derive(fb).g) << s;
  }
  EXPECT_GT(congruent, 0u);
}

TEST(Reconstruct, ExactForFaithfulDags) {
  const Scm scm = fixtures::two_graphs_scm();
  const InterventionalFamily fam = standard_family(scm);
  const Reconstruction rec = reconstruct_p(fam, derive(fam), joint(scm));
  EXPECT_EQ(rec.p_hat, joint(scm));
  EXPECT_EQ(rec.matches_reference, true);
  EXPECT_TRUE(rec.failed_hypotheses.empty());

  const Reconstruction prod = reconstruct_p(fixtures::product_family(), derive(fixtures::product_family()),
                                            fixtures::product_law());
  EXPECT_EQ(prod.p_hat, fixtures::product_law());
  EXPECT_EQ(prod.source_of, (std::vector<NodeId>{1, 0, 0}));
}

TEST(Reconstruct, FairXorFlagsComposition) {
  const Scm fair = fixtures::xor_scm(q(1, 2), q(1, 2));
  const InterventionalFamily fam = standard_family(fair);
  const Reconstruction rec = reconstruct_p(fam, derive(fam), joint(fair));
  EXPECT_EQ(rec.matches_reference, false);
  for (const Rational& x : rec.p_hat.probs()) EXPECT_EQ(x, q(1, 8));
  EXPECT_NE(std::find(rec.failed_hypotheses.begin(), rec.failed_hypotheses.end(), "composition"),
            rec.failed_hypotheses.end());
}

TEST(Reconstruct, NeedsADag) {
  const InterventionalFamily fam = fixtures::arc_only_family();
  EXPECT_THROW(reconstruct_p(fam, derive(fam)), PreconditionViolation);
}

TEST(GraphFromObservation, MatchesUnderStrongObservabilityAndMaximality) {
  std::size_t asserted = 0;
  for (std::uint64_t s = 0; s < 60; ++s) {
    const Bdmg g = random_bdmg(mix_seed(73, s), 3, 0.4, 0.3, GraphClass::admg);
    const Scm scm = random_scm(mix_seed(74, s), g, 2);
    const InterventionalFamily fam = standard_family(scm);
    const JointTable p = joint(scm);
    const CausalDerivation d = derive(fam);
    if (!is_maximal(d.g) || !check_strongly_observable(fam, d, p).holds()) continue;
    ++asserted;
    ASSERT_EQ(graph_from_observation(fam, d, p), d.g) << s;
  }
  EXPECT_GT(asserted, 0u);
}

TEST(AxiomReport, KeepsACappedWitnessList) {
  AxiomReport r;
  for (std::size_t n = 0; n < kMaxWitnesses + 5; ++n) r.add({{"n", std::to_string(n)}});
  EXPECT_EQ(r.count, kMaxWitnesses + 5);
  EXPECT_EQ(r.witnesses.size(), kMaxWitnesses);
  EXPECT_FALSE(r.holds());
}
