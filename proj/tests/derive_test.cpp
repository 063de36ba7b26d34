#include <gtest/gtest.h>

#include <algorithm>

#include "dofam/ci_properties.hpp"
#include "dofam/derive.hpp"
#include "dofam/derive_io.hpp"
#include "dofam/errors.hpp"
#include "dofam/generators.hpp"
#include "dofam/scm.hpp"
#include "fixtures.hpp"

using namespace dofam;
using fixtures::q;

namespace {

NodeSet labels(const InterventionalFamily& fam, std::initializer_list<const char*> ls) {
  NodeSet s;
  for (const char* l : ls) s.insert(fam.index(l));
  return s;
}

Bdmg random_truth(std::uint64_t s, GraphClass cls, std::size_t lo = 3, std::size_t hi = 5) {
  Rng rng(s);
  return random_bdmg(mix_seed(s, 1), rng.between(lo, hi), 0.3, 0.25, cls);
}

}  // namespace

TEST(CauseRelations, Examples) {
  const auto xor_fam = standard_family(fixtures::xor_scm(q(1, 2), q(1, 2)));
  for (const NodeSet& c : cause_relations(xor_fam).cause) EXPECT_TRUE(c.empty());

  const auto chain = oracle_family(fixtures::chain_graph());
  const CauseRelations rel = cause_relations(chain);
  EXPECT_EQ(rel.cause[2], NodeSet::of({0, 1}));
  EXPECT_EQ(rel.eff[0], NodeSet::of({1, 2}));
  EXPECT_EQ(rel.cc[1], NodeSet::single(1));
  EXPECT_EQ(rel.above[2], NodeSet::of({0, 1}));

  for (const NodeSet& c : cause_relations(fixtures::product_family()).cause) EXPECT_TRUE(c.empty());
}

TEST(CauseRelations, CyclesAndFlips) {
  const auto fam = oracle_family(fixtures::iterative_graph());
  const CauseRelations rel = cause_relations(fam);
  for (NodeId i = 0; i < 4; ++i) {
    EXPECT_FALSE(rel.cause[i].contains(i));
    EXPECT_EQ(rel.cc[i], NodeSet::range(4));
    EXPECT_TRUE(rel.above[i].empty());
    for (NodeId k = 0; k < 4; ++k) EXPECT_EQ(rel.cause[k].contains(i), rel.eff[i].contains(k));
  }
}

TEST(Transitivity, IntransitiveModel) {
  const InterventionalFamily fam = standard_family(fixtures::intransitive_scm());
  const CauseRelations rel = cause_relations(fam);
  EXPECT_TRUE(rel.cause[1].contains(0));
  EXPECT_TRUE(rel.cause[2].contains(1));
  EXPECT_FALSE(rel.cause[2].contains(0));
  const TransitivityReport r = check_transitivity(fam);
  EXPECT_FALSE(r.axiom_holds);
  EXPECT_EQ(r.violations, (std::vector<Triple>{{0, 1, 2}}));
  EXPECT_TRUE(r.singleton_transitivity_checked);
  EXPECT_NE(std::find(r.not_singleton_transitive.begin(), r.not_singleton_transitive.end(), NodeId{0}),
            r.not_singleton_transitive.end());
  EXPECT_FALSE(r.sufficient_conditions_hold());
}

TEST(Transitivity, ProductFamilyIsVacuouslyTransitive) {
  const TransitivityReport r = check_transitivity(fixtures::product_family());
  EXPECT_TRUE(r.axiom_holds);
  EXPECT_TRUE(r.sufficient_conditions_hold());
}

TEST(Transitivity, OracleFamiliesAreTransitiveButUncheckable) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const TransitivityReport r = check_transitivity(oracle_family(random_truth(s, GraphClass::any, 2, 6)));
    ASSERT_TRUE(r.axiom_holds) << s;
    ASSERT_FALSE(r.singleton_transitivity_checked);
    ASSERT_FALSE(r.unavailable_reason.empty());
  }
}

TEST(Derive, IterativeFigureRounds) {
  const Bdmg truth = fixtures::iterative_graph();
  const InterventionalFamily fam = oracle_family(truth);
  const CausalDerivation d = derive(fam);
  const NodeId i = fam.index("i"), j = fam.index("j"), k = fam.index("k"), l = fam.index("l");
  EXPECT_EQ(d.cause()[k].without(i), NodeSet::of({j, l}));
  ASSERT_GE(d.trace.size(), 2u);
  EXPECT_TRUE(d.trace[0].has_arrow(i, k));
  EXPECT_FALSE(d.trace[1].has_arrow(i, k));
  EXPECT_EQ(d.icause[i][k].without(i), NodeSet::single(j));
  for (const auto& [a, b] : truth.arrows()) EXPECT_TRUE(d.s.has_arrow(a, b));
  // Under do(k), l and i stay on one cycle, so conditioning on l does not
  // separate k from i and k->i survives.
  EXPECT_TRUE(d.s.has_arrow(k, i));
  EXPECT_EQ(d.s.arrow_count(), 6u);
}

TEST(Derive, NonMaximalFigureArcs) {
  const InterventionalFamily fam = oracle_family(fixtures::non_maximal_graph());
  const CausalDerivation d = derive(fam);
  const NodeId i = fam.index("i"), j = fam.index("j"), k = fam.index("k"), l = fam.index("l");
  EXPECT_TRUE(d.g_i[i].has_arc(j, k));
  EXPECT_FALSE(d.g_i[l].has_arc(j, k));
  EXPECT_FALSE(d.g.has_arc(j, k));
  EXPECT_TRUE(markov_equivalent(d.g, fixtures::non_maximal_graph(), EquivalenceScope::full));
}

TEST(Derive, ProductFamilyGivesTheEmptyGraphInOneRound) {
  const CausalDerivation d = derive(fixtures::product_family());
  EXPECT_EQ(d.g.arrow_count() + d.g.arc_count(), 0u);
  EXPECT_EQ(d.rounds, 1u);
}

TEST(Derive, ChainAndTwoGraphsExample) {
  const CausalDerivation chain = derive(oracle_family(fixtures::chain_graph()));
  EXPECT_EQ(chain.g, fixtures::chain_graph());

  const Scm scm = fixtures::two_graphs_scm();
  const CausalDerivation d = derive(standard_family(scm));
  EXPECT_EQ(d.g.arrows(), scm.graph().arrows());
  EXPECT_EQ(d.g.arc_count(), 0u);
}

TEST(Derive, ArcOnlyFamily) {
  const InterventionalFamily fam = fixtures::arc_only_family();
  const CausalDerivation d = derive(fam);
  EXPECT_EQ(d.g.arrow_count(), 0u);
  EXPECT_EQ(d.g.arcs(), (std::vector<NodePair>{{0, 1}}));
  EXPECT_EQ(derive_variants(fam, d, ArcRule::standard, ArcPolicy::some_i), d.g);
  EXPECT_EQ(derive_variants(fam, d, ArcRule::standard, ArcPolicy::every_i), d.g);
  EXPECT_EQ(derive_variants(fam, d, ArcRule::every_c, ArcPolicy::every_i), d.g);
}

TEST(Derive, OppositeCausesMakeParallelArrows) {
  // (P^phi_do(1), P^psi_do(2), P): each variable causes the other.
  const JointTable p = fixtures::dependent_pair_law();
  const InterventionalFamily fam = InterventionalFamily::from_tables({p, p, p});
  const CausalDerivation d = derive(fam);
  EXPECT_TRUE(d.g.has_arrow(0, 1));
  EXPECT_TRUE(d.g.has_arrow(1, 0));
}

TEST(Derive, TwoNodeArcRuleIsVacuous) {
  // Without a third intervention every non-adjacent pair gets an arc.
  const InterventionalFamily fam = InterventionalFamily::from_tables(
      {JointTable::uniform(fixtures::bits({"a", "b"})), JointTable::uniform(fixtures::bits({"a", "b"}))});
  EXPECT_EQ(derive(fam).g.arc_count(), 1u);
  const CausalDerivation d = derive(fam);
  EXPECT_EQ(derive_variants(fam, d, ArcRule::standard, ArcPolicy::some_i).arc_count(), 0u);
}

TEST(Derive, VariantsOnTheProductFamilyAreEmpty) {
  const InterventionalFamily fam = fixtures::product_family();
  const CausalDerivation d = derive(fam);
  for (ArcRule r : {ArcRule::standard, ArcRule::every_c})
    for (ArcPolicy p : {ArcPolicy::every_i, ArcPolicy::some_i}) {
      const Bdmg g = derive_variants(fam, d, r, p);
      EXPECT_EQ(g.arrow_count() + g.arc_count(), 0u);
    }
}

TEST(Derive, StructuralInvariantsOnOracleFamilies) {
  for (std::uint64_t s = 0; s < 80; ++s) {
    const Bdmg truth = random_truth(mix_seed(61, s), GraphClass::any, 2, 6);
    const InterventionalFamily fam = oracle_family(truth);
    const CausalDerivation d = derive(fam);
    const std::size_t n = fam.size();
    ASSERT_LE(d.rounds, n * (n - 1) + 1);
    for (std::size_t r = 1; r < d.trace.size(); ++r)
      for (const auto& [a, b] : d.trace[r].arrows()) ASSERT_TRUE(d.trace[r - 1].has_arrow(a, b)) << s;
    for (NodeId k = 0; k < n; ++k) {
      ASSERT_FALSE(d.dcause[k].contains(k));
      ASSERT_TRUE(d.dcause[k].subset_of(d.cause()[k]));
      if (!d.cause()[k].empty()) ASSERT_FALSE(d.dcause[k].empty()) << s;
      // ancestors in G are exactly the causes; strong components are the causal cycles
      ASSERT_EQ(ancestors(d.g, k), d.cause()[k]) << s;
      ASSERT_EQ(strong_component(d.g, k), d.relations.cc[k]) << s;
      ASSERT_EQ(d.s.parents(k), d.dcause[k]);
    }
    for (NodeId i = 0; i < n; ++i) {
      ASSERT_TRUE(d.g_i[i].parents(i).empty());
      ASSERT_TRUE(d.g_i[i].spouses(i).empty());
      ASSERT_EQ(d.s_i[i], d.s.intervened(i));
    }
  }
}

TEST(Derive, OracleRecoversMaximalAncestralTruths) {
  for (std::uint64_t s = 0; s < 80; ++s) {
    const Bdmg truth = random_truth(mix_seed(62, s), GraphClass::maximal_ancestral);
    ASSERT_EQ(derive(oracle_family(truth)).g, truth) << s;
  }
}

TEST(Derive, ShortcutMatchesIterativeOnAncestralOracles) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const Bdmg truth = random_truth(mix_seed(63, s), GraphClass::ancestral);
    const InterventionalFamily fam = oracle_family(truth);
    const CausalDerivation a = derive(fam);
    const CausalDerivation b = derive(fam, DeriveMode::ancestral_shortcut);
    ASSERT_EQ(a.g, b.g) << s;
    ASSERT_EQ(derive_variants(fam, a, ArcRule::every_c, ArcPolicy::every_i), a.g) << s;
  }
}

TEST(Derive, ShortcutRefusesNonAncestralResults) {
  EXPECT_THROW(derive(oracle_family(fixtures::iterative_graph()), DeriveMode::ancestral_shortcut),
               PreconditionViolation);
}

TEST(Derive, NonEffectsAreIndependentUnderComposition) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const Bdmg g = random_bdmg(mix_seed(64, s), 3 + s % 2, 0.4, 0.2, GraphClass::admg);
    const InterventionalFamily fam = standard_family(random_scm(mix_seed(65, s), g, 2));
    const CauseRelations rel = cause_relations(fam);
    for (NodeId i = 0; i < fam.size(); ++i) {
      const JointTable& t = fam.table(i);
      if (!check_property(t, CiProperty::composition).holds()) continue;
      const NodeSet rest = t.var_set(fam.roster()) - rel.eff[i] - NodeSet::single(i);
      if (rest.empty()) continue;
      ASSERT_TRUE(t.independent(NodeSet::single(i), rest, {})) << s;
    }
  }
}

TEST(GraphFromObservation, Examples) {
  const Scm scm = fixtures::two_graphs_scm();
  const InterventionalFamily fam = standard_family(scm);
  EXPECT_EQ(graph_from_observation(fam, joint(scm)), derive(fam).g);

  const Bdmg empty = graph_from_observation(fixtures::product_family(), fixtures::product_law());
  EXPECT_EQ(empty.arrow_count() + empty.arc_count(), 0u);

  const Bdmg arc = graph_from_observation(fixtures::arc_only_family(), fixtures::dependent_pair_law());
  EXPECT_EQ(arc.arcs(), (std::vector<NodePair>{{0, 1}}));

  const JointTable other = JointTable::uniform(fixtures::bits({"a", "b", "c"}));
  EXPECT_THROW(graph_from_observation(fixtures::product_family(), other), RosterMismatch);
}

TEST(PipAdjust, SinglePipArrowIsRemoved) {
  const InterventionalFamily fam = oracle_family(fixtures::single_pip_graph());
  const CausalDerivation d = derive(fam);
  const NodeId i = fam.index("i"), j = fam.index("j"), k = fam.index("k");
  ASSERT_TRUE(d.s.has_arrow(i, k));
  const PipAdjustment a = pip_adjust(fam, d);
  EXPECT_FALSE(a.s.has_arrow(i, k));
  EXPECT_FALSE(a.dcause[k].contains(i));
  bool found = false;
  for (const auto& e : a.entries) {
    if (e.from == i && e.to == k && !e.arc) {
      found = true;
      EXPECT_EQ(e.outcome, PipOutcome::removed);
      EXPECT_EQ(e.pips.size(), 1u);
      EXPECT_EQ(e.separating, (std::vector<NodeId>{j}));
    }
  }
  EXPECT_TRUE(found);
}

TEST(PipAdjust, TwoPipPairIsUnresolved) {
  const InterventionalFamily fam = oracle_family(fixtures::two_pip_graph());
  const PipAdjustment a = pip_adjust(fam, derive(fam));
  const NodeId j = fam.index("j"), k = fam.index("k");
  EXPECT_EQ(a.unresolved, (std::vector<NodePair>{{std::min(j, k), std::max(j, k)}}));
  const auto json = pip_adjustment_to_json(fam, a);
  EXPECT_NE(json.dump().find("UNRESOLVED"), std::string::npos);
}

TEST(PipAdjust, DagsAreUntouched) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const Bdmg truth = random_truth(mix_seed(66, s), GraphClass::dag);
    const InterventionalFamily fam = oracle_family(truth);
    const CausalDerivation d = derive(fam);
    const PipAdjustment a = pip_adjust(fam, d);
    ASSERT_EQ(a.s, d.s) << s;
    ASSERT_TRUE(a.entries.empty()) << s;
  }
}

TEST(DeriveJson, CarriesTheTraceAndGraphs) {
  const InterventionalFamily fam = oracle_family(fixtures::iterative_graph());
  const auto j = derivation_to_json(fam, derive(fam));
  EXPECT_EQ(j.at("trace").size(), derive(fam).trace.size());
  EXPECT_TRUE(j.at("G_i").contains("l"));
  EXPECT_EQ(j.at("cause").at("k"), (nlohmann::json{"i", "j", "l"}));
  EXPECT_EQ(j.at("mode"), "iterative");
}

TEST(DeriveModes, StringConversions) {
  EXPECT_EQ(derive_mode_from_string("ancestral_shortcut"), DeriveMode::ancestral_shortcut);
  EXPECT_EQ(arc_rule_from_string(to_string(ArcRule::every_c)), ArcRule::every_c);
  EXPECT_EQ(arc_policy_from_string("some_i"), ArcPolicy::some_i);
  EXPECT_THROW(derive_mode_from_string("bogus"), InputError);
}
