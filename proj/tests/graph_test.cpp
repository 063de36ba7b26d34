#include <gtest/gtest.h>

#include "dofam/errors.hpp"
#include "dofam/generators.hpp"
#include "dofam/graph.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dofam;

namespace {

Bdmg two_cycle_with_parent() {
  // a<->b as a directed two-cycle, c->a
  return Bdmg::from_labels({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"c", "a"}}, {});
}

NodeSet labels(const Bdmg& g, std::initializer_list<const char*> ls) {
  NodeSet s;
  for (const char* l : ls) s.insert(g.index(l));
  return s;
}

}  // namespace

TEST(Bdmg, RejectsSelfLoopsAndBows) {
  Bdmg g({"a", "b"});
  EXPECT_THROW(g.add_arrow(0, 0), InvalidGraph);
  g.add_arrow(0, 1);
  EXPECT_THROW(g.add_arc(0, 1), InvalidGraph);
  EXPECT_THROW(Bdmg::from_labels({"a", "b"}, {}, {{"a", "a"}}), InvalidGraph);
}

TEST(Bdmg, AllowsOppositeArrows) {
  Bdmg g({"a", "b"});
  g.add_arrow(0, 1);
  g.add_arrow(1, 0);
  EXPECT_EQ(g.arrow_count(), 2u);
  EXPECT_FALSE(is_acyclic(g));
}

TEST(Bdmg, RejectsUnknownLabelsAndDuplicates) {
  EXPECT_THROW(Bdmg::from_labels({"a"}, {{"a", "z"}}, {}), UnknownLabel);
  EXPECT_THROW(Bdmg({"a", "a"}), InvalidGraph);
  EXPECT_THROW(Bdmg(std::vector<std::string>(kMaxNodes + 1, "x")), InvalidGraph);
}

TEST(Bdmg, IntervenedDropsIncomingArrowsAndArcs) {
  const Bdmg g = fixtures::single_pip_graph();
  const NodeId j = g.index("j"), k = g.index("k");
  const Bdmg gk = g.intervened(k);
  EXPECT_FALSE(gk.has_arc(j, k));
  EXPECT_FALSE(gk.has_arrow(g.index("h"), k));
  EXPECT_TRUE(gk.has_arrow(g.index("i"), j));
}

TEST(Ancestors, Examples) {
  const Bdmg chain = fixtures::chain_graph();
  EXPECT_EQ(ancestors(chain, NodeSet::single(2)), NodeSet::of({0, 1}));
  EXPECT_TRUE(ancestors(Bdmg({"a", "b"}), NodeSet::single(0)).empty());

  const Bdmg fig = fixtures::iterative_graph();
  EXPECT_EQ(ancestors(fig, NodeSet::single(fig.index("k"))), labels(fig, {"i", "j", "l"}));
  // A node on a cycle is still left out of its own ancestor set.
  EXPECT_FALSE(ancestors(fig, fig.index("k")).contains(fig.index("k")));
}

TEST(Ancestors, MatchTransitiveClosureOnRandomGraphs) {
  for (std::uint64_t s = 0; s < 150; ++s) {
    const Bdmg g = random_bdmg(mix_seed(11, s), 1 + s % 7, 0.3, 0.2, GraphClass::any);
    for (NodeId j = 0; j < g.size(); ++j) {
      ASSERT_EQ(ancestors(g, j), oracles::closure_ancestors(g, j)) << s;
      NodeSet de;
      for (NodeId v = 0; v < g.size(); ++v)
        if (oracles::closure_ancestors(g, v).contains(j)) de.insert(v);
      ASSERT_EQ(descendants(g, j), de.without(j)) << s;
    }
  }
}

TEST(StrongComponent, Examples) {
  EXPECT_EQ(strong_component(fixtures::chain_graph(), 1), NodeSet::single(1));
  const Bdmg fig = fixtures::iterative_graph();
  EXPECT_EQ(strong_component(fig, fig.index("i")), NodeSet::range(4));
  Bdmg two = Bdmg::from_labels({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}}, {});
  EXPECT_EQ(strong_component(two, two.index("c")), NodeSet::single(2));
  EXPECT_EQ(strong_components(two), (std::vector<NodeSet>{NodeSet::of({0, 1}), NodeSet::single(2)}));
}

TEST(Acyclify, Examples) {
  const Bdmg dag = fixtures::chain_graph();
  EXPECT_EQ(acyclify(dag).arrows(), dag.arrows());
  EXPECT_EQ(acyclify(dag).arc_count(), 0u);

  const Bdmg g = two_cycle_with_parent();
  const Bdmg acy = acyclify(g);
  const NodeId a = g.index("a"), b = g.index("b"), c = g.index("c");
  EXPECT_EQ(acy.arrows(), (std::vector<NodePair>{{c, a}, {c, b}}));
  EXPECT_EQ(acy.arcs(), (std::vector<NodePair>{{a, b}}));

  const Bdmg fig = acyclify(fixtures::iterative_graph());
  EXPECT_EQ(fig.arrow_count(), 0u);
  EXPECT_EQ(fig.arc_count(), 6u);
}

TEST(Acyclify, MayProduceBows) {
  // x1->x3 and x1<->x2 with x2, x3 on one cycle: x1 gets both an arrow and an arc to x3.
  const Bdmg g =
      Bdmg::from_labels({"x1", "x2", "x3"}, {{"x1", "x3"}, {"x2", "x3"}, {"x3", "x2"}}, {{"x1", "x2"}});
  const Bdmg acy = acyclify(g);
  EXPECT_TRUE(acy.bows_allowed());
  EXPECT_TRUE(acy.has_arrow(0, 2));
  EXPECT_TRUE(acy.has_arc(0, 2));
  EXPECT_FALSE(g.bows_allowed());
}

TEST(Acyclify, PropertiesOnRandomGraphs) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Bdmg g = random_bdmg(mix_seed(12, s), 1 + s % 7, 0.35, 0.2, GraphClass::any);
    const Bdmg acy = acyclify(g);
    ASSERT_TRUE(is_acyclic(acy)) << s;
    ASSERT_EQ(acyclify(acy), acy) << s;
    // Arrows leaving a cycle keep their tail, so ancestry can only shrink.
    for (NodeId j = 0; j < g.size(); ++j) {
      const NodeSet outside = ancestors(g, j) - strong_component(g, j);
      ASSERT_TRUE((ancestors(acy, j) - NodeSet::single(j)).subset_of(outside)) << s;
      if (is_acyclic(g)) ASSERT_EQ(ancestors(acy, j) - NodeSet::single(j), outside) << s;
    }
  }
}

TEST(Classify, Examples) {
  const auto chain = classify(fixtures::chain_graph());
  EXPECT_TRUE(chain.is_dag);
  EXPECT_TRUE(chain.is_maximal);
  EXPECT_TRUE(chain.inseparable_pairs.empty());

  const Bdmg nm = fixtures::non_maximal_graph();
  const auto c = classify(nm);
  EXPECT_TRUE(c.is_ancestral);
  EXPECT_FALSE(c.is_maximal);
  EXPECT_EQ(c.inseparable_pairs, (std::vector<NodePair>{{nm.index("j"), nm.index("k")}}));

  const auto cyc = classify(Bdmg::from_labels({"a", "b"}, {{"a", "b"}, {"b", "a"}}, {}));
  EXPECT_FALSE(cyc.is_admg);
  EXPECT_FALSE(cyc.is_dag);
  EXPECT_FALSE(cyc.valid_order.has_value());
}

TEST(Classify, ClassHierarchyAndOrderOnRandomGraphs) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const GraphClass cls = s % 2 ? GraphClass::ancestral : GraphClass::any;
    const Bdmg g = random_bdmg(mix_seed(13, s), 1 + s % 6, 0.3, 0.3, cls);
    const auto c = classify(g);
    if (c.is_dag) ASSERT_TRUE(c.is_ancestral);
    if (c.is_ancestral) ASSERT_TRUE(c.is_admg);
    ASSERT_EQ(c.is_maximal, c.inseparable_pairs.empty());
    if (c.valid_order) {
      const AncestralOrder order(g);
      for (const auto& [a, b] : g.arrows()) ASSERT_TRUE(order.greater(a, b)) << s;
      for (const auto& [a, b] : g.arcs()) ASSERT_FALSE(order.comparable(a, b)) << s;
    }
  }
}

TEST(Generators, RespectTheRequestedClass) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    EXPECT_TRUE(is_dag(random_bdmg(s, 5, 0.5, 0.5, GraphClass::dag)));
    EXPECT_TRUE(is_admg(random_bdmg(s, 5, 0.5, 0.5, GraphClass::admg)));
    EXPECT_TRUE(is_ancestral(random_bdmg(s, 5, 0.5, 0.5, GraphClass::ancestral)));
    const Bdmg m = random_bdmg(s, 5, 0.4, 0.4, GraphClass::maximal_ancestral);
    EXPECT_TRUE(is_ancestral(m) && is_maximal(m));
  }
  EXPECT_EQ(random_bdmg(3, 5, 0.4, 0.2, GraphClass::any), random_bdmg(3, 5, 0.4, 0.2, GraphClass::any));
  EXPECT_THROW(random_bdmg(1, 11, 0.1, 0.1, GraphClass::any), PreconditionViolation);
}
