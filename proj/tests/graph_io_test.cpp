#include <gtest/gtest.h>

#include "dofam/errors.hpp"
#include "dofam/generators.hpp"
#include "dofam/graph_io.hpp"
#include "dofam/rational.hpp"
#include "dofam/table_io.hpp"
#include "fixtures.hpp"

using namespace dofam;

TEST(GraphJson, RoundTripIsByteStable) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Bdmg g = random_bdmg(mix_seed(31, s), 1 + s % 7, 0.3, 0.3, GraphClass::any);
    const std::string once = dump_json(graph_to_json(g));
    const Bdmg back = graph_from_json(parse_json_text(once));
    EXPECT_EQ(back, g);
    EXPECT_EQ(dump_json(graph_to_json(back)), once);
  }
}

TEST(GraphJson, Layout) {
  const std::string text = dump_json(graph_to_json(fixtures::single_pip_graph()));
  EXPECT_EQ(text,
            "{\n  \"arcs\": [\n    [\n      \"j\",\n      \"k\"\n    ]\n  ],\n  \"arrows\": [\n    [\n      \"i\",\n"
            "      \"j\"\n    ],\n    [\n      \"j\",\n      \"h\"\n    ],\n    [\n      \"h\",\n      \"k\"\n    ]\n  ],\n"
            "  \"nodes\": [\n    \"i\",\n    \"j\",\n    \"h\",\n    \"k\"\n  ]\n}\n");
}

TEST(GraphJson, MissingEdgeListsMeanNoEdges) {
  const Bdmg g = graph_from_json(parse_json_text(R"({"nodes":["a","b"]})"));
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(g.arrow_count() + g.arc_count(), 0u);
}

TEST(GraphJson, RejectsBadInput) {
  EXPECT_THROW(graph_from_json(parse_json_text(R"({"arrows":[]})")), InputError);
  EXPECT_THROW(graph_from_json(parse_json_text(R"({"nodes":["a"],"arrows":[["a","b"]]})")), UnknownLabel);
  EXPECT_THROW(graph_from_json(parse_json_text(R"({"nodes":["a","b"],"arrows":[["a"]]})")), InputError);
  EXPECT_THROW(graph_from_json(parse_json_text(R"({"nodes":["a","b"],"arrows":[["a","b"]],"arcs":[["b","a"]]})")),
               InvalidGraph);
}

TEST(GraphJson, ParseErrorsCarryPosition) {
  try {
    parse_json_text("{\n  \"nodes\": [\"a\",\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(GraphDot, ArrowsAndArcs) {
  const std::string dot = graph_to_dot(fixtures::single_pip_graph());
  EXPECT_EQ(dot,
            "digraph G {\n  i;\n  j;\n  h;\n  k;\n  i -> j;\n  j -> h;\n  h -> k;\n  j -> k [dir=both];\n}\n");
  EXPECT_NE(graph_to_dot(Bdmg({"a b"}), "G_x").find("\"a b\""), std::string::npos);
}

TEST(Rationals, ParseExactly) {
  EXPECT_EQ(parse_rational("3/6"), fixtures::q(1, 2));
  EXPECT_EQ(parse_rational("-0.125"), fixtures::q(-1, 8));
  EXPECT_EQ(parse_rational("1.5e-2"), fixtures::q(3, 200));
  EXPECT_EQ(parse_rational("7"), fixtures::q(7));
  // leading zeros are decimal, not octal
  EXPECT_EQ(parse_rational("010/016"), fixtures::q(5, 8));
  EXPECT_EQ(parse_rational("0.08"), fixtures::q(2, 25));
  EXPECT_EQ(format_rational(fixtures::q(2, 4)), "1/2");
  EXPECT_EQ(format_rational(fixtures::q(0)), "0/1");
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("abc"), InputError);
  EXPECT_EQ(rational_from_json(nlohmann::json(0.1)), fixtures::q(1, 10));
}

TEST(TableJson, RoundTrip) {
  const JointTable t = fixtures::dependent_pair_law();
  const auto j = table_to_json(t);
  EXPECT_EQ(table_from_json(j), t);
  EXPECT_EQ(j["probs"][0], "3/16");
}

TEST(TableJson, RejectsBadInput) {
  EXPECT_THROW(table_from_json(parse_json_text(R"({"vars":[]})")), InvalidTable);
  EXPECT_THROW(table_from_json(parse_json_text(R"({"vars":[{"name":"a","card":2}],"probs":["1/2","1/3"]})")),
               InvalidTable);
  EXPECT_THROW(table_from_json(parse_json_text(R"({"vars":[{"name":"a","card":2}],"probs":["1/2"]})")),
               InvalidTable);
  EXPECT_THROW(table_from_json(parse_json_text(R"({"vars":[{"name":"a","card":2}],"probs":["3/2","-1/2"]})")),
               InvalidTable);
}

TEST(Distributions, ParseListsAndArrays) {
  EXPECT_EQ(parse_distribution("1/2,1/2"), (std::vector<Rational>{fixtures::q(1, 2), fixtures::q(1, 2)}));
  EXPECT_EQ(parse_distribution("[\"0.25\", 0.75]"), (std::vector<Rational>{fixtures::q(1, 4), fixtures::q(3, 4)}));
}
