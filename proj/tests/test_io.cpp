#include <gtest/gtest.h>

#include <functional>

#include "tutte_tl/io.hpp"

using namespace ttl;

namespace {

ErrorCode parse_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Complex, Parse) {
  EXPECT_EQ(parse_complex("2+0i"), cplx(2, 0));
  EXPECT_EQ(parse_complex("1.5-2i"), cplx(1.5, -2));
  EXPECT_EQ(parse_complex("3"), cplx(3, 0));
  EXPECT_EQ(parse_complex("2i"), cplx(0, 2));
  EXPECT_EQ(parse_complex("i"), cplx(0, 1));
  EXPECT_EQ(parse_complex("-i"), cplx(0, -1));
  EXPECT_EQ(parse_complex("1e-3+2.5e1i"), cplx(1e-3, 25));
  EXPECT_EQ(parse_code([] { parse_complex("abc"); }), ErrorCode::ParseError);
}

TEST(Complex, Json) {
  const cplx z(0.1, -3.25);
  EXPECT_EQ(complex_from_json(complex_json(z), "z"), z);
  EXPECT_EQ(complex_from_json(json(2.5), "z"), cplx(2.5, 0));
  EXPECT_EQ(parse_code([] { complex_from_json(json::parse("[1,2,3]"), "z"); }), ErrorCode::ParseError);
}

TEST(Program, LoopRoundTrip) {
  TangleProgram p{{TanglePrim::cup(1), TanglePrim::cap(1)}, {}};
  const std::string text = program_to_json(p).dump();
  EXPECT_EQ(program_from_json(parse_json_text(text)), p);
}

TEST(Program, CrossingAndGroupingRoundTrip) {
  TangleProgram p{{TanglePrim::cup(1), TanglePrim::cross(1, cplx(0.25, -0.5)), TanglePrim::cap(1)}, {{0, 1}, {2, 2}}};
  EXPECT_EQ(program_from_json(parse_json_text(program_to_json(p).dump())), p);
}

TEST(Program, MalformedFieldName) {
  EXPECT_EQ(parse_code([] { program_from_json(parse_json_text(R"({"prims":[{"t":"cup","idx":1}]})")); }),
            ErrorCode::ParseError);
  EXPECT_EQ(parse_code([] { program_from_json(parse_json_text(R"({"primz":[]})")); }), ErrorCode::ParseError);
  EXPECT_EQ(parse_code([] { program_from_json(parse_json_text(R"({"prims":[{"t":"twist","i":1}]})")); }),
            ErrorCode::ParseError);
}

TEST(Program, BadText) {
  EXPECT_EQ(parse_code([] { parse_json_text("{\"prims\": [}"); }), ErrorCode::ParseError);
}

TEST(Graph, ComplexEdgeRoundTrip) {
  WeightedGraph g;
  g.vertex_count = 2;
  g.edges.push_back({0, 1, cplx(1.5, -0.75), Parity::Odd});
  EXPECT_EQ(graph_from_json(parse_json_text(graph_to_json(g).dump())), g);
}

TEST(Graph, ParityOptional) {
  WeightedGraph g = graph_from_json(parse_json_text(R"({"n":2,"edges":[{"a":0,"b":1,"w":[1,0]}]})"));
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].parity, Parity::Unknown);
  EXPECT_EQ(g.edges[0].w, cplx(1, 0));
}

TEST(Graph, Malformed) {
  EXPECT_EQ(parse_code([] { graph_from_json(parse_json_text(R"({"n":2,"edges":[{"a":0,"c":1,"w":1}]})")); }),
            ErrorCode::ParseError);
}

TEST(Circuit, RoundTrip) {
  Circuit c;
  c.n = 2;
  Gate g;
  g.pos = 1;
  g.m = Mat::Identity(4, 4);
  g.m(3, 3) = -1.0;
  c.gates.push_back(g);
  Gate w;
  w.pos = 1;
  w.word = {{1, cplx(0.5, 0.1)}, {2, cplx(-0.3, 0.0)}};
  c.gates.push_back(w);
  Circuit back = circuit_from_json(parse_json_text(circuit_to_json(c).dump()));
  ASSERT_EQ(back.n, 2);
  ASSERT_EQ(back.gates.size(), 2u);
  EXPECT_EQ((back.gates[0].m - c.gates[0].m).norm(), 0.0);
  EXPECT_EQ(back.gates[1].word, w.word);
}
