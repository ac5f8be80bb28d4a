#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "oracles.hpp"
#include "tutte_tl/tutte_exact.hpp"

using namespace ttl;

namespace {

WeightedGraph graph(int n, const std::vector<std::pair<int, int>>& es, cplx v) {
  WeightedGraph g;
  g.vertex_count = n;
  for (auto [a, b] : es) g.edges.push_back({a, b, v, Parity::Unknown});
  return g;
}

WeightedGraph triangle(cplx v) { return graph(3, {{0, 1}, {1, 2}, {0, 2}}, v); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(ZMultivariate, EmptyGraph) {
  const cplx q(1.3, 0.4);
  EXPECT_LT(std::abs(z_multivariate(graph(4, {}, 1.0), q) - std::pow(q, 4)), 1e-12);
}

TEST(ZMultivariate, SingleEdge) {
  EXPECT_EQ(z_multivariate(graph(2, {{0, 1}}, 1.0), 2.0), cplx(6.0, 0.0));
}

TEST(ZMultivariate, Triangle) {
  EXPECT_NEAR(std::abs(z_multivariate(triangle(1.0), 2.0) - 28.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(oracle::z_subsets(3, oracle::edges_of(triangle(1.0)), 2.0) - 28.0), 0.0, 1e-12);
}

TEST(ZMultivariate, MatchesOracleOnRandomGraphs) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + static_cast<int>(rng() % 5);
    WeightedGraph g;
    g.vertex_count = n;
    const int m = static_cast<int>(rng() % 8);
    for (int e = 0; e < m; ++e)
      g.edges.push_back({static_cast<int>(rng() % n), static_cast<int>(rng() % n), oracle::random_complex(rng, 0.2, 2.0),
                         Parity::Unknown});
    const cplx q = oracle::random_complex(rng, 0.5, 3.0);
    EXPECT_LT(oracle::rel_err(z_multivariate(g, q), oracle::z_subsets(n, oracle::edges_of(g), q)), 1e-12);
  }
}

TEST(ZMultivariate, TooManyEdges) {
  WeightedGraph g = graph(2, std::vector<std::pair<int, int>>(25, {0, 1}), 1.0);
  EXPECT_EQ(code_of([&] { z_multivariate(g, 2.0); }), ErrorCode::TooManyEdges);
}

TEST(ZMultivariate, ZeroWeightEdgeLeavesZUnchanged) {
  WeightedGraph g = triangle(cplx(0.3, 0.7));
  const cplx q(2.5, -0.5);
  const cplx before = z_multivariate(g, q);
  g.edges.push_back({0, 2, 0.0, Parity::Unknown});
  EXPECT_LT(oracle::rel_err(z_multivariate(g, q), before), 1e-13);
}

TEST(ZMultivariate, TreeClosedForm) {
  std::mt19937_64 rng(9);
  for (int n = 2; n <= 7; ++n) {
    WeightedGraph g = graph(n, oracle::random_tree(n, rng), 0.0);
    const cplx q = oracle::random_complex(rng, 0.5, 3.0);
    cplx expect = q;
    for (auto& e : g.edges) {
      e.w = oracle::random_complex(rng, 0.2, 2.0);
      expect *= q + e.w;
    }
    EXPECT_LT(oracle::rel_err(z_multivariate(g, q), expect), 1e-9);
  }
}

TEST(ComponentCount, IsolatedVerticesCount) {
  EXPECT_EQ(component_count(graph(5, {{0, 1}, {2, 3}}, 1.0)), 3);
}

TEST(StandardTutte, SingleEdgeIsX) {
  const cplx x(2.5, 0.5), y(1.5, -0.2);
  TutteValue t = standard_tutte(graph(2, {{0, 1}}, 1.0), x, y);
  EXPECT_LT(std::abs(t.direct_sum - x), 1e-12);
  EXPECT_LT(std::abs(t.via_z - x), 1e-12);
}

TEST(StandardTutte, TriangleKnownPolynomial) {
  const cplx x = 3.0, y = 2.0;
  TutteValue t = standard_tutte(triangle(1.0), x, y);
  EXPECT_LT(std::abs(t.direct_sum - (x * x + x + y)), 1e-12);
}

TEST(StandardTutte, BothFormsAgree) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + static_cast<int>(rng() % 4);
    WeightedGraph g;
    g.vertex_count = n;
    const int m = 1 + static_cast<int>(rng() % 5);
    for (int e = 0; e < m; ++e)
      g.edges.push_back({static_cast<int>(rng() % n), static_cast<int>(rng() % n), 1.0, Parity::Unknown});
    const cplx x = oracle::random_complex(rng, 0.5, 2.0) + 1.0;
    const cplx y = oracle::random_complex(rng, 0.5, 2.0) + 1.0;
    TutteValue v = standard_tutte(g, x, y);
    EXPECT_LT(oracle::rel_err(v.via_z, v.direct_sum), 1e-9);
  }
}

TEST(StandardTutte, SingularPoint) {
  EXPECT_EQ(code_of([] { standard_tutte(graph(2, {{0, 1}}, 1.0), 1.0, 2.0); }), ErrorCode::SingularPoint);
  EXPECT_EQ(code_of([] { standard_tutte(graph(2, {{0, 1}}, 1.0), 2.0, 1.0); }), ErrorCode::SingularPoint);
}

TEST(Potts, SingleEdge) {
  WeightedGraph g = graph(2, {{0, 1}}, 1.0);
  EXPECT_NEAR(std::abs(potts_partition(g, 2) - 6.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(potts_partition(g, 2) - z_multivariate(g, 2.0)), 0.0, 1e-12);
}

TEST(Potts, TriangleProperColorings) {
  EXPECT_NEAR(std::abs(potts_partition(triangle(-1.0), 3) - 6.0), 0.0, 1e-12);
}

TEST(Potts, ZeroWeights) {
  EXPECT_NEAR(std::abs(potts_partition(triangle(0.0), 3) - 27.0), 0.0, 1e-12);
}

TEST(Potts, FortuinKasteleyn) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> v(-0.99, 3.0);
  for (int n = 1; n <= 4; ++n)
    for (const auto& es : oracle::connected_graphs(n, 6))
      for (int q : {2, 3}) {
        WeightedGraph g = graph(n, es, 0.0);
        for (auto& e : g.edges) e.w = v(rng);
        const cplx p = potts_partition(g, q);
        EXPECT_LT(oracle::rel_err(p, z_multivariate(g, q)), 1e-9);
        EXPECT_LT(oracle::rel_err(p, oracle::potts_colorings(n, oracle::edges_of(g), q)), 1e-12);
      }
}

TEST(Potts, TooManyColorings) {
  EXPECT_EQ(code_of([] { potts_partition(graph(25, {}, 1.0), 2); }), ErrorCode::TooManyColorings);
}

TEST(Kauffman, EmptyAndLoop) {
  const cplx d(1.2, 0.3);
  EXPECT_EQ(kauffman_bruteforce(TangleProgram{}, d), cplx(1.0, 0.0));
  EXPECT_LT(std::abs(kauffman_bruteforce(TangleProgram{{TanglePrim::cup(1), TanglePrim::cap(1)}, {}}, d) - d), 1e-15);
}

TEST(Kauffman, CupCrossCap) {
  const cplx d(1.2, 0.3), u(0.4, -0.9);
  TangleProgram p{{TanglePrim::cup(1), TanglePrim::cross(1, u), TanglePrim::cap(1)}, {}};
  EXPECT_LT(std::abs(kauffman_bruteforce(p, d) - (u * d + d * d)), 1e-13);
}

TEST(Kauffman, MatchesSweepOracle) {
  std::mt19937_64 rng(17);
  for (std::uint64_t s = 1; s <= 40; ++s) {
    TangleProgram p = random_program(s);
    const cplx d = oracle::random_complex(rng, 1.0, 2.2);
    EXPECT_LT(oracle::rel_err(kauffman_bruteforce(p, d), oracle::bracket_sweep(p, d)), 1e-12) << "seed " << s;
  }
}

TEST(Kauffman, BracketTutteRelation) {
  std::mt19937_64 rng(23);
  for (std::uint64_t s = 100; s < 130; ++s) {
    TangleProgram p = random_program(s);
    const cplx d = oracle::random_complex(rng, 1.0, 2.2);
    const WeightedGraph g = medial_to_graph(p, d);
    const cplx lhs = kauffman_bruteforce(p, d) * std::pow(d, bracket_exponent(p));
    EXPECT_LT(oracle::rel_err(lhs, z_multivariate(g, d * d)), 1e-9) << "seed " << s;
  }
}

TEST(Kauffman, Errors) {
  EXPECT_EQ(code_of([] { kauffman_bruteforce(TangleProgram{{TanglePrim::cup(1)}, {}}, 1.0); }), ErrorCode::InvalidProgram);
  TangleProgram big = plat_program(1, std::vector<std::pair<int, cplx>>(21, {1, 0.5}));
  EXPECT_EQ(code_of([&] { kauffman_bruteforce(big, 1.5); }), ErrorCode::TooManyCrossings);
}

TEST(Threads, DeterministicAcrossThreadCounts) {
  WeightedGraph g = graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 3}, {1, 4}}, cplx(0.3, 0.8));
  EnumerationCaps one, four;
  one.threads = 1;
  four.threads = 4;
  EXPECT_EQ(z_multivariate(g, cplx(2.1, 0.3), one), z_multivariate(g, cplx(2.1, 0.3), four));
}
