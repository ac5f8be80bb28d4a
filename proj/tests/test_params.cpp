#include <gtest/gtest.h>

#include <numbers>

#include "tutte_tl/params.hpp"

using namespace ttl;

namespace {

const cplx kZ = std::polar(1.0, std::numbers::pi / 3.0);

ParamSet set_of(ExampleSet s) { return example_params(s); }

}  // namespace

TEST(Classify, UnitaryExample) {
  ParamSet p = set_of(ExampleSet::Unitary);
  EXPECT_EQ(p.cls, ParamClass::UnitaryCaseI);
  EXPECT_TRUE(p.closed);
  EXPECT_TRUE(p.unitary_type);
  EXPECT_TRUE(p.hermitian_rep);
  EXPECT_NEAR(std::abs(p.d - std::sqrt(3.0)), 0.0, 1e-15);
}

TEST(Classify, UnitaryExampleWeightsAsListed) {
  // Odd list as written in the source text: 3(z-1)^-1 and 3(1-conj z)^-1; the second is not the odd inverse of the first.
  try {
    classify_params(3.0, {3.0 / (kZ - 1.0), 3.0 / (1.0 - std::conj(kZ))}, {kZ - 1.0, 1.0 - std::conj(kZ)});
    FAIL() << "no error thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotClosedToInverses);
  }
}

TEST(Classify, ComplexExample) {
  ParamSet p = set_of(ExampleSet::Complex);
  EXPECT_EQ(p.cls, ParamClass::ComplexNonUnitaryCaseII);
  EXPECT_LT(std::min(p.jorg1, p.jorg2), 1.0);
  EXPECT_FALSE(p.unitary_type);
}

TEST(Classify, RealExample) {
  ParamSet p = set_of(ExampleSet::Real);
  EXPECT_EQ(p.cls, ParamClass::RealNonUnitaryCaseIII);
}

TEST(Classify, PottsPhysical) {
  EXPECT_EQ(classify_params(2.0, {1.0}, {0.5}).cls, ParamClass::PottsPhysical);
  EXPECT_EQ(classify_params(3.0, {-0.5}, {2.0}).cls, ParamClass::PottsPhysical);
}

TEST(Classify, NotClosedListsWeights) {
  try {
    classify_params(cplx(0.0, 2.0), {cplx(1.0, 1.0)}, {cplx(0.5, 0.5)});
    FAIL() << "no error thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotClosedToInverses);
    EXPECT_NE(std::string(e.what()).find("odd"), std::string::npos);
  }
}

TEST(Inverses, Identities) {
  const cplx q(1.5, 0.7), v(0.3, -2.0);
  const cplx w = odd_inverse(q, v);
  EXPECT_LT(std::abs(v + w + q), 1e-15);
  const cplx e = even_inverse(v);
  EXPECT_LT(std::abs(v + e + v * e), 1e-15);
}

TEST(Derived, AlphaBeta) {
  ParamSet p = set_of(ExampleSet::Unitary);
  EXPECT_LT(std::abs(p.alpha * p.alpha - (1.0 + p.q / p.v1)), 1e-13);
  EXPECT_LT(std::abs(p.beta * p.beta - (1.0 + p.v2)), 1e-13);
  // unitary type: |alpha| = |beta| = 1
  EXPECT_NEAR(std::abs(p.alpha), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(p.beta), 1.0, 1e-12);
}

TEST(Rep, UnitaryIsTruncatedHermitian) {
  PathRep r = rep_for_params(set_of(ExampleSet::Unitary));
  EXPECT_EQ(r.m(), 5);
  EXPECT_TRUE(r.hermitian());
}

TEST(Generators, UnitDeterminant) {
  for (auto s : {ExampleSet::Unitary, ExampleSet::Complex, ExampleSet::Real}) {
    ParamSet p = set_of(s);
    KSpace k = build_k_space(rep_for_params(p));
    BlockGenerators g = block_generators(p, k);
    EXPECT_LT(std::abs(g.X.determinant() - 1.0), 1e-10);
    EXPECT_LT(std::abs(g.Y.determinant() - 1.0), 1e-10);
  }
}

TEST(Density, CommutatorTraceFormula) {
  for (auto s : {ExampleSet::Unitary, ExampleSet::Complex, ExampleSet::Real}) {
    ParamSet p = set_of(s);
    DensityReport r = density_diagnostics(p, rep_for_params(p));
    EXPECT_LT(r.trace_diff, 1e-10);
    EXPECT_TRUE(r.non_commuting);
  }
}

TEST(Density, JorgensenDirectMatchesFormula) {
  for (auto s : {ExampleSet::Unitary, ExampleSet::Complex, ExampleSet::Real}) {
    ParamSet p = set_of(s);
    DensityReport r = density_diagnostics(p, rep_for_params(p));
    EXPECT_NEAR(r.jorgensen_x, r.jorgensen_formula1, 1e-9 * std::max(1.0, r.jorgensen_x));
    EXPECT_NEAR(r.jorgensen_y, r.jorgensen_formula2, 1e-9 * std::max(1.0, r.jorgensen_y));
  }
}

TEST(Density, ComplexExampleJorgensen) {
  ParamSet p = set_of(ExampleSet::Complex);
  DensityReport r = density_diagnostics(p, rep_for_params(p));
  EXPECT_LT(std::min(r.jorgensen_x, r.jorgensen_y), 1.0);
  EXPECT_FALSE(r.elementary);
}

TEST(Density, TrivialAlphaBeta) {
  EXPECT_EQ(commutator_trace_formula(cplx(2.0, 1.0), 1.0, 1.0), cplx(0.0, 0.0));
  Mat X = Mat::Zero(2, 2), Y = Mat::Zero(2, 2);
  X(0, 0) = 2.0;
  X(1, 1) = 0.5;
  Y(0, 0) = cplx(0.0, 1.0);
  Y(1, 1) = cplx(0.0, -1.0);
  DensityReport r = density_from_generators(cplx(2.0, 1.0), 1.0, 1.0, X, Y);
  EXPECT_FALSE(r.non_commuting);
  EXPECT_LT(r.trace_diff, 1e-14);
}
