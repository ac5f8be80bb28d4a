#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tutte_tl/compile.hpp"
#include "tutte_tl/reduce.hpp"

using namespace ttl;

namespace {

const ParamSet& unitary() {
  static const ParamSet p = example_params(ExampleSet::Unitary);
  return p;
}

std::shared_ptr<const GateCompiler> compiler() { return cached_compiler(unitary()); }

Mat cz() {
  Mat U = Mat::Identity(4, 4);
  U(3, 3) = -1.0;
  return U;
}

// Product of sigma_i / u (odd) or sigma_i (even) in application order.
Mat normalized_image(const KSpace& k, const CrossingWord& w) {
  Mat M = Mat::Identity(kKDim, kKDim);
  for (const auto& [i, u] : w) M = (i % 2 == 1 ? Mat(k.sigma(i, u) / u) : k.sigma(i, u)) * M;
  return M;
}

double l8_distance(const Mat& image, const Mat& U, cplx lambda) {
  const Mat T = encode_gate_k(U, lambda);
  const auto pos = KSpace::legit_positions();
  Mat diff(kKDim, 4);
  for (int c = 0; c < 4; ++c) diff.col(c) = image.col(pos[c]) - T.col(pos[c]);
  return op_norm(diff);
}

}  // namespace

TEST(PairModel, ReproducesPhi) {
  const KSpace& k = compiler()->kspace();
  for (int i = 1; i <= 6; ++i) {
    PairModel pm = pair_model(k, i);
    EXPECT_LT(pm.residual, 1e-9);
    EXPECT_GE(pm.copies, 1);
    EXPECT_LT((pm.embed_linear(pm.phi_a) - k.phi[i - 1]).norm(), 1e-9) << i;
    EXPECT_LT((pm.embed_linear(pm.phi_b) - k.phi[i]).norm(), 1e-9) << i;
    EXPECT_LT((pm.S * pm.Sinv - Mat::Identity(kKDim, kKDim)).norm(), 1e-9);
  }
}

TEST(PairModel, ModelProjectors) {
  const cplx d = unitary().d;
  PairModel pm = pair_model(compiler()->kspace(), 1);
  EXPECT_LT((pm.phi_a * pm.phi_a - d * pm.phi_a).norm(), 1e-12);
  EXPECT_LT((pm.phi_b * pm.phi_b - d * pm.phi_b).norm(), 1e-12);
  EXPECT_LT((pm.phi_a * pm.phi_b * pm.phi_a - pm.phi_a).norm(), 1e-12);
}

TEST(Alphabet, InverseNormalization) {
  for (auto s : {ExampleSet::Unitary, ExampleSet::Complex, ExampleSet::Real}) {
    ParamSet p = example_params(s);
    CrossingAlphabet a = crossing_alphabet(p);
    EXPECT_LT(std::abs(a.c_v_odd * a.c_w_odd - a.v_odd * a.w_odd / a.q), 1e-12 * std::abs(a.v_odd * a.w_odd / a.q));
    EXPECT_LT(std::abs(a.c_v_even * a.c_w_even - 1.0), 1e-12);
    KSpace k = build_k_space(rep_for_params(p));
    for (int i = 1; i <= 7; ++i) {
      Mat L = k.sigma(i, a.u(i, false)) / a.norm(i, false);
      Mat Li = k.sigma(i, a.u(i, true)) / a.norm(i, true);
      EXPECT_LT((L * Li - Mat::Identity(kKDim, kKDim)).norm(), 1e-10) << i;
      Mat m = a.model(i, i % 2 == 1 ? pair_model(k, 1).phi_a : pair_model(k, 1).phi_b, false);
      EXPECT_LT(std::abs(m.determinant() - 1.0), 1e-10) << i;
    }
  }
}

TEST(Encode, GateLayout) {
  std::mt19937_64 rng(1);
  Mat U = oracle::haar_unitary(4, rng);
  const cplx lam = std::polar(1.0, 0.3);
  Mat T = encode_gate_k(U, lam);
  const auto pos = KSpace::legit_positions();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_EQ(T(pos[r], pos[c]), U(r, c));
  for (int j = 4; j < kKDim; ++j) EXPECT_EQ(T(j, j), lam);
}

TEST(Decompose, SmallResidual) {
  std::mt19937_64 rng(2);
  Mat U = oracle::haar_unitary(4, rng);
  U /= std::pow(U.determinant(), 0.25);
  const cplx lam = std::pow(U.determinant(), -0.1);
  std::vector<Mat> f;
  const double res = compiler()->decompose(encode_gate_k(U, lam), f);
  EXPECT_LT(res, 1e-9);
  EXPECT_LT((compiler()->layered_product(f) - encode_gate_k(U, lam)).norm(), 1e-8);
}

TEST(Compile, IdentityIsEmpty) {
  CompiledGate g = compile_gate(Mat::Identity(4, 4), 0.01, unitary());
  EXPECT_EQ(g.result.length, 0u);
  EXPECT_EQ(g.result.delta_factor, cplx(1.0, 0.0));
  EXPECT_NEAR(g.result.error_bound, 0.0, 1e-14);
}

TEST(Compile, ControlledZ) {
  auto gc = compiler();
  CompiledGate g = gc->compile(cz(), 0.2);
  EXPECT_LE(g.result.error_bound, 0.2);
  EXPECT_TRUE(balanced(g.result.word(), 7));
  CrossingWord w = g.crossings(gc->alphabet());
  ASSERT_EQ(w.size(), g.result.length);
  const Mat img = normalized_image(gc->kspace(), w);
  EXPECT_LT((img - g.result.matrix).norm(), 1e-8 * std::max(1.0, img.norm()));
  EXPECT_NEAR(l8_distance(img, cz(), g.lambda), g.result.error_bound, 1e-9);
  // Delta_T: product of odd u over the word
  Scaled delta;
  for (const auto& [i, u] : w)
    if (i % 2 == 1) delta = delta * u;
  EXPECT_NEAR(delta.log_abs(), g.result.delta_scaled.log_abs(), 1e-8);
}

TEST(Compile, ExactWordRoundTrip) {
  auto gc = compiler();
  const CrossingAlphabet& a = gc->alphabet();
  std::mt19937_64 rng(4);
  CrossingWord w;
  const int letters[] = {1, 2, 3, 5, 6, 7};
  for (int j = 0; j < 8; ++j) {
    const int i = letters[rng() % 6];
    w.emplace_back(i, a.u(i, rng() % 2 == 1));
  }
  const Mat U = word_gate(gc->kspace(), w);
  ASSERT_LT((U.adjoint() * U - Mat::Identity(4, 4)).norm(), 1e-10);
  CompiledGate g = gc->compile(U, 0.01);
  EXPECT_LE(g.result.error_bound, 0.01);
  const Mat img = normalized_image(gc->kspace(), g.crossings(a));
  EXPECT_LE(l8_distance(img, U, g.lambda), 0.01);
}

TEST(Compile, Errors) {
  auto gc = compiler();
  auto code = [&](const Mat& U, double eps) {
    try {
      gc->compile(U, eps);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::OutOfRange;
  };
  EXPECT_EQ(code(Mat::Identity(3, 3), 0.1), ErrorCode::InvalidArgument);
  EXPECT_EQ(code(cz(), 0.0), ErrorCode::InvalidArgument);
  EXPECT_EQ(code(2.0 * cz(), 0.1), ErrorCode::InvalidArgument);
}

TEST(Compile, PottsParamsRefused) {
  try {
    GateCompiler gc(classify_params(2.0, {1.0}, {0.5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedParams);
  }
}

TEST(Compile, NonUnitaryExampleNetsTooCoarse) {
  // Odd letters of the example weights sit within ~0.01 of the identity; the nets cannot cover SL(2).
  for (auto s : {ExampleSet::Complex, ExampleSet::Real}) {
    try {
      GateCompiler gc(example_params(s));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NetTooCoarse);
    }
  }
}

TEST(Compile, ImprovedNormOnAllSubspaces) {
  CompileOptions o;
  o.improved = true;
  CompiledGate g = compile_gate(cz(), 0.2, unitary(), o);
  EXPECT_GE(g.improved_norm, 0.0);
  EXPECT_LE(g.improved_norm, 1.0 + 0.2);
}
