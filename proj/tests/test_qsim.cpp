#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tutte_tl/qsim.hpp"

using namespace ttl;

namespace {

double unitarity(const Mat& U) { return (U.adjoint() * U - Mat::Identity(U.cols(), U.cols())).norm(); }

TangleProgram loop() { return TangleProgram{{TanglePrim::cup(1), TanglePrim::cap(1)}, {}}; }

// Embeds a step unitary acting on (ancilla a, system) into (ancilla 1, ancilla 0, system).
Mat lift(const Mat& U, int n, int which) {
  const int N = 4 * n;
  Mat F = Mat::Zero(N, N);
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a0 = 0; a0 < 2; ++a0)
      for (int i = 0; i < n; ++i)
        for (int b = 0; b < 2; ++b)
          for (int j = 0; j < n; ++j) {
            const int own_in = which == 0 ? a0 : a1;
            const int other = which == 0 ? a1 : a0;
            const int r = which == 0 ? (other * 2 + b) * n + i : (b * 2 + other) * n + i;
            F(r, (a1 * 2 + a0) * n + j) += U(b * n + i, own_in * n + j) * 1.0;
          }
  return F;
}

}  // namespace

TEST(Polar, UnitaryInput) {
  std::mt19937_64 rng(1);
  Mat U = oracle::haar_unitary(4, rng);
  Polar p = polar_decompose(U);
  EXPECT_LT((p.U - U).norm(), 1e-12);
  EXPECT_LT((p.P - Mat::Identity(4, 4)).norm(), 1e-12);
}

TEST(Polar, PositiveScalar) {
  Polar p = polar_decompose(2.0 * Mat::Identity(3, 3));
  EXPECT_LT((p.U - Mat::Identity(3, 3)).norm(), 1e-12);
  EXPECT_LT((p.P - 2.0 * Mat::Identity(3, 3)).norm(), 1e-12);
}

TEST(Polar, RandomReconstruction) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    Mat M = oracle::random_matrix(5, 5, rng);
    if (t % 3 == 0) M.col(2).setZero();
    Polar p = polar_decompose(M);
    EXPECT_LT((p.U * p.P - M).norm(), 1e-10);
    EXPECT_LT(unitarity(p.U), 1e-10);
    EXPECT_LT((p.P - p.P.adjoint()).norm(), 1e-10);
    Eigen::SelfAdjointEigenSolver<Mat> es(p.P);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
  }
}

TEST(Dilate, Identity) {
  DilatedStep s = dilate(Mat::Identity(3, 3));
  EXPECT_NEAR(s.norm_factor, 1.0, 1e-14);
  EXPECT_LT((s.unitary - Mat::Identity(6, 6)).norm(), 1e-12);
}

TEST(Dilate, Diagonal) {
  Mat M = Mat::Zero(2, 2);
  M(0, 0) = 2.0;
  M(1, 1) = 1.0;
  DilatedStep s = dilate(M);
  EXPECT_NEAR(s.norm_factor, 2.0, 1e-14);
  Mat expect = Mat::Zero(2, 2);
  expect(0, 0) = 1.0;
  expect(1, 1) = 0.5;
  EXPECT_LT((s.unitary.topLeftCorner(2, 2) - expect).norm(), 1e-12);
  EXPECT_LT(unitarity(s.unitary), 1e-12);
}

TEST(Dilate, RandomContract) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const int n = 1 + t % 6;
    Mat M = oracle::random_matrix(n, n, rng);
    DilatedStep s = dilate(M);
    const double nrm = Eigen::JacobiSVD<Mat>(M).singularValues()(0);
    EXPECT_NEAR(s.norm_factor, nrm, 1e-12);
    EXPECT_LT(unitarity(s.unitary), 1e-10);
    EXPECT_LT((s.unitary.topLeftCorner(n, n) - M / nrm).norm(), 1e-10);
    // positive-factor dilation: top-left block is P / ||M||
    Polar p = polar_decompose(M);
    EXPECT_LT((s.p_rotation.topLeftCorner(n, n) - p.P / nrm).norm(), 1e-10);
    EXPECT_LT(unitarity(s.p_rotation), 1e-10);
  }
}

TEST(Dilate, CupIsPaddedThenScaledBySqrtD) {
  const double d = std::sqrt(3.0);
  PathRep r = PathRep::with_truncation(d, 5);
  Mat C = op_cup(r, 1, 0).dense();
  ASSERT_EQ(C.cols(), 1);
  Mat M = Mat::Zero(C.rows(), C.rows());
  M.col(0) = C;
  DilatedStep s = dilate(M);
  EXPECT_NEAR(s.norm_factor, std::sqrt(d), 1e-12);
  EXPECT_LT((s.unitary.topLeftCorner(C.rows(), 1) - C / std::sqrt(d)).norm(), 1e-12);
}

TEST(Dilate, Errors) {
  try {
    dilate(Mat::Zero(2, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroOperator);
  }
}

TEST(Dilate, ComposedAncillasReproduceProduct) {
  std::mt19937_64 rng(4);
  const int n = 3;
  Mat M1 = oracle::random_matrix(n, n, rng), M2 = oracle::random_matrix(n, n, rng);
  DilatedStep s1 = dilate(M1), s2 = dilate(M2);
  Mat full = lift(s2.unitary, n, 1) * lift(s1.unitary, n, 0);
  EXPECT_LT(unitarity(full), 1e-10);
  Mat expect = M2 * M1 / (s1.norm_factor * s2.norm_factor);
  EXPECT_LT((full.topLeftCorner(n, n) - expect).norm(), 1e-9);
}

TEST(Registers, BitsPerRegister) {
  EXPECT_EQ(encode_registers(PathRep::with_truncation(std::sqrt(3.0), 5), plat_program(2, {})).bits_per_register, 3);
  EXPECT_EQ(encode_registers(PathRep::with_truncation(1.0, 2), loop()).bits_per_register, 2);
}

TEST(Registers, PeakIsWidthPlusOne) {
  TangleProgram p = random_program(6);
  RegisterPlan rp = encode_registers(PathRep::for_width(1.7, max_width(p)), p);
  EXPECT_EQ(rp.peak_registers, max_width(p) + 1);
  EXPECT_EQ(rp.total_qubits, rp.peak_registers * rp.bits_per_register + 1);
}

TEST(Estimate, LoopExact) {
  const cplx d(1.3, 0.6);
  EstimateReport e = hadamard_estimate(loop(), PathRep::compute(d, 4));
  EXPECT_LT(std::abs(e.z_estimate.value() - d * d), 1e-9);
}

TEST(Estimate, RandomProgramsMatchEvaluator) {
  std::mt19937_64 rng(51);
  for (std::uint64_t s = 1; s <= 30; ++s) {
    TangleProgram p = random_program(s);
    const cplx d = oracle::random_complex(rng, 1.0, 2.2);
    PathRep r = PathRep::for_width(d, max_width(p));
    EvalReport ev = evaluate_exact(p, r);
    EstimateReport e = hadamard_estimate(p, r);
    EXPECT_LT(oracle::rel_err(e.z_estimate.value(), ev.z_value.value()), 1e-9) << "seed " << s;
    EXPECT_LE(std::abs(e.exact_amplitude), 1.0 + 1e-9);
    EXPECT_NEAR(e.log_scale, ev.log_delta_alg, 1e-9);
  }
}

TEST(Estimate, GroupedKeepsProduct) {
  std::mt19937_64 rng(53);
  for (std::uint64_t s = 1; s <= 10; ++s) {
    TangleProgram p = random_program(s);
    const int n = static_cast<int>(p.prims.size());
    p.grouping.clear();
    for (int a = 0; a < n; a += 3) p.grouping.emplace_back(a, std::min(n - 1, a + 2));
    const cplx d = oracle::random_complex(rng, 1.0, 2.2);
    PathRep r = PathRep::for_width(d, max_width(p));
    EstimateOptions go;
    go.grouped = true;
    EstimateReport g = hadamard_estimate(p, r, go);
    EstimateReport f = hadamard_estimate(p, r);
    EXPECT_LT(oracle::rel_err(g.z_estimate.value(), f.z_estimate.value()), 1e-9);
    EXPECT_NEAR(g.log_scale, log_delta_grp(p, r, p.grouping), 1e-9);
    EXPECT_LE(g.log_scale, f.log_scale + 1e-9);
  }
}

TEST(Estimate, SampledWithinHoeffding) {
  TangleProgram p = random_program(2);
  PathRep r = PathRep::for_width(cplx(1.5, 0.3), max_width(p));
  EstimateOptions o;
  o.mode = EstimateMode::Sampled;
  o.samples = 20000;
  int inside = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    o.seed = seed;
    EstimateReport e = hadamard_estimate(p, r, o);
    EXPECT_EQ(e.samples, 20000);
    const bool ok = std::abs(e.estimate.real() - e.exact_amplitude.real()) <= e.hoeffding_bound &&
                    std::abs(e.estimate.imag() - e.exact_amplitude.imag()) <= e.hoeffding_bound;
    inside += ok;
  }
  EXPECT_GE(inside, 18);
}

TEST(Estimate, SampledIsReproducible) {
  TangleProgram p = random_program(4);
  PathRep r = PathRep::for_width(1.8, max_width(p));
  EstimateOptions o;
  o.mode = EstimateMode::Sampled;
  o.samples = 5000;
  o.seed = 99;
  EXPECT_EQ(hadamard_estimate(p, r, o).estimate, hadamard_estimate(p, r, o).estimate);
}

TEST(Estimate, WidthCap) {
  EstimateOptions o;
  o.max_qubits = 4;
  try {
    hadamard_estimate(plat_program(2, {}), PathRep::for_width(2.5, 8), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WidthExceeded);
  }
}

TEST(Rng, CounterUniform) {
  double mean = 0.0;
  for (std::uint64_t k = 0; k < 100000; ++k) {
    const double x = counter_uniform(5, k);
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
    mean += x;
  }
  EXPECT_NEAR(mean / 100000, 0.5, 0.01);
  EXPECT_EQ(counter_uniform(5, 17), counter_uniform(5, 17));
  EXPECT_NE(counter_uniform(5, 17), counter_uniform(6, 17));
}
