#include <gtest/gtest.h>

#include <map>

#include "tutte_tl/kspace.hpp"
#include "tutte_tl/params.hpp"

using namespace ttl;

namespace {

const std::array<Blocks, 7> kTable = {{
    {{1}, {3}, {5}, {7}, {9}},
    {{1, 2}, {3, 4}, {5, 6}, {7, 8}, {9, 12}},
    {{1}, {3}, {6, 10}, {8, 11}, {12, 13}},
    {{1, 5}, {2, 6}, {3, 7}, {4, 8}, {13, 14}},
    {{1}, {2}, {7, 9}, {8, 12}, {11, 13}},
    {{1, 3}, {2, 4}, {5, 7}, {6, 8}, {10, 11}},
    {{1}, {2}, {5}, {6}, {10}},
}};

std::vector<ParamSet> all_sets() {
  return {example_params(ExampleSet::Unitary), example_params(ExampleSet::Complex), example_params(ExampleSet::Real)};
}

double unitarity(const Mat& U) { return (U.adjoint() * U - Mat::Identity(U.cols(), U.cols())).norm(); }

}  // namespace

TEST(KSpace, Dimension) {
  for (const auto& p : all_sets()) {
    KSpace k = build_k_space(rep_for_params(p));
    EXPECT_EQ(k.basis.dim(), 14);
    for (int i = 0; i < 7; ++i) EXPECT_EQ(k.phi[i].rows(), 14);
  }
  EXPECT_EQ(build_k_space(PathRep::compute(cplx(2.2, 0.5), 9)).basis.dim(), 14);
}

TEST(KSpace, NeedsFiveLabels) {
  try {
    build_k_space(PathRep::compute(2.5, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TruncationExceeded);
  }
}

TEST(KSpace, BlockTable) {
  for (const auto& p : all_sets()) {
    auto bs = block_structure(build_k_space(rep_for_params(p)));
    for (int i = 0; i < 7; ++i) EXPECT_EQ(bs[i], kTable[i]) << "Phi_" << i + 1;
  }
}

TEST(KSpace, SeedBlocks) {
  const cplx d(2.2, 0.5);
  KSpace k = build_k_space(PathRep::compute(d, 9));
  Mat e1 = Mat::Zero(2, 2);
  e1(0, 0) = d;
  EXPECT_LT((k.phi[0].topLeftCorner(2, 2) - e1).norm(), 1e-12);
  const cplx s = std::sqrt(d * d - 1.0);
  Mat e2(2, 2);
  e2 << 1.0, s, s, s * s;
  EXPECT_LT((k.phi[1].topLeftCorner(2, 2) - e2 / d).norm(), 1e-12);
}

TEST(KSpace, InvariantInsideH8) {
  for (const auto& p : all_sets()) {
    PathRep r = rep_for_params(p);
    KSpace k = build_k_space(r);
    BasisPtr full = r.basis(8, 1);
    for (int i = 1; i <= 7; ++i) {
      Mat s = op_cross(r, i, p.v1 / p.d, full).dense();
      EXPECT_NO_THROW(restrict_to(s, *full, k.basis, 1e-10)) << "sigma_" << i;
    }
  }
}

TEST(KSpace, InversePairs) {
  for (const auto& p : all_sets()) {
    KSpace k = build_k_space(rep_for_params(p));
    const Mat I = Mat::Identity(14, 14);
    for (int i = 1; i <= 7; ++i) {
      if (i % 2 == 1) {
        for (cplx v : p.W_odd) {
          const cplx w = odd_inverse(p.q, v);
          const Mat prod = k.sigma(i, v / p.d) * k.sigma(i, w / p.d);
          EXPECT_LT((prod - (v * w / p.q) * I).norm(), 1e-12 * std::max(1.0, std::abs(v * w / p.q)));
        }
      } else {
        for (cplx v : p.W_even) {
          const cplx w = even_inverse(v);
          EXPECT_LT((k.sigma(i, v / p.d) * k.sigma(i, w / p.d) - I).norm(), 1e-12);
        }
      }
    }
  }
}

TEST(KSpace, UnitaryTypeCrossings) {
  ParamSet p = example_params(ExampleSet::Unitary);
  KSpace k = build_k_space(rep_for_params(p));
  for (int i = 1; i <= 7; ++i) {
    const auto& W = i % 2 == 1 ? p.W_odd : p.W_even;
    for (cplx v : W) {
      const cplx u = v / p.d;
      const Mat s = k.sigma(i, u);
      if (i % 2 == 1) EXPECT_LT(unitarity(s / std::abs(u)), 1e-10);
      else EXPECT_LT(unitarity(s), 1e-10);
    }
  }
}

TEST(Dims, Sqrt3Table) {
  auto dims = subspace_dims(PathRep::with_truncation(std::sqrt(3.0), 5));
  std::map<int, int> mult;
  int total = 0;
  for (const auto& s : dims) {
    ++mult[s.dim];
    total += s.dim;
    EXPECT_EQ((s.start - s.end) % 2, 0);
  }
  EXPECT_EQ(mult, (std::map<int, int>{{13, 2}, {14, 2}, {27, 4}, {40, 2}, {41, 2}, {54, 1}}));
  EXPECT_EQ(total, 378);
}

TEST(Encoding, SingleQubitPaths) {
  EXPECT_EQ(qubit_path(0, 1), (Path{1, 2, 1, 2, 1}));
  EXPECT_EQ(qubit_path(1, 1), (Path{1, 2, 3, 2, 1}));
  EXPECT_EQ(qubit_path(0b10, 2), (Path{1, 2, 3, 2, 1, 2, 1, 2, 1}));
}

TEST(Encoding, LegitimateSubspace) {
  PathRep r = PathRep::with_truncation(std::sqrt(3.0), 5);
  for (int n = 1; n <= 3; ++n) {
    QubitEncoding e = encode_qubits(r, n);
    EXPECT_EQ(e.legit_dim(), 1 << n);
    if (n >= 2) EXPECT_LT(e.legit_dim(), e.space->dim());
    else EXPECT_EQ(e.space->dim(), 2);
    for (int idx : e.code_index) EXPECT_GE(idx, 0);
    Mat V = e.isometry();
    EXPECT_LT((V.adjoint() * V - Mat::Identity(1 << n, 1 << n)).norm(), 1e-14);
    Mat P = e.projector();
    EXPECT_LT((P * P - P).norm(), 1e-14);
    EXPECT_NEAR(e.seminorm(Mat::Identity(e.space->dim(), e.space->dim()) - P), 0.0, 1e-14);
  }
}

TEST(Encoding, LegitPositionsInK) {
  KSpace k = build_k_space(rep_for_params(example_params(ExampleSet::Unitary)));
  const auto pos = KSpace::legit_positions();
  for (std::uint64_t b = 0; b < 4; ++b) EXPECT_EQ(k.basis.paths[pos[b]], qubit_path(b, 2)) << b;
}
