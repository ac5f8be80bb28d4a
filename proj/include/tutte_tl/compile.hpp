#pragma once

#include <array>
#include <memory>
#include <mutex>

#include "tutte_tl/circuit.hpp"
#include "tutte_tl/params.hpp"
#include "tutte_tl/sk.hpp"

namespace ttl {

// Action of the pair (sigma_i, sigma_{i+1}) on K:
// K = S (M + ... + M + 1) S^-1 with one 2x2 copy per two-dimensional irrep.
struct PairModel {
  int i = 1;
  int copies = 0;
  Mat S, Sinv;
  Mat phi_a, phi_b;     // 2x2 model of Phi_i, Phi_{i+1}
  double residual = 0;  // intertwining residual

  Mat embed(const Mat& M) const;         // S (M + ... + M + 1) S^-1
  Mat embed_linear(const Mat& X) const;  // S (X + ... + X + 0) S^-1
};
PairModel pair_model(const KSpace& k, int i, double tol = 1e-9);

// Crossing letters: generator g is sigma_{g+1}; the inverse flag selects the
// inverse weight. Letters are normalized by c so that c_v c_w = vw/q (odd) or 1 (even).
struct CrossingAlphabet {
  cplx d, q;
  cplx v_odd, w_odd, v_even, w_even;
  cplx c_v_odd, c_w_odd, c_v_even, c_w_even;

  cplx weight(int i, bool inv) const;
  cplx u(int i, bool inv) const { return weight(i, inv) / d; }
  cplx norm(int i, bool inv) const;
  // Normalized 2x2 model letter with projector Phi for crossing parity of i.
  Mat model(int i, const Mat& Phi, bool inv) const;
};
CrossingAlphabet crossing_alphabet(const ParamSet& p);

struct CompileOptions {
  int layers = 14;
  int restarts = 16;
  std::uint64_t seed = 1;
  int net_depth = 16;
  double net_eps0 = 0.15;
  int max_sk_depth = 6;
  bool improved = false;
};

struct CompiledGate {
  SKResult result;              // word over generators 0..6 (sigma_1..sigma_7), matrix = rho(T)/Delta_T on K,
                                // error_bound = L_8 distance to the encoded gate
  double k_error = 0.0;         // distance on all of K to U + lambda 1
  cplx lambda{1.0, 0.0};        // phase on the non-legitimate paths
  int elements = 0;             // pair-local factors
  double decomposition_residual = 0.0;
  double improved_norm = -1.0;  // ||rho(T)/Delta_T|| on H*_8 representatives (improved mode)

  // Application order (first applied first), u = weight / d.
  CrossingWord crossings(const CrossingAlphabet& a) const;
};

// Encodes a 4x4 gate into K (fixed K order) with phase lambda on the other paths.
Mat encode_gate_k(const Mat& U, cplx lambda);

class GateCompiler {
 public:
  GateCompiler(const ParamSet& params, CompileOptions opt = {});
  CompiledGate compile(const Mat& U, double epsilon) const;

  const ParamSet& params() const { return params_; }
  const KSpace& kspace() const { return *k_; }
  const CrossingAlphabet& alphabet() const { return alpha_; }
  const PairModel& pair(int i) const { return pairs_[i - 1]; }
  const Net& net_for_pair(int i) const { return i % 2 == 1 ? *net_odd_ : *net_even_; }
  GroupKind kind() const { return kind_; }
  // Normalized K letters (sigma / c).
  WordEvaluator k_evaluator() const;
  // Delta_T from letter counts.
  Scaled delta_of(const WordPtr& w) const;
  // Product of pair-local factors in application order.
  Mat layered_product(const std::vector<Mat>& factors) const;
  // Factors M_k with layered_product(M) ~ T; returns residual.
  double decompose(const Mat& T, std::vector<Mat>& factors) const;

 private:
  ParamSet params_;
  CompileOptions opt_;
  std::unique_ptr<KSpace> k_;
  CrossingAlphabet alpha_;
  std::array<PairModel, 6> pairs_;
  GroupKind kind_ = GroupKind::SU;
  std::shared_ptr<Net> net_odd_, net_even_;
  std::vector<Mat> factor_basis_;
};

// Uses a cached compiler per parameter set.
CompiledGate compile_gate(const Mat& U, double epsilon, const ParamSet& params, const CompileOptions& opt = {});
std::shared_ptr<const GateCompiler> cached_compiler(const ParamSet& params, const CompileOptions& opt = {});

}  // namespace ttl
