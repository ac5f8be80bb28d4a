#pragma once

#include <cstdint>
#include <vector>

#include "tutte_tl/evaluator.hpp"

namespace ttl {

// M = U * P with U unitary and P = (M^dagger M)^{1/2}.
struct Polar {
  Mat U;
  Mat P;
};
Polar polar_decompose(const Mat& M);

struct DilatedStep {
  Mat unitary;             // 2N x 2N, row/col index = ancilla * N + i
  double norm_factor = 0;  // ||M||
  int ancilla_index = 0;
  Mat p_rotation;          // dilation of the positive factor alone, for the column check
  Mat singular_basis;      // right singular vectors of M
  Eigen::VectorXd ratios;  // s_i / s_1
};

// Unitary whose ancilla-|0> block is M / ||M||.
DilatedStep dilate(const Mat& M);

struct RegisterPlan {
  int bits_per_register = 1;
  int max_label = 1;
  int peak_registers = 1;
  int total_qubits = 2;               // peak registers plus one live ancilla
  std::vector<int> registers_after;   // per step
};

RegisterPlan encode_registers(const PathRep& rep, const TangleProgram& prog);

enum class EstimateMode { Exact, Sampled };

struct EstimateOptions {
  EstimateMode mode = EstimateMode::Exact;
  long long samples = 100000;
  std::uint64_t seed = 1;
  double delta = 0.01;       // confidence 1 - delta
  bool grouped = false;      // simulate group matrices instead of prims
  int max_qubits = 62;
};

struct EstimateReport {
  cplx estimate;             // normalized amplitude estimate
  cplx exact_amplitude;      // <1,0..0| U_N..U_1 |1,0..0>
  double log_scale = 0.0;    // log of Delta_alg (or Delta_grp when grouped)
  double log_step_norms = 0.0;  // log of the product of dilation norm factors
  Scaled z_estimate;         // d^{|V|} * prod norms * estimate
  long long samples = 0;
  std::uint64_t seed = 0;
  double hoeffding_bound = 0.0;  // per part, normalized units
  int qubits = 0;
  int vertex_count = 0;

  double scale() const { return std::exp(log_scale); }
};

EstimateReport hadamard_estimate(const TangleProgram& prog, const PathRep& rep, const EstimateOptions& opt = {});

// Counter-based uniform in [0,1) keyed by (seed, counter).
double counter_uniform(std::uint64_t seed, std::uint64_t counter);

}  // namespace ttl
