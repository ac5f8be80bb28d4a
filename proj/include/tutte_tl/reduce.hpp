#pragma once

#include <vector>

#include "tutte_tl/circuit.hpp"
#include "tutte_tl/compile.hpp"
#include "tutte_tl/tangle.hpp"

namespace ttl {

struct ReduceOptions {
  double epsilon = 0.01;      // total budget, split evenly over compiled gates
  bool exact_gates = false;   // use gate.word where present instead of compiling gate.m
  bool evaluate = true;       // compute Z_G / Delta_hard with the exact evaluator
  CompileOptions compile;
};

struct ReductionReport {
  TangleProgram program;       // plat program with one group per gate
  WeightedGraph graph;
  Scaled delta_hard;           // q^{|V|-|E_odd|} prod_{odd} v_e
  int vertex_count = 0;
  int odd_edges = 0;
  bool vertex_identity = false;  // |V| = 2n + |E_odd|
  std::vector<double> gate_errors;   // L_8 distance of each gate word from its target
  std::vector<std::size_t> gate_lengths;
  std::vector<Mat> gate_targets;     // 4x4 gates used for the circuit amplitude
  cplx amplitude{0.0, 0.0};          // <0...0| U |0...0>
  bool evaluated = false;
  Scaled z_value;
  cplx z_ratio{0.0, 0.0};            // Z_G / Delta_hard
  double amplitude_check = 0.0;      // |z_ratio - amplitude|
  double bound = 0.0;                // sum of gate errors

  double log_delta_hard() const { return delta_hard.log_abs(); }
};

// errors: InvalidArgument, NotAdjacent, plus compile_gate errors.
ReductionReport reduce_circuit(const Circuit& c, const ParamSet& params, const ReduceOptions& opt = {});

// Exact image of an 8-strand crossing word on K divided by Delta_w (product of odd u).
Mat word_image_k(const KSpace& k, const CrossingWord& w);
// Gate realised on the qubit pair by a crossing word: legitimate block of word_image_k.
Mat word_gate(const KSpace& k, const CrossingWord& w);

// Statevector of U |0...0>, qubit 1 most significant.
Vec circuit_state(int n, const std::vector<std::pair<int, Mat>>& gates);
cplx circuit_amplitude(int n, const std::vector<std::pair<int, Mat>>& gates);
cplx circuit_amplitude(const Circuit& c);

// Real-orthogonal equivalent on n+1 qubits with the flag qubit last; complex one-qubit
// gates A = R + iI become R (x) 1 + I (x) J on (target, flag) via adjacent SWAPs.
// errors: UnsupportedGateForm for complex gates not of the form A (x) 1 or 1 (x) A.
Circuit real_circuit_lift(const Circuit& c, double tol = 1e-10);

}  // namespace ttl
