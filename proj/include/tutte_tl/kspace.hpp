#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tutte_tl/path_rep.hpp"

namespace ttl {

constexpr int kKDim = 14;
constexpr int kKSteps = 8;

// 1-based K positions; each block is a sorted list of positions.
using Blocks = std::vector<std::vector<int>>;

struct KSpace {
  PathRep rep;
  PathBasis basis;           // the 14 paths of H_{8,1->1} in the fixed K order
  std::vector<int> lex_of;   // table position (0-based) -> index in the lexicographic basis
  std::array<Mat, 7> phi;    // phi[i-1] = Phi_i on K

  // sigma_i(u) on K: u + Phi_i for odd i, 1 + u Phi_i for even i.
  Mat sigma(int i, cplx u) const;
  // Positions of the qubit codewords: index 2*b1 + b2 -> 0-based K position.
  static std::array<int, 4> legit_positions() { return {0, 2, 1, 3}; }
  // Reorders an operator given in the lexicographic basis of H_{8,1->1}.
  Mat from_lex(const Mat& lex_op) const;
};

// pre: labels 1..5 available (truncated at >= 5 or untruncated with >= 5 entries).
KSpace build_k_space(const PathRep& rep);

Blocks phi_blocks(const Mat& phi, double tol = 1e-10);
std::array<Blocks, 7> block_structure(const KSpace& k, double tol = 1e-10);

struct SubspaceDim {
  int start;
  int end;
  int dim;
};
// Every nonempty H_{n,k->l}.
std::vector<SubspaceDim> subspace_dims(const PathRep& rep, int n = 8);

// 4-step encoding: |0> = 12121, |1> = 12321 per qubit.
struct QubitEncoding {
  int n = 0;
  BasisPtr space;                 // H_{4n,1->1}
  std::vector<int> code_index;    // bit string (qubit 1 most significant) -> basis index

  int legit_dim() const { return static_cast<int>(code_index.size()); }
  Mat isometry() const;           // dim(space) x 2^n
  Mat projector() const;
  // ||A P_L||, the semi-norm restricted to legitimate inputs.
  double seminorm(const Mat& A) const;
};

Path qubit_path(std::uint64_t bits, int n);
QubitEncoding encode_qubits(const PathRep& rep, int n);

}  // namespace ttl
