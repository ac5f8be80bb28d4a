#include "tutte_tl/kspace.hpp"

#include <algorithm>
#include <numeric>

namespace ttl {

namespace {

// Fixed order of K, as lexicographic ranks (1-based) of the 14 paths.
constexpr std::array<int, kKDim> kTableOrder = {1, 6, 2, 7, 3, 8, 4, 9, 5, 11, 12, 10, 13, 14};

}  // namespace

Mat KSpace::sigma(int i, cplx u) const {
  if (i < 1 || i > 7) throw Error(ErrorCode::IndexOutOfWidth, "crossing " + std::to_string(i) + " on K");
  const Mat id = Mat::Identity(kKDim, kKDim);
  return i % 2 == 1 ? Mat(u * id + phi[i - 1]) : Mat(id + u * phi[i - 1]);
}

Mat KSpace::from_lex(const Mat& lex_op) const {
  Mat out(kKDim, kKDim);
  for (int r = 0; r < kKDim; ++r)
    for (int c = 0; c < kKDim; ++c) out(r, c) = lex_op(lex_of[r], lex_of[c]);
  return out;
}

KSpace build_k_space(const PathRep& rep) {
  if (rep.m() < 5)
    throw Error(ErrorCode::TruncationExceeded, "K needs labels up to 5, representation has " + std::to_string(rep.m()));
  auto lex = rep.basis(kKSteps, 1, 1);
  if (lex->dim() != kKDim)
    throw Error(ErrorCode::TruncationExceeded, "H_{8,1->1} has dimension " + std::to_string(lex->dim()));
  KSpace k{rep, PathBasis{}, {}, {}};
  k.basis.n = kKSteps;
  k.basis.start = 1;
  k.basis.end = 1;
  for (int pos = 0; pos < kKDim; ++pos) {
    const int li = kTableOrder[pos] - 1;
    k.lex_of.push_back(li);
    k.basis.index[lex->paths[li]] = pos;
    k.basis.paths.push_back(lex->paths[li]);
  }
  for (int i = 1; i <= 7; ++i) k.phi[i - 1] = k.from_lex(op_phi(rep, i, lex).m);
  return k;
}

Blocks phi_blocks(const Mat& phi, double tol) {
  const int n = static_cast<int>(phi.rows());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> live(n, false);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (std::abs(phi(r, c)) > tol) {
        live[r] = live[c] = true;
        parent[find(r)] = find(c);
      }
  std::vector<std::vector<int>> by_root(n);
  for (int x = 0; x < n; ++x)
    if (live[x]) by_root[find(x)].push_back(x + 1);
  Blocks out;
  for (auto& b : by_root)
    if (!b.empty()) out.push_back(b);
  std::sort(out.begin(), out.end());
  return out;
}

std::array<Blocks, 7> block_structure(const KSpace& k, double tol) {
  std::array<Blocks, 7> out;
  for (int i = 0; i < 7; ++i) out[i] = phi_blocks(k.phi[i], tol);
  return out;
}

std::vector<SubspaceDim> subspace_dims(const PathRep& rep, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative step count");
  if (!rep.truncated() && rep.m() < n + 1)
    throw Error(ErrorCode::TruncationExceeded,
                "paths of " + std::to_string(n) + " steps need label " + std::to_string(n + 1));
  const int top = std::min(rep.m(), n + 1);
  std::vector<SubspaceDim> out;
  for (int s = 1; s <= top; ++s)
    for (int e = 1; e <= top; ++e) {
      int dim = enumerate_paths(rep, n, s, e).dim();
      if (dim > 0) out.push_back({s, e, dim});
    }
  return out;
}

Path qubit_path(std::uint64_t bits, int n) {
  Path p{1};
  for (int j = 0; j < n; ++j) {
    const bool one = (bits >> (n - 1 - j)) & 1u;
    for (int x : {2, one ? 3 : 1, 2, 1}) p.push_back(static_cast<std::uint8_t>(x));
  }
  return p;
}

QubitEncoding encode_qubits(const PathRep& rep, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "qubit count must be >= 1");
  if (n > 20) throw Error(ErrorCode::WidthExceeded, "too many qubits for an explicit encoding");
  if (rep.m() < 3) throw Error(ErrorCode::TruncationExceeded, "encoding needs labels up to 3");
  QubitEncoding enc;
  enc.n = n;
  enc.space = rep.basis(4 * n, 1, 1);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t b = 0; b < count; ++b) enc.code_index.push_back(enc.space->find(qubit_path(b, n)));
  return enc;
}

Mat QubitEncoding::isometry() const {
  Mat v = Mat::Zero(space->dim(), legit_dim());
  for (int b = 0; b < legit_dim(); ++b) v(code_index[b], b) = 1.0;
  return v;
}

Mat QubitEncoding::projector() const {
  Mat v = isometry();
  return v * v.adjoint();
}

double QubitEncoding::seminorm(const Mat& A) const { return op_norm(A * isometry()); }

}  // namespace ttl
