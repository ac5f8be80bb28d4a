#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tutte_tl/tangle.hpp"

namespace ttl {

using Path = std::vector<std::uint8_t>;

struct PathBasis {
  int n = 0;                  // step count
  int start = 1;
  std::optional<int> end;
  std::vector<Path> paths;    // n+1 labels each, lexicographic order
  std::map<Path, int> index;

  int dim() const { return static_cast<int>(paths.size()); }
  int find(const Path& p) const {
    auto it = index.find(p);
    return it == index.end() ? -1 : it->second;
  }
};
using BasisPtr = std::shared_ptr<const PathBasis>;

// Represented operator: exp(log_scale) * m, from domain to codomain.
struct OperatorMatrix {
  BasisPtr domain;
  BasisPtr codomain;
  Mat m;
  double log_scale = 0.0;
  double norm_m = 0.0;  // 2-norm of m
  std::vector<std::tuple<int, int, cplx>> nz;  // sparse copy of m when it is sparse

  OperatorMatrix() = default;
  OperatorMatrix(BasisPtr dom, BasisPtr cod, Mat mat, double log_scale = 0.0);

  double norm() const { return norm_m * std::exp(log_scale); }
  double log_norm() const { return std::log(norm_m) + log_scale; }
  Mat dense() const { return m * std::exp(log_scale); }
  // m * x, ignoring log_scale
  Mat apply(const Mat& x) const;
};
using OpPtr = std::shared_ptr<const OperatorMatrix>;

class PathRep {
 public:
  // pi up to n_max entries or the first vanishing one.
  static PathRep compute(cplx d, int n_max, double tol_vanish = 1e-12);
  // Caller-supplied truncation (e.g. m = 5 for d = sqrt 3).
  static PathRep with_truncation(cplx d, int m);
  // Enough labels for every path space of a program of the given width.
  static PathRep for_width(cplx d, int width, double tol_vanish = 1e-12);

  cplx d() const { return d_; }
  cplx q() const { return d_ * d_; }
  const std::vector<cplx>& pi() const { return pi_; }
  int m() const { return m_; }
  bool truncated() const { return truncated_; }
  bool hermitian() const { return hermitian_; }
  double tol_vanish() const { return tol_; }

  // (a_{l,k}, b_{l,k}); up-steps use the principal root, down-steps its reciprocal.
  // Each pair is rounded within a few ulps so that a * b == 1 holds exactly.
  std::pair<cplx, cplx> coeffs(int l, int k) const;
  cplx a(int l, int k) const { return coeffs(l, k).first; }
  cplx b(int l, int k) const { return coeffs(l, k).second; }

  BasisPtr basis(int n, int start = 1, std::optional<int> end = {}) const;

 private:
  void build_coeffs();
  cplx d_;
  std::vector<cplx> pi_;
  int m_ = 0;
  bool truncated_ = false;
  bool hermitian_ = false;
  double tol_ = 1e-12;
  std::vector<std::pair<cplx, cplx>> up_;  // (a_{k+1,k}, b_{k+1,k})
  struct Cache {
    std::mutex mu;
    std::map<std::tuple<int, int, int>, BasisPtr> bases;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

PathRep compute_pi(cplx d, int n_max, double tol_vanish = 1e-12);
std::pair<cplx, cplx> coeffs(const PathRep& rep, int l, int k);
PathBasis enumerate_paths(const PathRep& rep, int n, int start = 1, std::optional<int> end = {});

OperatorMatrix op_cup(const PathRep& rep, int i, const BasisPtr& domain);
OperatorMatrix op_cap(const PathRep& rep, int i, const BasisPtr& domain);
OperatorMatrix op_phi(const PathRep& rep, int i, const BasisPtr& domain);
OperatorMatrix op_cross(const PathRep& rep, int i, cplx u, const BasisPtr& domain);
OperatorMatrix op_prim(const PathRep& rep, const TanglePrim& p, const BasisPtr& domain);

OperatorMatrix op_cup(const PathRep& rep, int i, int n);
OperatorMatrix op_cap(const PathRep& rep, int i, int n);
OperatorMatrix op_phi(const PathRep& rep, int i, int n);
OperatorMatrix op_cross(const PathRep& rep, int i, cplx u, int n);

// Matrices in application order; identical prims share one matrix.
std::vector<OpPtr> rep_of_program(const PathRep& rep, const TangleProgram& prog);

bool hermitian_check(const PathRep& rep);

// Restriction of sigma_i(u) to the span of `sub` (paths of the full space
// `full`), divided by det^{1/dim} (principal root).
Mat normalized_crossing(const PathRep& rep, int i, cplx u, const PathBasis& sub);
Mat restrict_to(const Mat& full_op, const PathBasis& full, const PathBasis& sub, double leak_tol = 1e-10);

Mat compose(const std::vector<OpPtr>& ops);

}  // namespace ttl
