#include "tutte_tl/path_rep.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace ttl {

OperatorMatrix::OperatorMatrix(BasisPtr dom, BasisPtr cod, Mat mat, double ls)
    : domain(std::move(dom)), codomain(std::move(cod)), m(std::move(mat)), log_scale(ls) {
  norm_m = op_norm(m);
  std::size_t count = 0;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (m(r, c) != cplx(0.0, 0.0)) ++count;
  if (4 * count <= static_cast<std::size_t>(m.size())) {
    nz.reserve(count);
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        if (m(r, c) != cplx(0.0, 0.0)) nz.emplace_back(static_cast<int>(r), static_cast<int>(c), m(r, c));
  }
}

Mat OperatorMatrix::apply(const Mat& x) const {
  if (nz.empty()) return m * x;
  Mat out = Mat::Zero(m.rows(), x.cols());
  for (const auto& [r, c, v] : nz) out.row(r) += v * x.row(c);
  return out;
}

namespace {

double ulps(double x, int k) {
  for (; k > 0; --k) x = std::nextafter(x, HUGE_VAL);
  for (; k < 0; ++k) x = std::nextafter(x, -HUGE_VAL);
  return x;
}

// Nearest (a, b) to (a0, 1/a0) within a few ulps with a * b == 1 in floating point.
std::pair<cplx, cplx> exact_pair(cplx a0) {
  for (int ra = 0; ra <= 3; ++ra)
    for (int ia = -ra; ia <= ra; ++ia)
      for (int ja = -ra; ja <= ra; ++ja) {
        if (std::max(std::abs(ia), std::abs(ja)) != ra) continue;
        const cplx a(ulps(a0.real(), ia), ulps(a0.imag(), ja));
        const cplx b0 = 1.0 / a;
        for (int rb = 0; rb <= 8; ++rb)
          for (int ib = -rb; ib <= rb; ++ib)
            for (int jb = -rb; jb <= rb; ++jb) {
              if (std::max(std::abs(ib), std::abs(jb)) != rb) continue;
              const cplx b(ulps(b0.real(), ib), ulps(b0.imag(), jb));
              if (a * b == cplx(1.0, 0.0)) return {a, b};
            }
      }
  return {a0, 1.0 / a0};
}

}  // namespace

void PathRep::build_coeffs() {
  up_.clear();
  for (int k = 1; k < m_; ++k) up_.push_back(exact_pair(std::sqrt(pi_[k] / pi_[k - 1])));
}

PathRep PathRep::compute(cplx d, int n_max, double tol) {
  if (d == cplx(0.0, 0.0)) throw Error(ErrorCode::DegenerateLoopValue, "d = 0");
  if (n_max < 1) n_max = 1;
  PathRep r;
  r.d_ = d;
  r.tol_ = tol;
  r.pi_.push_back(1.0);
  const double base = std::max(1.0, std::abs(d));
  for (int i = 2; i <= n_max; ++i) {
    cplx prev2 = i >= 3 ? r.pi_[i - 3] : cplx(0.0, 0.0);
    cplx next = d * r.pi_[i - 2] - prev2;
    if (std::abs(next) <= tol * std::pow(base, i)) {
      if (i == 2) throw Error(ErrorCode::DegenerateLoopValue, "pi_2 = d vanishes");
      r.truncated_ = true;
      break;
    }
    r.pi_.push_back(next);
  }
  r.m_ = static_cast<int>(r.pi_.size());
  r.hermitian_ = std::all_of(r.pi_.begin(), r.pi_.end(), [&](cplx p) {
    return p.real() > 0.0 && std::abs(p.imag()) <= 1e-12 * std::max(1.0, std::abs(p));
  });
  r.build_coeffs();
  return r;
}

PathRep PathRep::with_truncation(cplx d, int m) {
  if (d == cplx(0.0, 0.0)) throw Error(ErrorCode::DegenerateLoopValue, "d = 0");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "truncation must be >= 1");
  PathRep r = compute(d, m, 0.0);
  r.truncated_ = true;
  return r;
}

PathRep PathRep::for_width(cplx d, int width, double tol) { return compute(d, std::max(2, width + 1), tol); }

std::pair<cplx, cplx> PathRep::coeffs(int l, int k) const {
  if (std::abs(l - k) != 1) throw Error(ErrorCode::NotAdjacent, std::to_string(l) + "," + std::to_string(k));
  if (l < 1 || k < 1 || l > m_ || k > m_)
    throw Error(ErrorCode::OutOfRange, std::to_string(l) + "," + std::to_string(k));
  // up-step: principal root; down-step: its reciprocal
  if (l == k + 1) return up_[k - 1];
  const auto& [a, b] = up_[l - 1];
  return {b, a};
}

BasisPtr PathRep::basis(int n, int start, std::optional<int> end) const {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative step count");
  int maxl = start + n;
  if (end) maxl = std::min(maxl, (start + *end + n) / 2);
  if (!truncated_ && maxl > m_)
    throw Error(ErrorCode::TruncationExceeded,
                "paths of " + std::to_string(n) + " steps need label " + std::to_string(maxl) +
                    " but pi was computed to " + std::to_string(m_));
  auto key = std::make_tuple(n, start, end.value_or(0));
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto it = cache_->bases.find(key);
  if (it != cache_->bases.end()) return it->second;
  auto b = std::make_shared<PathBasis>(enumerate_paths(*this, n, start, end));
  if (b->dim() > 8192) throw Error(ErrorCode::WidthExceeded, "path space dimension " + std::to_string(b->dim()));
  cache_->bases[key] = b;
  return b;
}

PathRep compute_pi(cplx d, int n_max, double tol_vanish) { return PathRep::compute(d, n_max, tol_vanish); }

std::pair<cplx, cplx> coeffs(const PathRep& rep, int l, int k) { return rep.coeffs(l, k); }

PathBasis enumerate_paths(const PathRep& rep, int n, int start, std::optional<int> end) {
  PathBasis b;
  b.n = n;
  b.start = start;
  b.end = end;
  if (start < 1 || start > rep.m()) return b;
  Path p{static_cast<std::uint8_t>(start)};
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(p.size()) == n + 1) {
      if (!end || p.back() == *end) {
        b.index[p] = b.dim();
        b.paths.push_back(p);
      }
      return;
    }
    const int k = p.back();
    const int remaining = n + 1 - static_cast<int>(p.size());
    for (int x : {k - 1, k + 1}) {
      if (x < 1 || x > rep.m()) continue;
      if (end && std::abs(x - *end) > remaining - 1) continue;
      p.push_back(static_cast<std::uint8_t>(x));
      self(self);
      p.pop_back();
    }
  };
  rec(rec);
  return b;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::IndexOutOfWidth, what);
}

}  // namespace

OperatorMatrix op_cup(const PathRep& rep, int i, const BasisPtr& dom) {
  require(i >= 1 && i <= dom->n + 1, "cup at " + std::to_string(i) + " on width " + std::to_string(dom->n));
  auto cod = rep.basis(dom->n + 2, dom->start, dom->end);
  Mat m = Mat::Zero(cod->dim(), dom->dim());
  for (int c = 0; c < dom->dim(); ++c) {
    const Path& p = dom->paths[c];
    const int k = p[i - 1];
    for (int l : {k - 1, k + 1}) {
      if (l < 1 || l > rep.m()) continue;
      Path q(p.begin(), p.begin() + i);
      q.push_back(static_cast<std::uint8_t>(l));
      q.push_back(static_cast<std::uint8_t>(k));
      q.insert(q.end(), p.begin() + i, p.end());
      int r = cod->find(q);
      if (r >= 0) m(r, c) += rep.a(l, k);
    }
  }
  return OperatorMatrix(dom, cod, std::move(m));
}

OperatorMatrix op_cap(const PathRep& rep, int i, const BasisPtr& dom) {
  require(i >= 1 && i + 1 <= dom->n, "cap at " + std::to_string(i) + " on width " + std::to_string(dom->n));
  auto cod = rep.basis(dom->n - 2, dom->start, dom->end);
  Mat m = Mat::Zero(cod->dim(), dom->dim());
  for (int c = 0; c < dom->dim(); ++c) {
    const Path& p = dom->paths[c];
    if (p[i - 1] != p[i + 1]) continue;
    Path q(p.begin(), p.begin() + i);
    q.insert(q.end(), p.begin() + i + 2, p.end());
    int r = cod->find(q);
    if (r >= 0) m(r, c) += rep.b(p[i - 1], p[i]);
  }
  return OperatorMatrix(dom, cod, std::move(m));
}

namespace {

Mat phi_matrix(const PathRep& rep, int i, const PathBasis& dom) {
  Mat m = Mat::Zero(dom.dim(), dom.dim());
  for (int c = 0; c < dom.dim(); ++c) {
    const Path& p = dom.paths[c];
    if (p[i - 1] != p[i + 1]) continue;
    const int k = p[i - 1];
    const cplx bk = rep.b(k, p[i]);
    for (int l : {k - 1, k + 1}) {
      if (l < 1 || l > rep.m()) continue;
      Path q = p;
      q[i] = static_cast<std::uint8_t>(l);
      int r = dom.find(q);
      if (r >= 0) m(r, c) += rep.a(l, k) * bk;
    }
  }
  return m;
}

}  // namespace

OperatorMatrix op_phi(const PathRep& rep, int i, const BasisPtr& dom) {
  require(i >= 1 && i + 1 <= dom->n, "phi at " + std::to_string(i) + " on width " + std::to_string(dom->n));
  return OperatorMatrix(dom, dom, phi_matrix(rep, i, *dom));
}

OperatorMatrix op_cross(const PathRep& rep, int i, cplx u, const BasisPtr& dom) {
  require(i >= 1 && i + 1 <= dom->n, "crossing at " + std::to_string(i) + " on width " + std::to_string(dom->n));
  Mat phi = phi_matrix(rep, i, *dom);
  Mat id = Mat::Identity(dom->dim(), dom->dim());
  Mat m = (i % 2 == 1) ? Mat(u * id + phi) : Mat(id + u * phi);
  return OperatorMatrix(dom, dom, std::move(m));
}

OperatorMatrix op_prim(const PathRep& rep, const TanglePrim& p, const BasisPtr& dom) {
  switch (p.kind) {
    case PrimKind::Cup: return op_cup(rep, p.i, dom);
    case PrimKind::Cap: return op_cap(rep, p.i, dom);
    case PrimKind::Cross: return op_cross(rep, p.i, p.u, dom);
  }
  throw Error(ErrorCode::InvalidProgram, "unknown prim");
}

OperatorMatrix op_cup(const PathRep& rep, int i, int n) { return op_cup(rep, i, rep.basis(n)); }
OperatorMatrix op_cap(const PathRep& rep, int i, int n) { return op_cap(rep, i, rep.basis(n)); }
OperatorMatrix op_phi(const PathRep& rep, int i, int n) { return op_phi(rep, i, rep.basis(n)); }
OperatorMatrix op_cross(const PathRep& rep, int i, cplx u, int n) { return op_cross(rep, i, u, rep.basis(n)); }

std::vector<OpPtr> rep_of_program(const PathRep& rep, const TangleProgram& prog) {
  std::vector<int> widths;
  try {
    widths = validate_program(prog);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidProgram, e.what());
  }
  using Key = std::tuple<int, int, int, std::uint64_t, std::uint64_t>;
  std::map<Key, OpPtr> cache;
  std::vector<OpPtr> out;
  out.reserve(prog.prims.size());
  for (std::size_t k = 0; k < prog.prims.size(); ++k) {
    const auto& p = prog.prims[k];
    Key key{static_cast<int>(p.kind), p.i, widths[k], std::bit_cast<std::uint64_t>(p.u.real()),
            std::bit_cast<std::uint64_t>(p.u.imag())};
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, std::make_shared<OperatorMatrix>(op_prim(rep, p, rep.basis(widths[k])))).first;
    out.push_back(it->second);
  }
  return out;
}

bool hermitian_check(const PathRep& rep) { return rep.hermitian(); }

Mat restrict_to(const Mat& full_op, const PathBasis& full, const PathBasis& sub, double leak_tol) {
  std::vector<int> idx;
  idx.reserve(sub.dim());
  for (const auto& p : sub.paths) {
    int r = full.find(p);
    if (r < 0) throw Error(ErrorCode::SubspaceNotInvariant, "subspace path missing from the full basis");
    idx.push_back(r);
  }
  std::vector<char> inside(full.dim(), 0);
  for (int r : idx) inside[r] = 1;
  double leak = 0.0;
  for (int c : idx)
    for (int r = 0; r < full.dim(); ++r)
      if (!inside[r]) leak = std::max(leak, std::abs(full_op(r, c)));
  if (leak > leak_tol) throw Error(ErrorCode::SubspaceNotInvariant, "leakage " + std::to_string(leak));
  Mat out(sub.dim(), sub.dim());
  for (int c = 0; c < sub.dim(); ++c)
    for (int r = 0; r < sub.dim(); ++r) out(r, c) = full_op(idx[r], idx[c]);
  return out;
}

Mat normalized_crossing(const PathRep& rep, int i, cplx u, const PathBasis& sub) {
  auto full = rep.basis(sub.n, sub.start);
  OperatorMatrix s = op_cross(rep, i, u, full);
  Mat r = restrict_to(s.m, *full, sub);
  cplx det = r.determinant();
  return r / std::pow(det, 1.0 / sub.dim());
}

Mat compose(const std::vector<OpPtr>& ops) {
  if (ops.empty()) return Mat::Identity(1, 1);
  Mat acc = Mat::Identity(ops.front()->domain->dim(), ops.front()->domain->dim());
  double ls = 0.0;
  for (const auto& op : ops) {
    acc = op->apply(acc);
    ls += op->log_scale;
  }
  return acc * std::exp(ls);
}

}  // namespace ttl
