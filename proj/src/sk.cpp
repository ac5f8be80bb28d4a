#include "tutte_tl/sk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_set>

#include <unsupported/Eigen/MatrixFunctions>

#include "tutte_tl/qsim.hpp"

namespace ttl {

// ---- words ----

WordPtr word_leaf(Word w) {
  auto n = std::make_shared<WordNode>();
  n->kind = WordNode::Kind::Leaf;
  n->length = w.size();
  n->letters = std::move(w);
  return n;
}

WordPtr word_concat(std::vector<WordPtr> parts) {
  auto n = std::make_shared<WordNode>();
  n->kind = WordNode::Kind::Concat;
  for (const auto& p : parts)
    if (p && p->length > 0) {
      n->length += p->length;
      n->parts.push_back(p);
    }
  if (n->parts.size() == 1) return n->parts.front();
  return n;
}

WordPtr word_inverse(const WordPtr& w) {
  if (w->length == 0) return w;
  if (w->kind == WordNode::Kind::Inverse) return w->parts.front();
  auto n = std::make_shared<WordNode>();
  n->kind = WordNode::Kind::Inverse;
  n->length = w->length;
  n->parts.push_back(w);
  return n;
}

WordPtr word_commutator(const WordPtr& a, const WordPtr& b) {
  return word_concat({a, b, word_inverse(a), word_inverse(b)});
}

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l.inv = !l.inv;
  return out;
}

namespace {

void flatten_into(const WordNode* n, bool inverted, Word& out) {
  switch (n->kind) {
    case WordNode::Kind::Leaf:
      if (!inverted) {
        out.insert(out.end(), n->letters.begin(), n->letters.end());
      } else {
        for (auto it = n->letters.rbegin(); it != n->letters.rend(); ++it) out.push_back({it->gen, !it->inv});
      }
      break;
    case WordNode::Kind::Concat:
      if (!inverted) {
        for (const auto& p : n->parts) flatten_into(p.get(), false, out);
      } else {
        for (auto it = n->parts.rbegin(); it != n->parts.rend(); ++it) flatten_into(it->get(), true, out);
      }
      break;
    case WordNode::Kind::Inverse: flatten_into(n->parts.front().get(), !inverted, out); break;
  }
}

void count_into(const WordNode* n, bool inverted, std::vector<long long>& c,
                std::map<std::pair<const WordNode*, bool>, std::vector<long long>>& memo) {
  auto key = std::make_pair(n, inverted);
  if (auto it = memo.find(key); it != memo.end()) {
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += it->second[k];
    return;
  }
  std::vector<long long> local(c.size(), 0);
  switch (n->kind) {
    case WordNode::Kind::Leaf:
      for (const auto& l : n->letters) ++local[2 * l.gen + ((l.inv != inverted) ? 1 : 0)];
      break;
    case WordNode::Kind::Concat:
      for (const auto& p : n->parts) count_into(p.get(), inverted, local, memo);
      break;
    case WordNode::Kind::Inverse: count_into(n->parts.front().get(), !inverted, local, memo); break;
  }
  for (std::size_t k = 0; k < c.size(); ++k) c[k] += local[k];
  memo[key] = std::move(local);
}

}  // namespace

Word flatten(const WordPtr& w) {
  Word out;
  if (!w) return out;
  out.reserve(w->length);
  flatten_into(w.get(), false, out);
  return out;
}

std::vector<long long> letter_counts(const WordPtr& w, int ngens) {
  std::vector<long long> c(2 * ngens, 0);
  if (!w) return c;
  std::map<std::pair<const WordNode*, bool>, std::vector<long long>> memo;
  count_into(w.get(), false, c, memo);
  return c;
}

bool balanced(const Word& w, int ngens) {
  std::vector<long long> s(ngens, 0);
  for (const auto& l : w) s[l.gen] += l.inv ? -1 : 1;
  return std::all_of(s.begin(), s.end(), [](long long x) { return x == 0; });
}

Mat WordEvaluator::eval(const Word& w) const {
  Mat acc = Mat::Identity(dim(), dim());
  for (const auto& l : w) acc = acc * (l.inv ? inv_[l.gen] : gens_[l.gen]);
  return acc;
}

Mat WordEvaluator::eval(const WordPtr& w) {
  if (!w || w->length == 0) return Mat::Identity(dim(), dim());
  return eval_node(w.get(), false);
}

Mat WordEvaluator::eval_node(const WordNode* n, bool inverted) {
  auto key = std::make_pair(n, inverted);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Mat out;
  switch (n->kind) {
    case WordNode::Kind::Leaf: out = eval(inverted ? inverse_word(n->letters) : n->letters); break;
    case WordNode::Kind::Concat:
      out = Mat::Identity(dim(), dim());
      if (!inverted) {
        for (const auto& p : n->parts) out = out * eval_node(p.get(), false);
      } else {
        for (auto it = n->parts.rbegin(); it != n->parts.rend(); ++it) out = out * eval_node(it->get(), true);
      }
      break;
    case WordNode::Kind::Inverse: out = eval_node(n->parts.front().get(), !inverted); break;
  }
  memo_[key] = out;
  return out;
}

// ---- matrix helpers ----

Mat expm(const Mat& X) { return X.exp(); }

Mat logm_normal(const Mat& A) {
  Eigen::ComplexSchur<Mat> schur(A);
  const Mat& Q = schur.matrixU();
  const Mat& T = schur.matrixT();
  Vec l(T.rows());
  for (Eigen::Index j = 0; j < T.rows(); ++j) l(j) = std::log(T(j, j));
  return Q * l.asDiagonal() * Q.adjoint();
}

namespace {

constexpr double kPi = std::numbers::pi;

// Largest eigenvalue of D D^*, written as a sum of squares to avoid cancellation.
double dist2x2(const Mat& A, const Mat& B) {
  const Mat D = A - B;
  const double p = std::norm(D(0, 0)) + std::norm(D(0, 1));
  const double s = std::norm(D(1, 0)) + std::norm(D(1, 1));
  const cplx x = D(0, 0) * std::conj(D(1, 0)) + D(0, 1) * std::conj(D(1, 1));
  return std::sqrt(0.5 * (p + s + std::hypot(p - s, 2.0 * std::abs(x))));
}

double op_dist(const Mat& A, const Mat& B) { return A.rows() == 2 ? dist2x2(A, B) : op_norm(A - B); }

double gaussian(std::uint64_t seed, std::uint64_t k) {
  double u1 = counter_uniform(seed, 2 * k);
  double u2 = counter_uniform(seed, 2 * k + 1);
  u1 = std::max(u1, 1e-300);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

Mat fourier(int m) {
  Mat F(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) F(j, k) = std::polar(1.0 / std::sqrt(double(m)), 2.0 * kPi * j * k / m);
  return F;
}

Mat special_inverse(const Mat& M, GroupKind kind) { return kind == GroupKind::SU ? Mat(M.adjoint()) : Mat(M.inverse()); }

}  // namespace

// ---- net ----

std::vector<double> Net::coords_of(const Mat& V) const {
  std::vector<double> c;
  if (kind == GroupKind::SU && m_ == 2) {
    c = {V(0, 0).real(), V(0, 0).imag(), V(1, 0).real(), V(1, 0).imag()};
    return c;
  }
  c.reserve(2 * m_ * m_);
  for (int r = 0; r < m_; ++r)
    for (int k = 0; k < m_; ++k) {
      c.push_back(V(r, k).real());
      c.push_back(V(r, k).imag());
    }
  return c;
}

Word Net::word(std::size_t e) const {
  Word w = half_[pairs_[e].first];
  Word b = inverse_word(half_[pairs_[e].second]);
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

Mat Net::matrix(std::size_t e) const {
  Mat acc = Mat::Identity(m_, m_);
  for (const auto& l : word(e)) acc = acc * (l.inv ? inverses[l.gen] : gens[l.gen]);
  return acc;
}

void Net::build_tree() {
  const std::size_t n = size();
  tree_.resize(n);
  split_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) tree_[i] = static_cast<std::uint32_t>(i);
  auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> void {
    if (hi - lo <= 1) return;
    std::size_t best_dim = 0;
    double best_spread = -1;
    for (std::size_t d = 0; d < dim_; ++d) {
      double mn = std::numeric_limits<double>::infinity(), mx = -mn;
      for (std::size_t i = lo; i < hi; ++i) {
        double x = coords_[tree_[i] * dim_ + d];
        mn = std::min(mn, x);
        mx = std::max(mx, x);
      }
      if (mx - mn > best_spread) {
        best_spread = mx - mn;
        best_dim = d;
      }
    }
    const std::size_t mid = (lo + hi) / 2;
    std::nth_element(tree_.begin() + lo, tree_.begin() + mid, tree_.begin() + hi, [&](std::uint32_t a, std::uint32_t b) {
      return coords_[a * dim_ + best_dim] < coords_[b * dim_ + best_dim];
    });
    split_[mid] = static_cast<std::uint8_t>(best_dim);
    self(self, lo, mid);
    self(self, mid + 1, hi);
  };
  rec(rec, 0, n);
}

void Net::knn(const double* x, std::size_t k, std::vector<std::pair<double, std::uint32_t>>& best) const {
  best.clear();
  auto worst = [&]() { return best.size() < k ? std::numeric_limits<double>::infinity() : best.back().first; };
  auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> void {
    if (lo >= hi) return;
    const std::size_t mid = (lo + hi) / 2;
    const std::uint32_t p = tree_[mid];
    double d2 = 0;
    for (std::size_t d = 0; d < dim_; ++d) {
      double t = x[d] - coords_[p * dim_ + d];
      d2 += t * t;
    }
    if (d2 < worst()) {
      auto pos = std::lower_bound(best.begin(), best.end(), std::make_pair(d2, p));
      best.insert(pos, {d2, p});
      if (best.size() > k) best.pop_back();
    }
    const std::size_t sd = split_[mid];
    const double diff = x[sd] - coords_[p * dim_ + sd];
    if (diff < 0) {
      self(self, lo, mid);
      if (diff * diff < worst()) self(self, mid + 1, hi);
    } else {
      self(self, mid + 1, hi);
      if (diff * diff < worst()) self(self, lo, mid);
    }
  };
  rec(rec, 0, size());
}

std::pair<std::size_t, double> Net::nearest(const Mat& V) const {
  if (V.rows() != m_ || V.cols() != m_) throw Error(ErrorCode::InvalidArgument, "target dimension differs from net");
  const auto x = coords_of(V);
  const bool exact = kind == GroupKind::SU && m_ == 2;
  std::vector<std::pair<double, std::uint32_t>> best;
  knn(x.data(), exact ? 1 : 8, best);
  std::size_t arg = best.front().second;
  double bd = std::numeric_limits<double>::infinity();
  for (const auto& [d2, idx] : best) {
    const double d = exact ? std::sqrt(d2) : op_dist(V, matrix(idx));
    if (d < bd) {
      bd = d;
      arg = idx;
    }
  }
  return {arg, bd};
}

Mat Net::sample(std::uint64_t seed, std::uint64_t k) const {
  const std::uint64_t base = k * 64;
  if (kind == GroupKind::SU) {
    Mat G(m_, m_);
    std::uint64_t c = base;
    for (int r = 0; r < m_; ++r)
      for (int s = 0; s < m_; ++s) {
        double re = gaussian(seed, c++);
        G(r, s) = cplx(re, gaussian(seed, c++));
      }
    Eigen::HouseholderQR<Mat> qr(G);
    Mat Q = qr.householderQ();
    Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < m_; ++j) Q.col(j) *= R(j, j) / std::abs(R(j, j));
    return Q / std::pow(Q.determinant(), 1.0 / m_);
  }
  Mat X = Mat::Zero(m_, m_);
  std::uint64_t c = base;
  for (int r = 0; r < m_; ++r)
    for (int s = 0; s < m_; ++s) {
      double re = gaussian(seed, c++);
      double im = kind == GroupKind::SLC ? gaussian(seed, c++) : 0.0;
      X(r, s) = cplx(re, im);
    }
  X -= (X.trace() / double(m_)) * Mat::Identity(m_, m_);
  const double t = counter_uniform(seed, c++);
  X *= t * std::log1p(ball_radius) / X.norm();
  return expm(X);
}

Net build_net(const std::vector<Mat>& gens, GroupKind kind, double eps0, const NetOptions& opt) {
  if (gens.empty()) throw Error(ErrorCode::InvalidArgument, "net needs generators");
  Net net;
  net.kind = kind;
  net.m_ = static_cast<int>(gens.front().rows());
  net.gens = gens;
  for (const auto& g : gens) net.inverses.push_back(special_inverse(g, kind));
  net.ball_radius = opt.ball_radius > 0 ? opt.ball_radius : 2.0;
  net.dim_ = (kind == GroupKind::SU && net.m_ == 2) ? 4 : 2 * net.m_ * net.m_;
  const int ng = static_cast<int>(gens.size());
  const int h = std::max(0, opt.max_depth / 2);
  net.depth = 2 * h;
  const Mat I = Mat::Identity(net.m_, net.m_);

  // Half-words, breadth first, deduplicated on (matrix, signature).
  struct Half {
    Mat m;
    std::vector<int> sig;
    int len;
  };
  std::vector<Half> halves;
  auto key_of = [&](const Mat& M, const std::vector<int>& sig, double grid) {
    std::uint64_t hsh = 1469598103934665603ULL;
    auto mix = [&](std::int64_t v) {
      hsh ^= static_cast<std::uint64_t>(v);
      hsh *= 1099511628211ULL;
    };
    for (const double x : net.coords_of(M)) mix(static_cast<std::int64_t>(std::floor(x / grid)));
    for (int s : sig) mix(s);
    return hsh;
  };
  std::unordered_set<std::uint64_t> seen;
  halves.push_back({I, std::vector<int>(ng, 0), 0});
  net.half_.push_back({});
  seen.insert(key_of(I, halves[0].sig, 1e-9));
  std::size_t level_begin = 0;
  for (int depth = 1; depth <= h; ++depth) {
    const std::size_t level_end = halves.size();
    for (std::size_t idx = level_begin; idx < level_end; ++idx) {
      for (int g = 0; g < ng; ++g)
        for (bool inv : {false, true}) {
          const Word& w = net.half_[idx];
          if (!w.empty() && w.back().gen == g && w.back().inv != inv) continue;
          Mat M = halves[idx].m * (inv ? net.inverses[g] : gens[g]);
          if (opt.half_radius > 0 && op_dist(M, I) > opt.half_radius) continue;
          std::vector<int> sig = halves[idx].sig;
          sig[g] += inv ? -1 : 1;
          if (!seen.insert(key_of(M, sig, 1e-9)).second) continue;
          Word nw = w;
          nw.push_back({g, inv});
          halves.push_back({std::move(M), std::move(sig), depth});
          net.half_.push_back(std::move(nw));
        }
    }
    level_begin = level_end;
  }

  // Entries A B^-1 with equal signatures, shortest first.
  std::map<std::vector<int>, std::vector<std::vector<std::uint32_t>>> groups;
  for (std::size_t i = 0; i < halves.size(); ++i) {
    const auto& hv = halves[i];
    std::vector<int> key = opt.balanced ? hv.sig : std::vector<int>{};
    auto& byl = groups[key];
    if (byl.size() < static_cast<std::size_t>(h + 1)) byl.resize(h + 1);
    byl[hv.len].push_back(static_cast<std::uint32_t>(i));
  }
  std::vector<Mat> half_inv;
  half_inv.reserve(halves.size());
  for (const auto& hv : halves) half_inv.push_back(special_inverse(hv.m, kind));
  std::unordered_set<std::uint64_t> cells;
  const std::vector<int> nosig;
  auto try_add = [&](std::uint32_t a, std::uint32_t b) {
    Mat E = halves[a].m * half_inv[b];
    if (kind != GroupKind::SU && op_dist(E, I) > net.ball_radius) return;
    if (!cells.insert(key_of(E, nosig, opt.merge_tol)).second) return;
    const auto c = net.coords_of(E);
    net.coords_.insert(net.coords_.end(), c.begin(), c.end());
    net.pairs_.emplace_back(a, b);
  };
  bool full = false;
  for (int total = 0; total <= 2 * h && !full; ++total) {
    for (auto& [sig, byl] : groups) {
      for (int la = std::max(0, total - h); la <= std::min(total, h) && !full; ++la) {
        const int lb = total - la;
        if (!opt.balanced && lb != 0) continue;
        for (std::uint32_t a : byl[la]) {
          if (opt.balanced) {
            for (std::uint32_t b : byl[lb]) try_add(a, b);
          } else {
            try_add(a, 0);
          }
          if (net.pairs_.size() >= opt.max_entries) {
            full = true;
            break;
          }
        }
      }
      if (full) break;
    }
  }
  net.build_tree();

  double radius = 0.0;
  for (int k = 0; k < opt.probes; ++k) radius = std::max(radius, net.nearest(net.sample(opt.seed, k)).second);
  net.covering_radius = radius;
  if (radius > eps0)
    throw Error(ErrorCode::NetTooCoarse, "covering radius " + std::to_string(radius) + " exceeds " + std::to_string(eps0));
  return net;
}

// ---- group commutator approximations ----

UnitaryPair gc_unitary_approx(const Mat& A, Field field, double max_dist) {
  const int m = static_cast<int>(A.rows());
  const Mat I = Mat::Identity(m, m);
  const double dist = op_norm(A - I);
  if (dist > max_dist)
    throw Error(ErrorCode::InputTooFarFromIdentity, "||A - 1|| = " + std::to_string(dist));
  if (dist == 0.0) return {I, I};
  if (field == Field::Real) {
    Mat X = logm_normal(A);
    X = X.real().cast<cplx>();
    X = 0.5 * (X - X.transpose()).eval();
    Eigen::VectorXd g(m);
    for (int j = 0; j < m; ++j) g(j) = j - (m - 1) / 2.0;
    Mat F1 = Mat::Zero(m, m);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        if (j != k) F1(j, k) = X(j, k) / (g(k) - g(j));
    const double fn = op_norm(F1);
    if (fn == 0.0) return {I, I};
    const double lam = std::sqrt(fn / g.cwiseAbs().maxCoeff());
    Mat G = (g * lam).cast<cplx>().asDiagonal();
    return {expm(F1 / lam).real().cast<cplx>(), expm(G).real().cast<cplx>()};
  }
  Eigen::ComplexSchur<Mat> schur(A);
  const Mat& Q = schur.matrixU();
  Vec x(m);
  for (int j = 0; j < m; ++j) x(j) = std::log(schur.matrixT()(j, j));
  x.array() -= x.mean();
  const Mat Fm = fourier(m);
  const Mat Xp = Fm * x.asDiagonal() * Fm.adjoint();
  Eigen::VectorXd g(m);
  for (int j = 0; j < m; ++j) g(j) = j - (m - 1) / 2.0;
  Mat F1 = Mat::Zero(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      if (j != k) F1(j, k) = Xp(j, k) / (cplx(0.0, 1.0) * (g(k) - g(j)));
  const double fn = op_norm(F1);
  if (fn == 0.0) return {I, I};
  const double lam = std::sqrt(fn / g.cwiseAbs().maxCoeff());
  const Mat G = (cplx(0.0, 1.0) * lam * g.cast<cplx>()).asDiagonal();
  const Mat B = Q * Fm.adjoint();
  return {B * expm(F1 / lam) * B.adjoint(), B * expm(G) * B.adjoint()};
}

HermitianQuad gc_hermitian_approx(const Mat& P, double max_dist) {
  const int m = static_cast<int>(P.rows());
  const Mat I = Mat::Identity(m, m);
  const double dist = op_norm(P - I);
  if (dist > max_dist)
    throw Error(ErrorCode::InputTooFarFromIdentity, "||P - 1|| = " + std::to_string(dist));
  Mat Q;
  Eigen::VectorXd ev;
  const Mat Ph = 0.5 * (P + P.adjoint());
  if (Ph.imag().norm() == 0.0) {
    Eigen::SelfAdjointEigenSolver<RMat> es(Ph.real());
    Q = es.eigenvectors().cast<cplx>();
    ev = es.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<Mat> es(Ph);
    Q = es.eigenvectors();
    ev = es.eigenvalues();
  }
  Eigen::VectorXd hv = ev.array().log();
  hv.array() -= hv.mean();
  Mat Fo = Mat::Zero(m, m), Go = Mat::Zero(m, m), Fe = Mat::Zero(m, m), Ge = Mat::Zero(m, m);
  double c = 0.0;
  for (int k = 1; k < m; ++k) {
    c += hv(k - 1);
    const double a = std::sqrt(std::abs(c) / 2.0);
    const double s = c < 0 ? -1.0 : 1.0;
    Mat& F = (k % 2 == 1) ? Fo : Fe;
    Mat& G = (k % 2 == 1) ? Go : Ge;
    F(k - 1, k) = a;
    F(k, k - 1) = a;
    G(k - 1, k) = -s * a;
    G(k, k - 1) = s * a;
  }
  auto conj = [&](const Mat& X) { return Mat(Q * expm(X) * Q.adjoint()); };
  return {conj(Fo), conj(Go), conj(Fe), conj(Ge)};
}

// ---- Solovay-Kitaev ----

namespace {

SKResult from_net(const Mat& V, const Net& net) {
  auto [idx, d] = net.nearest(V);
  SKResult r;
  r.tree = word_leaf(net.word(idx));
  r.matrix = net.matrix(idx);
  r.error_bound = op_dist(V, r.matrix);
  r.length = r.tree->length;
  return r;
}

SKResult combine(const Mat& V, std::vector<std::pair<SKResult, SKResult>> comms, SKResult prev, int depth,
                 GroupKind kind) {
  SKResult r;
  std::vector<WordPtr> parts;
  Mat m = Mat::Identity(V.rows(), V.cols());
  for (auto& [a, b] : comms) {
    parts.push_back(word_commutator(a.tree, b.tree));
    m = m * a.matrix * b.matrix * special_inverse(a.matrix, kind) * special_inverse(b.matrix, kind);
  }
  parts.push_back(prev.tree);
  r.matrix = m * prev.matrix;
  r.tree = word_concat(std::move(parts));
  r.length = r.tree->length;
  r.depth = depth;
  r.error_bound = op_dist(V, r.matrix);
  return r;
}

}  // namespace

SKResult sk_unitary_depth(const Mat& V, int depth, const Net& net) {
  if (depth <= 0) return from_net(V, net);
  SKResult prev = sk_unitary_depth(V, depth - 1, net);
  const Mat delta = V * prev.matrix.adjoint();
  UnitaryPair vw = gc_unitary_approx(delta, Field::Complex, 2.0);
  SKResult a = sk_unitary_depth(vw.V, depth - 1, net);
  SKResult b = sk_unitary_depth(vw.W, depth - 1, net);
  return combine(V, {{std::move(a), std::move(b)}}, std::move(prev), depth, GroupKind::SU);
}

SKResult sk_nonunitary_depth(const Mat& V, int depth, const Net& net) {
  if (depth <= 0) return from_net(V, net);
  SKResult prev = sk_nonunitary_depth(V, depth - 1, net);
  const Mat delta = V * prev.matrix.inverse();
  const Field field = net.kind == GroupKind::SLR ? Field::Real : Field::Complex;
  Polar pd = polar_decompose(delta);
  if (field == Field::Real) {
    pd.U = pd.U.real().cast<cplx>();
    pd.P = pd.P.real().cast<cplx>();
  }
  UnitaryPair ua = gc_unitary_approx(pd.U, field, 2.0);
  HermitianQuad hq = gc_hermitian_approx(pd.P, 1e3);
  auto rec = [&](const Mat& X) { return sk_nonunitary_depth(X, depth - 1, net); };
  std::vector<std::pair<SKResult, SKResult>> comms;
  comms.emplace_back(rec(ua.V), rec(ua.W));
  comms.emplace_back(rec(hq.Vo), rec(hq.Wo));
  comms.emplace_back(rec(hq.Ve), rec(hq.We));
  return combine(V, std::move(comms), std::move(prev), depth, net.kind);
}

SKResult sk_unitary(const Mat& V, double delta, const Net& net, int max_depth) {
  if (!(delta > 0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  for (int n = 0; n <= max_depth; ++n) {
    SKResult r = sk_unitary_depth(V, n, net);
    if (r.error_bound <= delta) return r;
  }
  throw Error(ErrorCode::DepthExceeded, "no depth <= " + std::to_string(max_depth) + " reaches " + std::to_string(delta));
}

SKResult sk_nonunitary(const Mat& V, double delta, const Net& net, int max_depth) {
  if (!(delta > 0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  for (int n = 0; n <= max_depth; ++n) {
    SKResult r = sk_nonunitary_depth(V, n, net);
    if (r.error_bound <= delta) return r;
  }
  throw Error(ErrorCode::DepthExceeded, "no depth <= " + std::to_string(max_depth) + " reaches " + std::to_string(delta));
}

}  // namespace ttl
