#include "tutte_tl/compile.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>

#include "tutte_tl/qsim.hpp"

namespace ttl {

namespace {

Mat block_diag(const Mat& X, int copies, int total, bool unit_tail) {
  Mat B = Mat::Zero(total, total);
  for (int c = 0; c < copies; ++c) B.block(2 * c, 2 * c, 2, 2) = X;
  if (unit_tail)
    for (int j = 2 * copies; j < total; ++j) B(j, j) = 1.0;
  return B;
}

double normal_sample(std::uint64_t seed, std::uint64_t k) {
  double u1 = std::max(counter_uniform(seed, 2 * k), 1e-300);
  double u2 = counter_uniform(seed, 2 * k + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

WordPtr remap(const WordPtr& w, int offset, std::map<const WordNode*, WordPtr>& memo) {
  if (!w) return w;
  if (auto it = memo.find(w.get()); it != memo.end()) return it->second;
  WordPtr out;
  switch (w->kind) {
    case WordNode::Kind::Leaf: {
      Word l = w->letters;
      for (auto& x : l) x.gen += offset;
      out = word_leaf(std::move(l));
      break;
    }
    case WordNode::Kind::Concat: {
      std::vector<WordPtr> parts;
      for (const auto& p : w->parts) parts.push_back(remap(p, offset, memo));
      out = word_concat(std::move(parts));
      break;
    }
    case WordNode::Kind::Inverse: out = word_inverse(remap(w->parts.front(), offset, memo)); break;
  }
  memo[w.get()] = out;
  return out;
}

bool is_unitary(const Mat& U, double tol) {
  return (U.adjoint() * U - Mat::Identity(U.rows(), U.cols())).norm() <= tol;
}

}  // namespace

Mat PairModel::embed(const Mat& M) const { return S * block_diag(M, copies, kKDim, true) * Sinv; }

Mat PairModel::embed_linear(const Mat& X) const { return S * block_diag(X, copies, kKDim, false) * Sinv; }

PairModel pair_model(const KSpace& k, int i, double tol) {
  if (i < 1 || i > 6) throw Error(ErrorCode::IndexOutOfWidth, "pair index " + std::to_string(i));
  const cplx d = k.rep.d();
  const cplx s = std::sqrt(d * d - 1.0);
  const Mat& Pa = k.phi[i - 1];
  const Mat& Pb = k.phi[i];
  PairModel pm;
  pm.i = i;
  pm.phi_a = Mat::Zero(2, 2);
  pm.phi_a(0, 0) = d;
  pm.phi_b.resize(2, 2);
  pm.phi_b << 1.0, s, s, s * s;
  pm.phi_b /= d;

  Eigen::ColPivHouseholderQR<Mat> qr(Pa / d);
  qr.setThreshold(tol);
  const int r = static_cast<int>(qr.rank());
  Mat Q = qr.householderQ();
  Mat stacked(2 * kKDim, kKDim);
  stacked << Pa, Pb;
  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank2 = 0;
  for (int j = 0; j < sv.size(); ++j)
    if (sv(j) > tol * std::max(1.0, sv(0))) ++rank2;
  if (2 * r + (kKDim - rank2) != kKDim)
    throw Error(ErrorCode::SubspaceNotInvariant, "pair " + std::to_string(i) + " does not split into 2x2 irreps");
  pm.copies = r;
  pm.S.resize(kKDim, kKDim);
  for (int c = 0; c < r; ++c) {
    Vec x = Q.col(c);
    pm.S.col(2 * c) = x;
    pm.S.col(2 * c + 1) = (d * (Pb * x) - x) / s;
  }
  for (int j = rank2; j < kKDim; ++j) pm.S.col(2 * r + (j - rank2)) = svd.matrixV().col(j);
  pm.Sinv = pm.S.inverse();
  pm.residual = (Pa * pm.S - pm.S * block_diag(pm.phi_a, r, kKDim, false)).norm() +
                (Pb * pm.S - pm.S * block_diag(pm.phi_b, r, kKDim, false)).norm() +
                (pm.S * pm.Sinv - Mat::Identity(kKDim, kKDim)).norm();
  if (!(pm.residual <= 1e-8))
    throw Error(ErrorCode::SubspaceNotInvariant,
                "pair " + std::to_string(i) + " intertwiner residual " + std::to_string(pm.residual));
  return pm;
}

cplx CrossingAlphabet::weight(int i, bool inv) const {
  return i % 2 == 1 ? (inv ? w_odd : v_odd) : (inv ? w_even : v_even);
}

cplx CrossingAlphabet::norm(int i, bool inv) const {
  return i % 2 == 1 ? (inv ? c_w_odd : c_v_odd) : (inv ? c_w_even : c_v_even);
}

Mat CrossingAlphabet::model(int i, const Mat& Phi, bool inv) const {
  const Mat I = Mat::Identity(Phi.rows(), Phi.cols());
  const cplx uu = u(i, inv);
  const Mat s = i % 2 == 1 ? Mat(uu * I + Phi) : Mat(I + uu * Phi);
  return s / norm(i, inv);
}

CrossingAlphabet crossing_alphabet(const ParamSet& p) {
  CrossingAlphabet a;
  a.q = p.q;
  a.d = p.d;
  a.v_odd = p.v1;
  a.w_odd = p.w1;
  a.v_even = p.v2;
  a.w_even = p.w2;
  a.c_v_odd = (p.v1 / p.d + p.d) / p.alpha;
  a.c_w_odd = (p.v1 * p.w1 / p.q) / a.c_v_odd;
  a.c_v_even = p.beta;
  a.c_w_even = 1.0 / p.beta;
  return a;
}

CrossingWord CompiledGate::crossings(const CrossingAlphabet& a) const {
  Word w = result.word();
  CrossingWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.emplace_back(it->gen + 1, a.u(it->gen + 1, it->inv));
  return out;
}

Mat encode_gate_k(const Mat& U, cplx lambda) {
  Mat T = lambda * Mat::Identity(kKDim, kKDim);
  const auto pos = KSpace::legit_positions();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) T(pos[r], pos[c]) = U(r, c);
  return T;
}

GateCompiler::GateCompiler(const ParamSet& params, CompileOptions opt) : params_(params), opt_(opt) {
  switch (params.cls) {
    case ParamClass::UnitaryCaseI: kind_ = GroupKind::SU; break;
    case ParamClass::ComplexNonUnitaryCaseII: kind_ = GroupKind::SLC; break;
    case ParamClass::RealNonUnitaryCaseIII: kind_ = GroupKind::SLR; break;
    default:
      throw Error(ErrorCode::UnsupportedParams,
                  std::string("gate compilation needs a unitary or non-unitary family, got ") +
                      param_class_name(params.cls));
  }
  k_ = std::make_unique<KSpace>(build_k_space(rep_for_params(params)));
  alpha_ = crossing_alphabet(params);
  for (int i = 1; i <= 6; ++i) pairs_[i - 1] = pair_model(*k_, i);

  const Mat& pa = pairs_[0].phi_a;
  const Mat& pb = pairs_[0].phi_b;
  NetOptions no;
  no.max_depth = opt_.net_depth;
  no.probes = 1000;
  if (kind_ != GroupKind::SU) {
    no.ball_radius = 2.5;
    no.half_radius = 4.0;
  }
  net_odd_ = std::make_shared<Net>(
      build_net({alpha_.model(1, pa, false), alpha_.model(2, pb, false)}, kind_, opt_.net_eps0, no));
  net_even_ = std::make_shared<Net>(
      build_net({alpha_.model(2, pa, false), alpha_.model(3, pb, false)}, kind_, opt_.net_eps0, no));

  const cplx I(0.0, 1.0);
  Mat sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -I, I, 0;
  sz << 1, 0, 0, -1;
  if (kind_ == GroupKind::SLR) {
    Mat j(2, 2);
    j << 0, 1, -1, 0;
    factor_basis_ = {j};
  } else {
    factor_basis_ = {I * sx, I * sy, I * sz};
  }
}

WordEvaluator GateCompiler::k_evaluator() const {
  std::vector<Mat> g, inv;
  for (int i = 1; i <= 7; ++i) {
    g.push_back(k_->sigma(i, alpha_.u(i, false)) / alpha_.norm(i, false));
    inv.push_back(k_->sigma(i, alpha_.u(i, true)) / alpha_.norm(i, true));
  }
  return WordEvaluator(std::move(g), std::move(inv));
}

Scaled GateCompiler::delta_of(const WordPtr& w) const {
  auto counts = letter_counts(w, 7);
  Scaled s;
  for (int i = 1; i <= 7; i += 2) {
    s = s * Scaled::power(alpha_.u(i, false), counts[2 * (i - 1)]);
    s = s * Scaled::power(alpha_.u(i, true), counts[2 * (i - 1) + 1]);
  }
  return s;
}

Mat GateCompiler::layered_product(const std::vector<Mat>& factors) const {
  Mat V = Mat::Identity(kKDim, kKDim);
  for (std::size_t e = 0; e < factors.size(); ++e) V = pairs_[e % 6].embed(factors[e]) * V;
  return V;
}

double GateCompiler::decompose(const Mat& T, std::vector<Mat>& factors) const {
  const int nb = static_cast<int>(factor_basis_.size());
  const int layers = kind_ == GroupKind::SLR ? 3 * opt_.layers : opt_.layers;
  const int N = 6 * layers;
  const int P = N * nb;
  const int R = 2 * kKDim * kKDim;
  const Mat Id = Mat::Identity(kKDim, kKDim);
  auto step = [&](const Mat& M, const Eigen::VectorXd& th, int e) {
    Mat X = Mat::Zero(2, 2);
    for (int j = 0; j < nb; ++j) X += th(e * nb + j) * factor_basis_[j];
    return Mat(M * expm(X));
  };
  auto cost_of = [&](const std::vector<Mat>& f) { return (layered_product(f) - T).squaredNorm(); };

  double best = std::numeric_limits<double>::infinity();
  std::vector<Mat> best_f;
  for (int attempt = 0; attempt < opt_.restarts; ++attempt) {
    const std::uint64_t seed = opt_.seed * 1000003ULL + attempt;
    std::vector<Mat> f(N);
    std::uint64_t ctr = 0;
    for (int e = 0; e < N; ++e) {
      Eigen::VectorXd th(P);
      th.setZero();
      for (int j = 0; j < nb; ++j) th(e * nb + j) = 2.0 * normal_sample(seed, ctr++);
      f[e] = step(Mat::Identity(2, 2), th, e);
    }
    double cost = cost_of(f);
    double mu = 1e-3;
    for (int it = 0; it < 400 && cost > 1e-26; ++it) {
      std::vector<Mat> E(N), pre(N + 1), suf(N);
      for (int e = 0; e < N; ++e) E[e] = pairs_[e % 6].embed(f[e]);
      pre[0] = Id;
      for (int e = 0; e < N; ++e) pre[e + 1] = E[e] * pre[e];
      suf[N - 1] = Id;
      for (int e = N - 1; e > 0; --e) suf[e - 1] = suf[e] * E[e];
      const Mat Rm = pre[N] - T;
      Eigen::VectorXd r(R);
      for (int a = 0; a < kKDim * kKDim; ++a) {
        r(a) = Rm(a).real();
        r(kKDim * kKDim + a) = Rm(a).imag();
      }
      RMat J(R, P);
      for (int e = 0; e < N; ++e) {
        const PairModel& pm = pairs_[e % 6];
        const Mat left = suf[e] * pm.S;
        const Mat right = pm.Sinv * pre[e];
        for (int j = 0; j < nb; ++j) {
          const Mat D = left * block_diag(f[e] * factor_basis_[j], pm.copies, kKDim, false) * right;
          for (int a = 0; a < kKDim * kKDim; ++a) {
            J(a, e * nb + j) = D(a).real();
            J(kKDim * kKDim + a, e * nb + j) = D(a).imag();
          }
        }
      }
      const RMat A = J.transpose() * J;
      const Eigen::VectorXd g = J.transpose() * r;
      bool accepted = false;
      while (mu < 1e10) {
        RMat Am = A;
        Am.diagonal().array() += mu * (A.diagonal().array() + 1e-9);
        Eigen::VectorXd th = -Am.ldlt().solve(g);
        std::vector<Mat> trial(N);
        for (int e = 0; e < N; ++e) trial[e] = step(f[e], th, e);
        const double c = cost_of(trial);
        if (c < cost) {
          f = std::move(trial);
          cost = c;
          mu = std::max(mu / 4.0, 1e-12);
          accepted = true;
          break;
        }
        mu *= 6.0;
      }
      if (!accepted) break;
    }
    if (cost < best) {
      best = cost;
      best_f = f;
    }
    if (best <= 1e-24) break;
  }
  factors = best_f;
  return std::sqrt(best);
}

CompiledGate GateCompiler::compile(const Mat& U, double epsilon) const {
  if (U.rows() != 4 || U.cols() != 4) throw Error(ErrorCode::InvalidArgument, "gate must be 4x4");
  if (!(epsilon > 0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (!is_unitary(U, 1e-10)) throw Error(ErrorCode::InvalidArgument, "gate is not unitary");
  if (kind_ == GroupKind::SLR && U.imag().norm() > 1e-10)
    throw Error(ErrorCode::InvalidArgument, "real parameters need an orthogonal gate");

  CompiledGate out;
  const auto legit = KSpace::legit_positions();
  const cplx det = U.determinant();
  Mat T;
  if (kind_ == GroupKind::SLR) {
    out.lambda = 1.0;
    T = encode_gate_k(U.real().cast<cplx>(), 1.0);
    T(4, 4) = det.real() < 0 ? -1.0 : 1.0;
  } else {
    out.lambda = std::pow(det, -0.1);
    T = encode_gate_k(U, out.lambda);
  }
  auto l8 = [&](const Mat& M) {
    Mat diff(kKDim, 4);
    for (int c = 0; c < 4; ++c) diff.col(c) = M.col(legit[c]) - T.col(legit[c]);
    return op_norm(diff);
  };

  if ((U - Mat::Identity(4, 4)).norm() <= 1e-12) {
    out.result.tree = word_leaf({});
    out.result.matrix = Mat::Identity(kKDim, kKDim);
    out.result.error_bound = l8(out.result.matrix);
    out.k_error = op_norm(out.result.matrix - T);
    return out;
  }

  std::vector<Mat> factors;
  out.decomposition_residual = decompose(T, factors);
  out.elements = static_cast<int>(factors.size());
  double kappa = 1.0;
  for (const auto& pm : pairs_) kappa = std::max(kappa, op_norm(pm.S) * op_norm(pm.Sinv));

  double budget = 0.5 * (epsilon - out.decomposition_residual) / (factors.size() * kappa);
  if (!(budget > 0))
    throw Error(ErrorCode::NetTooCoarse, "decomposition residual " + std::to_string(out.decomposition_residual) +
                                             " exceeds epsilon");
  WordEvaluator ev = k_evaluator();
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<WordPtr> parts(factors.size());
    for (std::size_t e = 0; e < factors.size(); ++e) {
      const int i = static_cast<int>(e % 6) + 1;
      const Net& net = net_for_pair(i);
      SKResult r = kind_ == GroupKind::SU ? sk_unitary(factors[e], budget, net, opt_.max_sk_depth)
                                          : sk_nonunitary(factors[e], budget, net, opt_.max_sk_depth);
      std::map<const WordNode*, WordPtr> memo;
      parts[factors.size() - 1 - e] = remap(r.tree, i - 1, memo);
    }
    SKResult res;
    res.tree = word_concat(std::move(parts));
    res.length = res.tree->length;
    res.delta_scaled = delta_of(res.tree);
    res.delta_factor = res.delta_scaled.value();
    // rho(T) = (prod c) * normalized product; divide by Delta_T.
    auto counts = letter_counts(res.tree, 7);
    Scaled c_over_delta;
    for (int i = 1; i <= 7; ++i) {
      for (bool inv : {false, true}) {
        const long long n = counts[2 * (i - 1) + (inv ? 1 : 0)];
        c_over_delta = c_over_delta * Scaled::power(alpha_.norm(i, inv), n);
        if (i % 2 == 1) c_over_delta = c_over_delta / Scaled::power(alpha_.u(i, inv), n);
      }
    }
    res.matrix = ev.eval(res.tree) * c_over_delta.value();
    res.error_bound = l8(res.matrix);
    res.depth = opt_.max_sk_depth;
    out.result = std::move(res);
    out.k_error = op_norm(out.result.matrix - T);
    if (out.result.error_bound <= epsilon) break;
    budget *= 0.25;
  }
  if (out.result.error_bound > epsilon)
    throw Error(ErrorCode::NetTooCoarse, "certified L8 error " + std::to_string(out.result.error_bound) +
                                             " exceeds " + std::to_string(epsilon));

  if (opt_.improved) {
    const PathRep& rep = k_->rep;
    std::map<int, std::pair<int, int>> reps;
    for (const auto& sd : subspace_dims(rep, kKSteps))
      if (!reps.count(sd.dim)) reps[sd.dim] = {sd.start, sd.end};
    auto counts = letter_counts(out.result.tree, 7);
    Scaled c_over_delta;
    for (int i = 1; i <= 7; ++i)
      for (bool inv : {false, true}) {
        const long long n = counts[2 * (i - 1) + (inv ? 1 : 0)];
        c_over_delta = c_over_delta * Scaled::power(alpha_.norm(i, inv), n);
        if (i % 2 == 1) c_over_delta = c_over_delta / Scaled::power(alpha_.u(i, inv), n);
      }
    double worst = 0.0;
    for (const auto& [dim, se] : reps) {
      auto b = rep.basis(kKSteps, se.first, se.second);
      std::vector<Mat> g, inv;
      for (int i = 1; i <= 7; ++i) {
        g.push_back(op_cross(rep, i, alpha_.u(i, false), b).m / alpha_.norm(i, false));
        inv.push_back(op_cross(rep, i, alpha_.u(i, true), b).m / alpha_.norm(i, true));
      }
      WordEvaluator wv(std::move(g), std::move(inv));
      worst = std::max(worst, op_norm(wv.eval(out.result.tree)) * std::abs(c_over_delta.value()));
    }
    out.improved_norm = worst;
  }
  return out;
}

std::shared_ptr<const GateCompiler> cached_compiler(const ParamSet& params, const CompileOptions& opt) {
  static std::mutex mu;
  static std::vector<std::tuple<std::vector<cplx>, CompileOptions, std::shared_ptr<const GateCompiler>>> cache;
  std::vector<cplx> key{params.q, params.v1, params.v2};
  key.insert(key.end(), params.W_odd.begin(), params.W_odd.end());
  key.insert(key.end(), params.W_even.begin(), params.W_even.end());
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& [k, o, c] : cache)
    if (k == key && o.layers == opt.layers && o.restarts == opt.restarts && o.seed == opt.seed &&
        o.net_depth == opt.net_depth && o.net_eps0 == opt.net_eps0 && o.max_sk_depth == opt.max_sk_depth &&
        o.improved == opt.improved)
      return c;
  auto c = std::make_shared<const GateCompiler>(params, opt);
  cache.emplace_back(key, opt, c);
  return c;
}

CompiledGate compile_gate(const Mat& U, double epsilon, const ParamSet& params, const CompileOptions& opt) {
  return cached_compiler(params, opt)->compile(U, epsilon);
}

}  // namespace ttl
