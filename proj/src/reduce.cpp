#include "tutte_tl/reduce.hpp"

#include <cmath>

#include "tutte_tl/evaluator.hpp"

namespace ttl {

namespace {

void check_circuit(const Circuit& c) {
  if (c.n < 1) throw Error(ErrorCode::InvalidArgument, "circuit needs n >= 1");
  for (std::size_t j = 0; j < c.gates.size(); ++j) {
    const Gate& g = c.gates[j];
    if (g.pos < 1 || g.pos + 1 > c.n)
      throw Error(ErrorCode::NotAdjacent, "gate " + std::to_string(j) + " at position " + std::to_string(g.pos));
    if (g.m.size() != 0 && (g.m.rows() != 4 || g.m.cols() != 4))
      throw Error(ErrorCode::InvalidArgument, "gate " + std::to_string(j) + " is not 4x4");
    for (const auto& [i, u] : g.word)
      if (i < 1 || i > 7) throw Error(ErrorCode::BadCrossingIndex, "gate word index " + std::to_string(i));
  }
}

double legit_distance(const Mat& image, const Mat& target4) {
  const auto pos = KSpace::legit_positions();
  Mat diff(kKDim, 4);
  for (int c = 0; c < 4; ++c) {
    diff.col(c) = image.col(pos[c]);
    for (int r = 0; r < 4; ++r) diff(pos[r], c) -= target4(r, c);
  }
  return op_norm(diff);
}

Mat swap_gate() {
  Mat s = Mat::Zero(4, 4);
  s(0, 0) = s(3, 3) = 1.0;
  s(1, 2) = s(2, 1) = 1.0;
  return s;
}

// M = A (x) 1 (first) or 1 (x) A (second); returns false otherwise.
bool split_one_qubit(const Mat& M, bool first, Mat& A, double tol) {
  A = Mat::Zero(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) A(a, c) = first ? M(2 * a, 2 * c) : M(a, c);
  Mat I2 = Mat::Identity(2, 2);
  Mat K(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e)
          K(2 * a + b, 2 * c + e) = first ? A(a, c) * I2(b, e) : I2(a, c) * A(b, e);
  return (K - M).norm() <= tol;
}

}  // namespace

Mat word_image_k(const KSpace& k, const CrossingWord& w) {
  Mat M = Mat::Identity(kKDim, kKDim);
  Scaled delta;
  for (const auto& [i, u] : w) {
    M = k.sigma(i, u) * M;
    if (i % 2 == 1) delta = delta * u;
  }
  return M / delta.value();
}

Mat word_gate(const KSpace& k, const CrossingWord& w) {
  const Mat img = word_image_k(k, w);
  const auto pos = KSpace::legit_positions();
  Mat G(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) G(r, c) = img(pos[r], pos[c]);
  return G;
}

Vec circuit_state(int n, const std::vector<std::pair<int, Mat>>& gates) {
  if (n < 1 || n > 26) throw Error(ErrorCode::InvalidArgument, "statevector needs 1 <= n <= 26");
  const std::size_t N = std::size_t{1} << n;
  Vec psi = Vec::Zero(static_cast<Eigen::Index>(N));
  psi(0) = 1.0;
  for (const auto& [pos, m] : gates) {
    if (pos < 1 || pos + 1 > n) throw Error(ErrorCode::NotAdjacent, "gate position " + std::to_string(pos));
    const int sh_a = n - pos;      // bit of qubit pos
    const int sh_b = n - pos - 1;  // bit of qubit pos + 1
    const std::size_t ma = std::size_t{1} << sh_a, mb = std::size_t{1} << sh_b;
    for (std::size_t x = 0; x < N; ++x) {
      if (x & (ma | mb)) continue;
      const std::size_t idx[4] = {x, x | mb, x | ma, x | ma | mb};
      cplx in[4], out[4];
      for (int r = 0; r < 4; ++r) in[r] = psi(static_cast<Eigen::Index>(idx[r]));
      for (int r = 0; r < 4; ++r) {
        out[r] = 0.0;
        for (int c = 0; c < 4; ++c) out[r] += m(r, c) * in[c];
      }
      for (int r = 0; r < 4; ++r) psi(static_cast<Eigen::Index>(idx[r])) = out[r];
    }
  }
  return psi;
}

cplx circuit_amplitude(int n, const std::vector<std::pair<int, Mat>>& gates) { return circuit_state(n, gates)(0); }

cplx circuit_amplitude(const Circuit& c) {
  std::vector<std::pair<int, Mat>> g;
  for (const auto& x : c.gates) g.emplace_back(x.pos, x.m);
  return circuit_amplitude(c.n, g);
}

ReductionReport reduce_circuit(const Circuit& c, const ParamSet& params, const ReduceOptions& opt) {
  check_circuit(c);
  if (!(opt.epsilon > 0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  ReductionReport rep;
  const KSpace k = build_k_space(rep_for_params(params));

  std::size_t compiled = 0;
  for (const auto& g : c.gates)
    if (!(opt.exact_gates && !g.word.empty())) ++compiled;
  const double eps_i = compiled ? opt.epsilon / static_cast<double>(compiled) : opt.epsilon;

  std::vector<std::pair<int, cplx>> crossings;
  std::vector<std::pair<int, int>> gate_ranges;
  std::vector<std::pair<int, Mat>> amp_gates;
  for (const auto& g : c.gates) {
    CrossingWord w;
    Mat target;
    double err = 0.0;
    if (opt.exact_gates && !g.word.empty()) {
      w = g.word;
      const Mat img = word_image_k(k, w);
      if (g.m.size() != 0) {
        target = g.m;
        err = legit_distance(img, target);
      } else {
        target = word_gate(k, w);
        err = legit_distance(img, target);
      }
    } else {
      if (g.m.size() == 0) throw Error(ErrorCode::InvalidArgument, "compiled mode needs gate matrices");
      auto compiler = cached_compiler(params, opt.compile);
      CompiledGate cg = compiler->compile(g.m, eps_i);
      w = cg.crossings(compiler->alphabet());
      target = g.m;
      err = cg.result.error_bound;
    }
    const int start = 2 * c.n + static_cast<int>(crossings.size());
    for (const auto& [i, u] : w) crossings.emplace_back(i + 4 * (g.pos - 1), u);
    gate_ranges.emplace_back(start, 2 * c.n + static_cast<int>(crossings.size()) - 1);
    rep.gate_errors.push_back(err);
    rep.gate_lengths.push_back(w.size());
    rep.gate_targets.push_back(target);
    amp_gates.emplace_back(g.pos, target);
    rep.bound += err;
  }

  rep.program = plat_program(c.n, crossings);
  const int cups = 2 * c.n;
  for (int j = 0; j < cups; ++j) rep.program.grouping.emplace_back(j, j);
  for (const auto& r : gate_ranges)
    if (r.second >= r.first) rep.program.grouping.push_back(r);
  const int total = static_cast<int>(rep.program.prims.size());
  for (int j = total - cups; j < total; ++j) rep.program.grouping.emplace_back(j, j);
  validate_grouping(rep.program, rep.program.grouping);

  rep.graph = medial_to_graph(rep.program, params.d);
  rep.vertex_count = rep.graph.vertex_count;
  rep.odd_edges = rep.graph.odd_edge_count();
  rep.vertex_identity = rep.vertex_count == 2 * c.n + rep.odd_edges;
  Scaled dh = Scaled::power(params.q, rep.vertex_count - rep.odd_edges);
  for (const auto& e : rep.graph.edges)
    if (e.parity == Parity::Odd) dh = dh * e.w;
  rep.delta_hard = dh;

  rep.amplitude = circuit_amplitude(c.n, amp_gates);
  if (opt.evaluate) {
    TangleProgram flat = rep.program;
    flat.grouping.clear();
    EvalReport ev = evaluate_exact(flat, k.rep);
    rep.evaluated = true;
    rep.z_value = ev.z_value;
    rep.z_ratio = (ev.z_value / rep.delta_hard).value();
    rep.amplitude_check = std::abs(rep.z_ratio - rep.amplitude);
  }
  return rep;
}

Circuit real_circuit_lift(const Circuit& c, double tol) {
  check_circuit(c);
  Circuit out;
  out.n = c.n + 1;
  const int flag = c.n + 1;
  Mat J(2, 2);
  J << 0.0, -1.0, 1.0, 0.0;
  const Mat I2 = Mat::Identity(2, 2);
  const Mat S = swap_gate();
  auto push = [&](int pos, const Mat& m) {
    Gate g;
    g.pos = pos;
    g.m = m;
    out.gates.push_back(std::move(g));
  };
  for (std::size_t j = 0; j < c.gates.size(); ++j) {
    const Gate& g = c.gates[j];
    if (g.m.size() == 0) throw Error(ErrorCode::UnsupportedGateForm, "gate " + std::to_string(j) + " has no matrix");
    if (g.m.imag().norm() <= tol) {
      push(g.pos, g.m.real().cast<cplx>());
      continue;
    }
    Mat A;
    int target = 0;
    if (split_one_qubit(g.m, true, A, tol)) target = g.pos;
    else if (split_one_qubit(g.m, false, A, tol)) target = g.pos + 1;
    else
      throw Error(ErrorCode::UnsupportedGateForm,
                  "gate " + std::to_string(j) + " is complex and not a one-qubit gate tensored with identity");
    const Mat R = A.real().cast<cplx>();
    const Mat Im = A.imag().cast<cplx>();
    Mat L(4, 4);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int cc = 0; cc < 2; ++cc)
          for (int e = 0; e < 2; ++e) L(2 * a + b, 2 * cc + e) = R(a, cc) * I2(b, e) + Im(a, cc) * J(b, e);
    for (int p = target; p < flag - 1; ++p) push(p, S);
    push(flag - 1, L);
    for (int p = flag - 2; p >= target; --p) push(p, S);
  }
  return out;
}

}  // namespace ttl
