#include "tutte_tl/qsim.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>

namespace ttl {

Polar polar_decompose(const Mat& M) {
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat& W = svd.matrixU();
  const Mat& V = svd.matrixV();
  Polar out;
  out.U = W * V.adjoint();
  out.P = V * svd.singularValues().cast<cplx>().asDiagonal() * V.adjoint();
  return out;
}

DilatedStep dilate(const Mat& M) {
  if (M.rows() != M.cols()) throw Error(ErrorCode::InvalidArgument, "dilate expects a square matrix");
  const int n = static_cast<int>(M.rows());
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double s1 = n > 0 ? svd.singularValues()(0) : 0.0;
  if (!(s1 > 0.0)) throw Error(ErrorCode::ZeroOperator, "cannot dilate the zero operator");
  const Mat& W = svd.matrixU();
  const Mat& V = svd.matrixV();
  const Mat U = W * V.adjoint();

  DilatedStep st;
  st.norm_factor = s1;
  st.singular_basis = V;
  st.ratios = svd.singularValues() / s1;
  Eigen::VectorXd c = st.ratios.cwiseMin(1.0);
  Eigen::VectorXd s = (1.0 - c.array().square()).max(0.0).sqrt().matrix();
  // rotation blocks [[c, -s], [s, c]] in the right singular basis
  Mat R = Mat::Zero(2 * n, 2 * n);
  R.topLeftCorner(n, n) = c.cast<cplx>().asDiagonal();
  R.topRightCorner(n, n) = (-s).cast<cplx>().asDiagonal();
  R.bottomLeftCorner(n, n) = s.cast<cplx>().asDiagonal();
  R.bottomRightCorner(n, n) = c.cast<cplx>().asDiagonal();
  Mat VV = Mat::Zero(2 * n, 2 * n);
  VV.topLeftCorner(n, n) = V;
  VV.bottomRightCorner(n, n) = V;
  st.p_rotation = VV * R * VV.adjoint();
  Mat UU = Mat::Identity(2 * n, 2 * n);
  UU.topLeftCorner(n, n) = U;
  st.unitary = UU * st.p_rotation;
  return st;
}

namespace {

int bits_for(int max_label) {
  int b = 1;
  while ((1 << b) < max_label + 1) ++b;
  return b;
}

}  // namespace

RegisterPlan encode_registers(const PathRep& rep, const TangleProgram& prog) {
  auto widths = validate_program(prog);
  int wmax = 0;
  for (int w : widths) wmax = std::max(wmax, w);
  if (!rep.truncated() && wmax + 1 > rep.m())
    throw Error(ErrorCode::TruncationExceeded, "labels up to " + std::to_string(wmax + 1) + " needed");
  RegisterPlan plan;
  plan.max_label = std::min(rep.m(), wmax + 1);
  plan.bits_per_register = bits_for(plan.max_label);
  for (std::size_t k = 1; k < widths.size(); ++k) plan.registers_after.push_back(widths[k] + 1);
  // a cup's two new registers exist before its local map runs
  int peak = 1;
  for (std::size_t k = 0; k < prog.prims.size(); ++k)
    peak = std::max(peak, std::max(widths[k], widths[k + 1]) + 1);
  plan.peak_registers = peak;
  plan.total_qubits = peak * plan.bits_per_register + 1;
  return plan;
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t x = mix(seed ^ mix(counter + 0x632be59bd9b4e019ULL));
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

namespace {

using Config = std::uint64_t;

struct Codec {
  int bits = 1;
  Config encode(const std::vector<int>& regs) const {
    Config c = 0;
    for (std::size_t j = 0; j < regs.size(); ++j) c |= static_cast<Config>(regs[j]) << (j * bits);
    return c;
  }
};

std::vector<int> labels(const Path& p) { return std::vector<int>(p.begin(), p.end()); }

// Inserts `count` registers in state |1> at register position `at`.
std::vector<int> padded(std::vector<int> regs, int at, int count) {
  regs.insert(regs.begin() + at, count, 1);
  return regs;
}

struct StepPlan {
  std::vector<Config> support;           // union of padded input and output configs
  std::vector<int> in_index;             // domain path -> support index
  std::vector<int> out_index;            // codomain path -> support index
  std::vector<Config> in_config;         // padded domain configs
  std::vector<Config> out_unpadded;      // codomain configs after register release
  std::unordered_map<Config, int> in_lookup;  // unpadded domain config -> domain index
  DilatedStep dilation;
};

std::shared_ptr<StepPlan> build_plan(const OperatorMatrix& op, const Codec& codec, int pad_at_in, int pad_at_out) {
  auto plan = std::make_shared<StepPlan>();
  const PathBasis& D = *op.domain;
  const PathBasis& C = *op.codomain;
  const int rin = D.n + 1, rout = C.n + 1;
  const int regs = std::max(rin, rout);
  std::unordered_map<Config, int> idx;
  auto add = [&](Config c) {
    auto it = idx.find(c);
    if (it != idx.end()) return it->second;
    int k = static_cast<int>(plan->support.size());
    idx.emplace(c, k);
    plan->support.push_back(c);
    return k;
  };
  for (int j = 0; j < D.dim(); ++j) {
    auto regs_in = labels(D.paths[j]);
    plan->in_lookup.emplace(codec.encode(regs_in), j);
    Config c = codec.encode(padded(regs_in, pad_at_in, regs - rin));
    plan->in_config.push_back(c);
    plan->in_index.push_back(add(c));
  }
  for (int j = 0; j < C.dim(); ++j) {
    auto regs_out = labels(C.paths[j]);
    plan->out_unpadded.push_back(codec.encode(regs_out));
    plan->out_index.push_back(add(codec.encode(padded(regs_out, pad_at_out, regs - rout))));
  }
  const int n = static_cast<int>(plan->support.size());
  Mat M = Mat::Zero(n, n);
  for (int c = 0; c < D.dim(); ++c)
    for (int r = 0; r < C.dim(); ++r) M(plan->out_index[r], plan->in_index[c]) += op.m(r, c);
  plan->dilation = dilate(M);
  return plan;
}

}  // namespace

EstimateReport hadamard_estimate(const TangleProgram& prog, const PathRep& rep, const EstimateOptions& opt) {
  RegisterPlan rp = encode_registers(rep, prog);
  if (rp.total_qubits > opt.max_qubits)
    throw Error(ErrorCode::WidthExceeded, std::to_string(rp.total_qubits) + " qubits exceed the cap of " +
                                              std::to_string(opt.max_qubits));
  const Codec codec{rp.bits_per_register};
  auto widths = validate_program(prog);

  std::vector<OpPtr> steps;
  std::vector<int> pad_in, pad_out;
  if (opt.grouped) {
    auto groups = prog.groups();
    steps = group_matrices(prog, rep, groups);
    for (const auto& g : groups) {
      const bool single = g.first == g.second;
      const auto& p = prog.prims[g.first];
      if (single && p.kind == PrimKind::Cup) {
        pad_in.push_back(p.i);
        pad_out.push_back(0);
      } else if (single && p.kind == PrimKind::Cap) {
        pad_in.push_back(0);
        pad_out.push_back(p.i);
      } else {
        pad_in.push_back(widths[g.first] + 1);
        pad_out.push_back(widths[g.second + 1] + 1);
      }
    }
  } else {
    steps = rep_of_program(rep, prog);
    for (const auto& p : prog.prims) {
      pad_in.push_back(p.kind == PrimKind::Cup ? p.i : 0);
      pad_out.push_back(p.kind == PrimKind::Cap ? p.i : 0);
    }
  }

  std::map<std::tuple<const OperatorMatrix*, int, int>, std::shared_ptr<StepPlan>> plans;
  std::unordered_map<Config, cplx> state;
  state[codec.encode({1})] = 1.0;
  double log_renorm = 0.0;
  double log_norms = 0.0;

  for (std::size_t k = 0; k < steps.size(); ++k) {
    const OperatorMatrix& op = *steps[k];
    auto key = std::make_tuple(&op, pad_in[k], pad_out[k]);
    auto it = plans.find(key);
    if (it == plans.end()) it = plans.emplace(key, build_plan(op, codec, pad_in[k], pad_out[k])).first;
    const StepPlan& plan = *it->second;
    const int n = static_cast<int>(plan.support.size());
    // allocate padding registers, gather into the support ordering, ancilla |0>
    Vec x = Vec::Zero(2 * n);
    for (const auto& [cfg, amp] : state) {
      auto f = plan.in_lookup.find(cfg);
      if (f == plan.in_lookup.end()) continue;  // illegal configs carry no amplitude
      x(plan.in_index[f->second]) += amp;
    }
    Vec y = plan.dilation.unitary * x;
    // project this step's ancilla onto |0>, then release padding registers
    std::unordered_map<Config, cplx> next;
    double mx = 0.0;
    for (std::size_t r = 0; r < plan.out_index.size(); ++r) {
      cplx a = y(plan.out_index[r]);
      if (a == cplx(0.0, 0.0)) continue;
      next[plan.out_unpadded[r]] += a;
      mx = std::max(mx, std::abs(a));
    }
    state.swap(next);
    log_norms += std::log(plan.dilation.norm_factor) + op.log_scale;
    if (mx > 0.0 && mx < 1e-100) {
      for (auto& [c, a] : state) a /= mx;
      log_renorm += std::log(mx);
    }
  }

  EstimateReport rep_out;
  auto fin = state.find(codec.encode({1}));
  cplx amp = fin == state.end() ? cplx(0.0, 0.0) : fin->second;
  Scaled amplitude = Scaled{amp, log_renorm}.normalized();
  rep_out.exact_amplitude = amplitude.value();
  rep_out.qubits = rp.total_qubits;
  rep_out.log_step_norms = log_norms;
  const int vertices = bracket_exponent(prog);
  rep_out.vertex_count = medial_to_graph(prog, rep.d()).vertex_count;
  rep_out.log_scale = 0.5 * vertices * std::log(std::abs(rep.q())) + log_norms;
  rep_out.seed = opt.seed;

  if (opt.mode == EstimateMode::Exact) {
    rep_out.estimate = rep_out.exact_amplitude;
    rep_out.samples = 0;
    rep_out.hoeffding_bound = 0.0;
  } else {
    if (opt.samples < 1) throw Error(ErrorCode::InvalidArgument, "sampled mode needs samples >= 1");
    const cplx a = rep_out.exact_amplitude;
    const double p_re = std::clamp((1.0 + a.real()) / 2.0, 0.0, 1.0);
    const double p_im = std::clamp((1.0 + a.imag()) / 2.0, 0.0, 1.0);
    long long hits_re = 0, hits_im = 0;
    for (long long s = 0; s < opt.samples; ++s) {
      const auto shot = static_cast<std::uint64_t>(s);
      if (counter_uniform(opt.seed, 2 * shot) < p_re) ++hits_re;
      if (counter_uniform(opt.seed, 2 * shot + 1) < p_im) ++hits_im;
    }
    const double n = static_cast<double>(opt.samples);
    rep_out.estimate = {2.0 * hits_re / n - 1.0, 2.0 * hits_im / n - 1.0};
    rep_out.samples = opt.samples;
    rep_out.hoeffding_bound = std::sqrt(2.0 * std::log(4.0 / opt.delta) / n);
  }
  Scaled est = opt.mode == EstimateMode::Exact ? amplitude : Scaled::of(rep_out.estimate);
  rep_out.z_estimate = Scaled::power(rep.d(), vertices) * Scaled{est.m, est.e + log_norms}.normalized();
  return rep_out;
}

}  // namespace ttl
