#include "tutte_tl/evaluator.hpp"

#include <cmath>

namespace ttl {

namespace {

// Rescales x so its largest entry has modulus ~1; returns the log factor removed.
double renormalize(Mat& x) {
  double mx = x.cwiseAbs().maxCoeff();
  if (mx == 0.0 || (mx > 1e-50 && mx < 1e50)) return 0.0;
  x /= mx;
  return std::log(mx);
}

double log_q_half(const PathRep& rep, int vertices) { return 0.5 * vertices * std::log(std::abs(rep.q())); }

}  // namespace

EvalReport evaluate_exact(const TangleProgram& prog, const PathRep& rep) {
  auto ops = rep_of_program(rep, prog);
  EvalReport r;
  Mat v = Mat::Ones(1, 1);
  double ls = 0.0;
  double log_norms = 0.0;
  r.per_step_norms.reserve(ops.size());
  for (const auto& op : ops) {
    v = op->apply(v);
    ls += op->log_scale + renormalize(v);
    r.per_step_norms.push_back(op->norm());
    log_norms += op->log_norm();
  }
  r.bracket = Scaled{v(0, 0), ls}.normalized();
  WeightedGraph g = medial_to_graph(prog, rep.d());
  r.vertex_count = g.vertex_count;
  r.holes = shaded_holes(prog);
  r.odd_edges = g.odd_edge_count();
  r.z_value = Scaled::power(rep.d(), r.vertex_count - r.holes) * r.bracket;
  r.log_delta_alg = log_q_half(rep, r.vertex_count - r.holes) + log_norms;
  r.log_delta_grp = r.log_delta_alg;
  if (!prog.grouping.empty()) {
    r.has_grouping = true;
    r.log_delta_grp = log_delta_grp(prog, rep, prog.grouping);
  }
  return r;
}

double log_delta_alg(const TangleProgram& prog, const PathRep& rep) {
  auto ops = rep_of_program(rep, prog);
  double s = log_q_half(rep, bracket_exponent(prog));
  for (const auto& op : ops) s += op->log_norm();
  return s;
}

double delta_alg(const TangleProgram& prog, const PathRep& rep) { return std::exp(log_delta_alg(prog, rep)); }

std::vector<OpPtr> group_matrices(const TangleProgram& prog, const PathRep& rep, const std::vector<Group>& grouping,
                                  int max_group_dim) {
  validate_grouping(prog, grouping);
  auto ops = rep_of_program(rep, prog);
  std::vector<OpPtr> out;
  out.reserve(grouping.size());
  for (const auto& [s, e] : grouping) {
    if (s == e) {
      out.push_back(ops[s]);
      continue;
    }
    const int dom_dim = ops[s]->domain->dim();
    if (dom_dim > max_group_dim)
      throw Error(ErrorCode::GroupTooWide, "group [" + std::to_string(s) + "," + std::to_string(e) + "]");
    Mat acc = Mat::Identity(dom_dim, dom_dim);
    double ls = 0.0;
    for (int k = s; k <= e; ++k) {
      if (ops[k]->codomain->dim() > max_group_dim)
        throw Error(ErrorCode::GroupTooWide, "group [" + std::to_string(s) + "," + std::to_string(e) + "]");
      acc = ops[k]->apply(acc);
      ls += ops[k]->log_scale + renormalize(acc);
    }
    out.push_back(std::make_shared<OperatorMatrix>(ops[s]->domain, ops[e]->codomain, std::move(acc), ls));
  }
  return out;
}

double log_delta_grp(const TangleProgram& prog, const PathRep& rep, const std::vector<Group>& grouping) {
  auto mats = group_matrices(prog, rep, grouping);
  double s = log_q_half(rep, bracket_exponent(prog));
  for (const auto& m : mats) s += m->log_norm();
  return s;
}

double delta_grp(const TangleProgram& prog, const PathRep& rep, const std::vector<Group>& grouping) {
  return std::exp(log_delta_grp(prog, rep, grouping));
}

}  // namespace ttl
