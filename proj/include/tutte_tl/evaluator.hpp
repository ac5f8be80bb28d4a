#pragma once

#include <vector>

#include "tutte_tl/path_rep.hpp"

namespace ttl {

struct EvalReport {
  Scaled bracket;          // <L_G> = <1|Q|1>
  Scaled z_value;          // d^{|V| - holes} * bracket
  double log_delta_alg = 0.0;
  double log_delta_grp = 0.0;
  bool has_grouping = false;
  std::vector<double> per_step_norms;
  int vertex_count = 0;
  int holes = 0;           // shaded_holes(prog), zero for disk regions
  int odd_edges = 0;

  double delta_alg() const { return std::exp(log_delta_alg); }
  double delta_grp() const { return std::exp(log_delta_grp); }
};

EvalReport evaluate_exact(const TangleProgram& prog, const PathRep& rep);

double delta_alg(const TangleProgram& prog, const PathRep& rep);
double delta_grp(const TangleProgram& prog, const PathRep& rep, const std::vector<Group>& grouping);
double log_delta_alg(const TangleProgram& prog, const PathRep& rep);
double log_delta_grp(const TangleProgram& prog, const PathRep& rep, const std::vector<Group>& grouping);

// One operator per group, in application order.
std::vector<OpPtr> group_matrices(const TangleProgram& prog, const PathRep& rep,
                                  const std::vector<Group>& grouping, int max_group_dim = 4096);

}  // namespace ttl
