#pragma once

#include <string>
#include <vector>

#include "tutte_tl/kspace.hpp"

namespace ttl {

enum class ParamClass { UnitaryCaseI, ComplexNonUnitaryCaseII, RealNonUnitaryCaseIII, PottsPhysical, Unclassified };
const char* param_class_name(ParamClass c);

struct ParamCheck {
  std::string name;
  bool ok = false;
  double value = 0.0;
};

struct ParamSet {
  cplx q;
  cplx d;                       // principal sqrt q
  std::vector<cplx> W_odd, W_even;
  ParamClass cls = ParamClass::Unclassified;
  std::vector<std::string> reasons;
  std::vector<ParamCheck> checks;

  bool closed = false;
  bool unitary_type = false;
  bool hermitian_rep = false;
  cplx v1, w1;                  // odd weight and its odd inverse
  cplx v2, w2;                  // even weight and its even inverse
  cplx alpha, beta;             // sqrt(1 + q/v1), sqrt(1 + v2), principal
  double s1 = 0.0, s2 = 0.0;    // arg(alpha^2)/2pi, arg(beta^2)/2pi in [0,1)
  bool s_irrational = false;    // advisory: tested at distance 1e-6 from p/r, r <= 5
  double jorg1 = 0.0, jorg2 = 0.0;
};

cplx odd_inverse(cplx q, cplx v);
cplx even_inverse(cplx v);

ParamSet classify_params(cplx q, const std::vector<cplx>& W_odd, const std::vector<cplx>& W_even,
                         double tol = 1e-9);

enum class ExampleSet { Unitary, Complex, Real };
ParamSet example_params(ExampleSet which);

// Representation matching the parameters: truncated for Hermitian d = 2cos(pi/k), else
// enough labels for H_8.
PathRep rep_for_params(const ParamSet& p);

// Normalized 2x2 block generators on span{p_1, p_2}.
struct BlockGenerators {
  Mat X;   // sigma_1(v1/d) / c
  Mat Y;   // sigma_2(v2/d) / c'
};
BlockGenerators block_generators(const ParamSet& p, const KSpace& k);

struct DensityReport {
  cplx trace_direct;            // Tr([X,Y] - 1)
  cplx trace_formula;           // -((q-1)/q^2)(beta-1/beta)^2(alpha-1/alpha)^2
  double trace_diff = 0.0;
  cplx tau, tau_prime, gamma;   // elementary-group test quantities
  bool elementary = false;
  double jorgensen_x = 0.0;     // |Tr^2 X - 4| + |Tr[X,Y] - 2|
  double jorgensen_y = 0.0;
  double jorgensen_formula1 = 0.0;
  double jorgensen_formula2 = 0.0;
  bool non_commuting = false;
};

cplx commutator_trace_formula(cplx q, cplx alpha, cplx beta);
Mat group_commutator(const Mat& X, const Mat& Y);  // X Y X^-1 Y^-1
DensityReport density_from_generators(cplx q, cplx alpha, cplx beta, const Mat& X, const Mat& Y, double tol = 1e-9);
DensityReport density_diagnostics(const ParamSet& p, const PathRep& rep);

}  // namespace ttl
