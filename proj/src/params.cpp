#include "tutte_tl/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ttl {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_real(cplx z, double tol) { return std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z)); }

std::string fmt(cplx z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

double frac_arg(cplx z) {
  double s = std::arg(z) / (2.0 * kPi);
  if (s < 0) s += 1.0;
  if (s >= 1.0) s -= 1.0;
  return s;
}

bool near_small_rational(double s, double tol) {
  for (int r = 1; r <= 5; ++r)
    for (int p = 0; p <= r; ++p)
      if (std::abs(s - static_cast<double>(p) / r) <= tol) return true;
  return false;
}

bool hermitian_d(cplx d, double tol) {
  if (!is_real(d, tol) || d.real() <= 0) return false;
  const double x = d.real();
  if (x >= 2.0 - tol) return true;
  const double k = kPi / std::acos(x / 2.0);
  return std::abs(k - std::round(k)) <= 1e-6 * k && std::round(k) >= 3;
}

double jorgensen(cplx q, cplx a, cplx b, bool first) {
  const double aa = std::norm(a - 1.0 / a);
  const double bb = std::norm(b - 1.0 / b);
  const double c = std::abs((q - 1.0) / (q * q));
  return (first ? aa : bb) + c * aa * bb;
}

bool potts_like(cplx q, const std::vector<cplx>& all, double tol) {
  if (!is_real(q, tol) || q.real() <= 0) return false;
  if (!std::all_of(all.begin(), all.end(), [&](cplx v) { return is_real(v, tol); })) return false;
  const double qr = q.real();
  const bool integer_q = std::abs(qr - std::round(qr)) <= tol;
  const bool all_pos = std::all_of(all.begin(), all.end(), [](cplx v) { return v.real() > 0; });
  const bool all_gt_m1 = std::all_of(all.begin(), all.end(), [](cplx v) { return v.real() > -1; });
  return all_pos || (integer_q && all_gt_m1);
}

}  // namespace

const char* param_class_name(ParamClass c) {
  switch (c) {
    case ParamClass::UnitaryCaseI: return "UnitaryCaseI";
    case ParamClass::ComplexNonUnitaryCaseII: return "ComplexNonUnitaryCaseII";
    case ParamClass::RealNonUnitaryCaseIII: return "RealNonUnitaryCaseIII";
    case ParamClass::PottsPhysical: return "PottsPhysical";
    case ParamClass::Unclassified: return "Unclassified";
  }
  return "Unknown";
}

cplx odd_inverse(cplx q, cplx v) { return -q - v; }
cplx even_inverse(cplx v) { return -v / (1.0 + v); }

ParamSet classify_params(cplx q, const std::vector<cplx>& W_odd, const std::vector<cplx>& W_even, double tol) {
  ParamSet p;
  p.q = q;
  p.d = std::sqrt(q);
  p.W_odd = W_odd;
  p.W_even = W_even;
  std::vector<cplx> all = W_odd;
  all.insert(all.end(), W_even.begin(), W_even.end());
  if (q == cplx(0.0, 0.0)) throw Error(ErrorCode::InvalidArgument, "q = 0");
  for (cplx v : all)
    if (std::abs(v) == 0.0 || !std::isfinite(std::abs(v)))
      throw Error(ErrorCode::InvalidArgument, "weights must be finite and nonzero");

  auto matched = [&](const std::vector<cplx>& ws, cplx target) {
    return std::any_of(ws.begin(), ws.end(),
                       [&](cplx w) { return std::abs(w - target) <= tol * std::max(1.0, std::abs(target)); });
  };
  std::vector<std::string> unmatched;
  for (cplx v : W_odd)
    if (!matched(W_odd, odd_inverse(q, v))) unmatched.push_back("odd " + fmt(v));
  for (cplx v : W_even) {
    if (std::abs(1.0 + v) <= tol || !matched(W_even, even_inverse(v))) unmatched.push_back("even " + fmt(v));
  }
  p.closed = unmatched.empty() && !W_odd.empty() && !W_even.empty();
  p.checks.push_back({"closed_to_inverses", p.closed, static_cast<double>(unmatched.size())});

  const bool potts = potts_like(q, all, tol);
  p.checks.push_back({"potts_physical", potts, 0.0});
  if (!p.closed) {
    if (potts) {
      p.cls = ParamClass::PottsPhysical;
      p.reasons.push_back("physical Potts weights; not closed to inverses");
      return p;
    }
    std::string msg = W_odd.empty() || W_even.empty() ? "odd and even weight lists must be non-empty" : "";
    for (std::size_t i = 0; i < unmatched.size(); ++i) msg += (i ? ", " : "") + unmatched[i];
    throw Error(ErrorCode::NotClosedToInverses, msg);
  }

  p.hermitian_rep = hermitian_d(p.d, tol);
  bool uni = p.hermitian_rep;
  for (cplx v : W_odd) uni = uni && std::abs(std::abs(v + q) - std::abs(v)) <= tol * std::max(1.0, std::abs(v));
  for (cplx v : W_even) uni = uni && std::abs(std::abs(1.0 + v) - 1.0) <= tol;
  p.unitary_type = uni;
  p.checks.push_back({"hermitian_representation", p.hermitian_rep, p.d.real()});
  p.checks.push_back({"unitary_type", uni, 0.0});

  const double phi2 = (3.0 + std::sqrt(5.0)) / 2.0;
  const double phi2m = (3.0 - std::sqrt(5.0)) / 2.0;
  bool q_ok = true;
  for (double bad : {0.0, 1.0, 2.0, phi2, phi2m}) q_ok = q_ok && std::abs(q - bad) > tol;
  p.checks.push_back({"q_not_exceptional", q_ok, 0.0});

  auto fill = [&](cplx v1, cplx v2) {
    p.v1 = v1;
    p.w1 = odd_inverse(q, v1);
    p.v2 = v2;
    p.w2 = even_inverse(v2);
    p.alpha = std::sqrt(1.0 + q / v1);
    p.beta = std::sqrt(1.0 + v2);
    p.s1 = frac_arg(p.alpha * p.alpha);
    p.s2 = frac_arg(p.beta * p.beta);
    p.s_irrational = !near_small_rational(p.s1, 1e-6) || !near_small_rational(p.s2, 1e-6);
    p.jorg1 = jorgensen(q, p.alpha, p.beta, true);
    p.jorg2 = jorgensen(q, p.alpha, p.beta, false);
  };
  auto pair_unitary = [&]() {
    return std::abs(p.alpha * p.alpha - 1.0) > tol && std::abs(p.beta * p.beta - 1.0) > tol && p.s_irrational;
  };
  auto pair_nonunitary = [&]() {
    return std::abs(std::abs(p.alpha) - 1.0) > tol && std::abs(std::abs(p.beta) - 1.0) > tol &&
           (p.jorg1 < 1.0 || p.jorg2 < 1.0);
  };
  const bool all_real = is_real(q, tol) && std::all_of(all.begin(), all.end(), [&](cplx v) { return is_real(v, tol); });

  if (potts) {
    fill(W_odd.front(), W_even.front());
    p.cls = ParamClass::PottsPhysical;
    p.reasons.push_back("physical Potts weights");
    return p;
  }
  if (uni && q_ok) {
    for (cplx a : W_odd)
      for (cplx b : W_even) {
        fill(a, b);
        if (pair_unitary()) {
          p.cls = ParamClass::UnitaryCaseI;
          p.reasons.push_back("unitary type, Hermitian representation, alpha^2 and beta^2 != 1");
          p.reasons.push_back("s-irrationality tested at 1e-6 (advisory)");
          return p;
        }
      }
  }
  if (!uni) {
    for (cplx a : W_odd)
      for (cplx b : W_even) {
        fill(a, b);
        if (!pair_nonunitary()) continue;
        const bool complex_pair = !is_real(q, tol) || !is_real(a, tol) || !is_real(b, tol);
        if (complex_pair) {
          p.cls = ParamClass::ComplexNonUnitaryCaseII;
          p.reasons.push_back("|alpha|,|beta| != 1, Jorgensen condition holds, non-real parameter");
          return p;
        }
        if (all_real && q.real() > phi2) {
          p.cls = ParamClass::RealNonUnitaryCaseIII;
          p.reasons.push_back("real parameters, q > 4cos^2(pi/5), |alpha|,|beta| != 1, Jorgensen condition holds");
          return p;
        }
      }
  }
  fill(W_odd.front(), W_even.front());
  p.cls = ParamClass::Unclassified;
  if (!q_ok) p.reasons.push_back("q is exceptional");
  if (uni) p.reasons.push_back("unitary type but no pair meets the alpha/beta/s conditions");
  else p.reasons.push_back("no weight pair meets the non-unitary family conditions");
  return p;
}

ParamSet example_params(ExampleSet which) {
  switch (which) {
    case ExampleSet::Unitary: {
      const cplx z = std::polar(1.0, kPi / 3.0);
      return classify_params(3.0, {3.0 / (z - 1.0), 3.0 / (std::conj(z) - 1.0)}, {z - 1.0, std::conj(z) - 1.0});
    }
    case ExampleSet::Complex: {
      const cplx q(0.0, 2.0);
      return classify_params(q, {100.0, -q - 100.0}, {1.0, -0.5});
    }
    case ExampleSet::Real: return classify_params(3.0, {100.0, -103.0}, {1.0, -0.5});
  }
  throw Error(ErrorCode::InvalidArgument, "unknown example set");
}

PathRep rep_for_params(const ParamSet& p) {
  PathRep r = PathRep::compute(p.d, 16);
  if (r.truncated()) return r;
  return PathRep::compute(p.d, 9);
}

BlockGenerators block_generators(const ParamSet& p, const KSpace& k) {
  const cplx d = k.rep.d();
  const cplx u1 = p.v1 / d;
  const cplx u2 = p.v2 / d;
  const cplx c1 = (u1 + d) / p.alpha;
  const cplx c2 = p.beta;
  BlockGenerators g;
  g.X = k.sigma(1, u1).topLeftCorner(2, 2) / c1;
  g.Y = k.sigma(2, u2).topLeftCorner(2, 2) / c2;
  return g;
}

cplx commutator_trace_formula(cplx q, cplx alpha, cplx beta) {
  const cplx a = alpha - 1.0 / alpha;
  const cplx b = beta - 1.0 / beta;
  return -((q - 1.0) / (q * q)) * b * b * a * a;
}

Mat group_commutator(const Mat& X, const Mat& Y) { return X * Y * X.inverse() * Y.inverse(); }

DensityReport density_from_generators(cplx q, cplx alpha, cplx beta, const Mat& X, const Mat& Y, double tol) {
  DensityReport r;
  const Mat C = group_commutator(X, Y);
  r.trace_direct = C.trace() - 2.0;
  r.trace_formula = commutator_trace_formula(q, alpha, beta);
  r.trace_diff = std::abs(r.trace_direct - r.trace_formula);
  const cplx tx = X.trace(), ty = Y.trace();
  r.tau = tx * tx - 4.0;
  r.tau_prime = ty * ty - 4.0;
  r.gamma = C.trace() - 2.0;
  auto real_in = [&](cplx z, double lo, double hi) {
    return std::abs(z.imag()) <= tol && z.real() >= lo - tol && z.real() <= hi + tol;
  };
  auto eq = [&](cplx a, cplx b) { return std::abs(a - b) <= tol; };
  const bool c1 = real_in(r.tau, -4, 0) && real_in(r.tau_prime, -4, 0) && std::abs(r.gamma.imag()) <= tol &&
                  real_in(r.gamma, (-(r.tau * r.tau_prime) / 4.0).real(), 0.0);
  const bool c2 = std::abs(r.gamma) <= tol;
  const bool c3 = (eq(r.tau, r.gamma) && eq(r.tau_prime, -4.0)) || (eq(r.tau, -4.0) && eq(r.tau_prime, r.gamma)) ||
                  (eq(r.tau, -4.0) && eq(r.tau_prime, -4.0));
  r.elementary = c1 || c2 || c3;
  r.jorgensen_x = std::abs(r.tau) + std::abs(r.gamma);
  r.jorgensen_y = std::abs(r.tau_prime) + std::abs(r.gamma);
  r.jorgensen_formula1 = jorgensen(q, alpha, beta, true);
  r.jorgensen_formula2 = jorgensen(q, alpha, beta, false);
  r.non_commuting = (X * Y - Y * X).norm() > tol;
  return r;
}

DensityReport density_diagnostics(const ParamSet& p, const PathRep& rep) {
  KSpace k = build_k_space(rep);
  BlockGenerators g = block_generators(p, k);
  return density_from_generators(p.q, p.alpha, p.beta, g.X, g.Y);
}

}  // namespace ttl
