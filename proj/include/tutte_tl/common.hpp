#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ttl {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;

enum class ErrorCode {
  IndexOutOfWidth,
  NonClosedDiagram,
  BadCrossingIndex,
  InvalidProgram,
  ParseError,
  TooManyEdges,
  SingularPoint,
  TooManyColorings,
  TooManyCrossings,
  DegenerateLoopValue,
  NotAdjacent,
  OutOfRange,
  TruncationExceeded,
  SubspaceNotInvariant,
  GroupTooWide,
  ZeroOperator,
  WidthExceeded,
  NotClosedToInverses,
  NetTooCoarse,
  DepthExceeded,
  InputTooFarFromIdentity,
  UnsupportedParams,
  UnsupportedGateForm,
  InvalidArgument,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Complex value m * exp(e). Keeps products of many operator norms finite.
struct Scaled {
  cplx m{1.0, 0.0};
  double e = 0.0;

  static Scaled of(cplx z) { return Scaled{z, 0.0}.normalized(); }
  static Scaled from_log(double log_abs, double arg) {
    return Scaled{std::polar(1.0, arg), log_abs};
  }
  Scaled normalized() const;
  double log_abs() const { return std::log(std::abs(m)) + e; }
  double arg() const { return std::arg(m); }
  bool is_zero() const { return m == cplx(0.0, 0.0); }
  cplx value() const;  // may overflow to inf
  Scaled operator*(const Scaled& o) const { return Scaled{m * o.m, e + o.e}.normalized(); }
  Scaled operator/(const Scaled& o) const { return Scaled{m / o.m, e - o.e}.normalized(); }
  Scaled operator*(cplx z) const { return Scaled{m * z, e}.normalized(); }
  // z^n for integer n without overflow
  static Scaled power(cplx z, long long n);
};

// Operator 2-norm (largest singular value).
double op_norm(const Mat& m);

}  // namespace ttl
