#include "tutte_tl/common.hpp"

#include <cmath>
#include <numbers>

namespace ttl {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::IndexOutOfWidth: return "IndexOutOfWidth";
    case ErrorCode::NonClosedDiagram: return "NonClosedDiagram";
    case ErrorCode::BadCrossingIndex: return "BadCrossingIndex";
    case ErrorCode::InvalidProgram: return "InvalidProgram";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TooManyEdges: return "TooManyEdges";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::TooManyColorings: return "TooManyColorings";
    case ErrorCode::TooManyCrossings: return "TooManyCrossings";
    case ErrorCode::DegenerateLoopValue: return "DegenerateLoopValue";
    case ErrorCode::NotAdjacent: return "NotAdjacent";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TruncationExceeded: return "TruncationExceeded";
    case ErrorCode::SubspaceNotInvariant: return "SubspaceNotInvariant";
    case ErrorCode::GroupTooWide: return "GroupTooWide";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::WidthExceeded: return "WidthExceeded";
    case ErrorCode::NotClosedToInverses: return "NotClosedToInverses";
    case ErrorCode::NetTooCoarse: return "NetTooCoarse";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::InputTooFarFromIdentity: return "InputTooFarFromIdentity";
    case ErrorCode::UnsupportedParams: return "UnsupportedParams";
    case ErrorCode::UnsupportedGateForm: return "UnsupportedGateForm";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Scaled Scaled::normalized() const {
  double a = std::abs(m);
  if (a == 0.0 || !std::isfinite(a)) return *this;
  if (a > 1e30 || a < 1e-30) {
    double l = std::log(a);
    return Scaled{m / a, e + l};
  }
  return *this;
}

cplx Scaled::value() const { return m * std::exp(e); }

Scaled Scaled::power(cplx z, long long n) {
  if (n == 0) return Scaled{};
  double la = std::log(std::abs(z)) * static_cast<double>(n);
  double ph = std::fmod(std::arg(z) * static_cast<double>(n), 2.0 * std::numbers::pi);
  return Scaled::from_log(la, ph);
}

double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() <= 16 && m.cols() <= 16) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
  }
  Eigen::BDCSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

}  // namespace ttl
