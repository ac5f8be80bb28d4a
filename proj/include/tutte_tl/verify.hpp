#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ttl {

struct CheckRow {
  std::string suite;
  std::string name;
  double value = 0.0;   // measured discrepancy (or statistic)
  double tol = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string note;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  double tol_scale = 1.0;  // multiplies every tolerance
  int programs = 30;
};

// tangle, tutte, representation, evaluator, simulator, hardness
std::vector<std::string> verify_suites();
// errors: InvalidArgument for an unknown suite; "all" runs every suite.
std::vector<CheckRow> run_verify(const std::string& suite, const VerifyOptions& opt = {});

}  // namespace ttl
