#pragma once

#include <utility>
#include <vector>

#include "tutte_tl/common.hpp"

namespace ttl {

// Crossing word letters (strand index, crossing weight u), listed in
// application order: the first letter is applied first.
using CrossingWord = std::vector<std::pair<int, cplx>>;

struct Gate {
  int pos = 1;            // acts on qubits pos, pos+1 (1-based)
  Mat m;                  // 4x4, index 2*b_pos + b_{pos+1}
  CrossingWord word;      // exact-gate mode: gate given as a crossing word on 8 strands
  bool is_word() const { return !word.empty() || m.size() == 0; }
};

struct Circuit {
  int n = 1;
  std::vector<Gate> gates;  // U = U_N ... U_1, gates[0] applied first
};

}  // namespace ttl
