#pragma once

#include "tutte_tl/tangle.hpp"

namespace ttl {

struct EnumerationCaps {
  int max_edges = 24;
  double max_colorings = 16777216.0;  // 2^24
  int max_crossings = 20;
  int threads = 0;                    // 0: TUTTE_TL_THREADS or 1
};

// Sum over edge subsets of q^{k(A)} prod v_e; isolated vertices are components.
cplx z_multivariate(const WeightedGraph& g, cplx q, const EnumerationCaps& caps = {});

int component_count(const WeightedGraph& g);

struct TutteValue {
  cplx via_z;       // (x-1)^{-k(E)} (y-1)^{-|V|} Z_G((x-1)(y-1), y-1)
  cplx direct_sum;  // sum_A (x-1)^{k(A)-k(E)} (y-1)^{|A|+k(A)-|V|}
};

TutteValue standard_tutte(const WeightedGraph& g, cplx x, cplx y, const EnumerationCaps& caps = {});

// Sum over q^|V| colorings of prod_e (1 + v_e [same color]).
cplx potts_partition(const WeightedGraph& g, int q, const EnumerationCaps& caps = {});

// State sum over crossing resolutions: d^{#loops} times resolution weights.
cplx kauffman_bruteforce(const TangleProgram& prog, cplx d, const EnumerationCaps& caps = {});

int resolve_threads(int requested);

}  // namespace ttl
