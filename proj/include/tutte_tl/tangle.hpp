#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tutte_tl/common.hpp"

namespace ttl {

enum class PrimKind { Cup, Cap, Cross };

struct TanglePrim {
  PrimKind kind;
  int i;       // 1-based strand index
  cplx u{0.0, 0.0};  // crossing weight, used iff kind == Cross

  static TanglePrim cup(int i) { return {PrimKind::Cup, i, {}}; }
  static TanglePrim cap(int i) { return {PrimKind::Cap, i, {}}; }
  static TanglePrim cross(int i, cplx u) { return {PrimKind::Cross, i, u}; }
  bool operator==(const TanglePrim&) const = default;
};

// Inclusive 0-based interval of prim indices.
using Group = std::pair<int, int>;

struct TangleProgram {
  std::vector<TanglePrim> prims;     // applied bottom to top
  std::vector<Group> grouping;       // empty means singletons

  std::vector<Group> groups() const;  // explicit grouping, singletons if unset
  int crossing_count() const;
  bool operator==(const TangleProgram&) const = default;
};

enum class Parity { Odd, Even, Unknown };

struct Edge {
  int a;
  int b;
  cplx w;
  Parity parity = Parity::Unknown;
  bool operator==(const Edge&) const = default;
};

struct WeightedGraph {
  int vertex_count = 0;
  std::vector<Edge> edges;

  int odd_edge_count() const;
  bool operator==(const WeightedGraph&) const = default;
};

// Widths before the first prim and after each prim.
std::vector<int> validate_program(const TangleProgram& prog);

// Checks a grouping is a contiguous partition of the prims.
void validate_grouping(const TangleProgram& prog, const std::vector<Group>& grouping);

int max_width(const TangleProgram& prog);

TangleProgram plat_program(int n, const std::vector<std::pair<int, cplx>>& crossings);

WeightedGraph medial_to_graph(const TangleProgram& prog, cplx d);

// Holes of the shaded regions: loops of the state taking Phi at odd crossings and
// 1 at even crossings, minus the shaded-region count. Zero when every shaded region
// is a disk; in general Z_G = d^{|V| - holes} <L>.
int shaded_holes(const TangleProgram& prog);
// |V| - holes for the reconstructed graph.
int bracket_exponent(const TangleProgram& prog);

struct RandomProgramOptions {
  int max_crossings = 8;
  int max_width = 6;
  int max_prims = 24;          // closing caps may exceed this
  double min_abs_u = 0.3;
  double max_abs_u = 1.5;
};
// Seeded random closed program with complex crossing weights.
TangleProgram random_program(std::uint64_t seed, const RandomProgramOptions& opt = {});

}  // namespace ttl
