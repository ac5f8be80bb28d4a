#include "tutte_tl/tangle.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace ttl {

std::vector<Group> TangleProgram::groups() const {
  if (!grouping.empty()) return grouping;
  std::vector<Group> g;
  g.reserve(prims.size());
  for (int k = 0; k < static_cast<int>(prims.size()); ++k) g.emplace_back(k, k);
  return g;
}

int TangleProgram::crossing_count() const {
  return static_cast<int>(std::count_if(prims.begin(), prims.end(),
                                        [](const TanglePrim& p) { return p.kind == PrimKind::Cross; }));
}

int WeightedGraph::odd_edge_count() const {
  return static_cast<int>(std::count_if(edges.begin(), edges.end(),
                                        [](const Edge& e) { return e.parity == Parity::Odd; }));
}

std::vector<int> validate_program(const TangleProgram& prog) {
  std::vector<int> widths{0};
  widths.reserve(prog.prims.size() + 1);
  int w = 0;
  for (std::size_t k = 0; k < prog.prims.size(); ++k) {
    const auto& p = prog.prims[k];
    const std::string where = "prim " + std::to_string(k);
    if (p.i < 1) throw Error(ErrorCode::IndexOutOfWidth, where + ": strand index < 1");
    switch (p.kind) {
      case PrimKind::Cup:
        if (p.i > w + 1) throw Error(ErrorCode::IndexOutOfWidth, where + ": cup beyond width");
        w += 2;
        break;
      case PrimKind::Cap:
        if (p.i + 1 > w) throw Error(ErrorCode::IndexOutOfWidth, where + ": cap beyond width");
        w -= 2;
        break;
      case PrimKind::Cross:
        if (p.i + 1 > w) throw Error(ErrorCode::IndexOutOfWidth, where + ": crossing beyond width");
        if (!std::isfinite(p.u.real()) || !std::isfinite(p.u.imag()) || p.u == cplx(0.0, 0.0))
          throw Error(ErrorCode::InvalidProgram, where + ": crossing weight must be finite and nonzero");
        break;
    }
    widths.push_back(w);
  }
  if (w != 0) throw Error(ErrorCode::NonClosedDiagram, "final width " + std::to_string(w));
  if (!prog.grouping.empty()) validate_grouping(prog, prog.grouping);
  return widths;
}

void validate_grouping(const TangleProgram& prog, const std::vector<Group>& grouping) {
  int next = 0;
  for (const auto& [s, e] : grouping) {
    if (s != next || e < s)
      throw Error(ErrorCode::InvalidProgram, "grouping is not a contiguous partition at prim " + std::to_string(next));
    next = e + 1;
  }
  if (next != static_cast<int>(prog.prims.size()))
    throw Error(ErrorCode::InvalidProgram, "grouping does not cover all prims");
}

int max_width(const TangleProgram& prog) {
  auto w = validate_program(prog);
  return *std::max_element(w.begin(), w.end());
}

TangleProgram plat_program(int n, const std::vector<std::pair<int, cplx>>& crossings) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "plat needs n >= 1");
  TangleProgram p;
  p.prims.reserve(4 * n + crossings.size());
  for (int k = 0; k < 2 * n; ++k) p.prims.push_back(TanglePrim::cup(1));
  for (const auto& [i, u] : crossings) {
    if (i < 1 || i > 4 * n - 1)
      throw Error(ErrorCode::BadCrossingIndex, "crossing index " + std::to_string(i));
    p.prims.push_back(TanglePrim::cross(i, u));
  }
  for (int k = 0; k < 2 * n; ++k) p.prims.push_back(TanglePrim::cap(1));
  validate_program(p);
  return p;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  int make() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

WeightedGraph medial_to_graph(const TangleProgram& prog, cplx d) {
  try {
    validate_program(prog);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidProgram, e.what());
  }
  // Regions are tracked per gap; gap j is shaded iff j is odd.
  Dsu dsu;
  std::vector<char> black;
  auto fresh = [&](bool is_black) {
    black.push_back(is_black);
    return dsu.make();
  };
  std::vector<int> gaps{fresh(false)};
  struct RawEdge {
    int a, b;
    cplx w;
    Parity p;
  };
  std::vector<RawEdge> raw;

  for (const auto& p : prog.prims) {
    const int i = p.i;
    switch (p.kind) {
      case PrimKind::Cup: {
        int outer = gaps[i - 1];
        int mid = fresh(i % 2 == 1);
        gaps.insert(gaps.begin() + i, {mid, outer});
        break;
      }
      case PrimKind::Cap: {
        dsu.unite(gaps[i - 1], gaps[i + 1]);
        gaps.erase(gaps.begin() + i, gaps.begin() + i + 2);
        break;
      }
      case PrimKind::Cross: {
        if (i % 2 == 1) {
          int above = fresh(true);
          raw.push_back({gaps[i], above, d * p.u, Parity::Odd});
          gaps[i] = above;
        } else {
          raw.push_back({gaps[i - 1], gaps[i + 1], d * p.u, Parity::Even});
          gaps[i] = fresh(false);
        }
        break;
      }
    }
  }

  std::vector<int> id(black.size(), -1);
  WeightedGraph g;
  for (int r = 0; r < static_cast<int>(black.size()); ++r) {
    if (!black[r]) continue;
    int root = dsu.find(r);
    if (id[root] < 0) id[root] = g.vertex_count++;
  }
  g.edges.reserve(raw.size());
  for (const auto& e : raw) g.edges.push_back({id[dsu.find(e.a)], id[dsu.find(e.b)], e.w, e.p});
  return g;
}

int shaded_holes(const TangleProgram& prog) {
  validate_program(prog);
  Dsu dsu;
  std::vector<int> pos;
  int loops = 0;
  auto cup_at = [&](int i) {
    int x = dsu.make();
    ++loops;
    pos.insert(pos.begin() + (i - 1), {x, x});
  };
  auto cap_at = [&](int i) {
    int a = dsu.find(pos[i - 1]), b = dsu.find(pos[i]);
    if (a != b) {
      dsu.unite(a, b);
      --loops;
    }
    pos.erase(pos.begin() + (i - 1), pos.begin() + (i + 1));
  };
  for (const auto& p : prog.prims) {
    if (p.kind == PrimKind::Cup) cup_at(p.i);
    else if (p.kind == PrimKind::Cap) cap_at(p.i);
    else if (p.i % 2 == 1) {
      cap_at(p.i);
      cup_at(p.i);
    }
  }
  return loops - medial_to_graph(prog, 1.0).vertex_count;
}

int bracket_exponent(const TangleProgram& prog) {
  return medial_to_graph(prog, 1.0).vertex_count - shaded_holes(prog);
}

TangleProgram random_program(std::uint64_t seed, const RandomProgramOptions& opt) {
  if (opt.max_width < 2) throw Error(ErrorCode::InvalidArgument, "random program needs max_width >= 2");
  std::mt19937_64 gen(seed);
  auto unif = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(unif() * (hi - lo + 1)); };
  TangleProgram p;
  int w = 0, crossings = 0;
  while (static_cast<int>(p.prims.size()) < opt.max_prims) {
    const bool can_cup = w + 2 <= opt.max_width;
    const bool can_cap = w >= 2;
    const bool can_cross = w >= 2 && crossings < opt.max_crossings;
    const double r = unif();
    if (can_cross && r < 0.5) {
      const double a = opt.min_abs_u + (opt.max_abs_u - opt.min_abs_u) * unif();
      const double th = 2.0 * std::numbers::pi * unif();
      p.prims.push_back(TanglePrim::cross(pick(1, w - 1), std::polar(a, th)));
      ++crossings;
    } else if (can_cup && (r < 0.8 || !can_cap)) {
      p.prims.push_back(TanglePrim::cup(pick(1, w + 1)));
      w += 2;
    } else if (can_cap) {
      p.prims.push_back(TanglePrim::cap(pick(1, w - 1)));
      w -= 2;
      if (w == 0 && unif() < 0.3) break;
    }
  }
  while (w > 0) {
    p.prims.push_back(TanglePrim::cap(pick(1, w - 1)));
    w -= 2;
  }
  validate_program(p);
  return p;
}

}  // namespace ttl
