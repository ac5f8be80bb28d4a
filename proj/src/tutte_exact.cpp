#include "tutte_tl/tutte_exact.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <memory>
#include <numeric>
#include <string>
#include <thread>

namespace ttl {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TUTTE_TL_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

namespace {

constexpr std::uint64_t kChunk = 1u << 12;

cplx pairwise(const std::function<cplx(std::uint64_t)>& f, std::uint64_t lo, std::uint64_t hi) {
  if (hi - lo <= 8) {
    cplx s{0.0, 0.0};
    for (std::uint64_t k = lo; k < hi; ++k) s += f(k);
    return s;
  }
  std::uint64_t mid = lo + (hi - lo) / 2;
  return pairwise(f, lo, mid) + pairwise(f, mid, hi);
}

cplx reduce_tree(const std::vector<cplx>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return v[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  return reduce_tree(v, lo, mid) + reduce_tree(v, mid, hi);
}

// Deterministic sum of f(0..n-1): fixed chunks, pairwise within and across chunks.
// f must be callable concurrently; make_f builds one evaluator per worker.
cplx chunked_sum(std::uint64_t n, int threads,
                 const std::function<std::function<cplx(std::uint64_t)>()>& make_f) {
  if (n == 0) return {0.0, 0.0};
  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<cplx> partial(chunks);
  const int workers = static_cast<int>(std::min<std::uint64_t>(resolve_threads(threads), chunks));
  auto work = [&](int w) {
    auto f = make_f();
    for (std::uint64_t c = w; c < chunks; c += workers)
      partial[c] = pairwise(f, c * kChunk, std::min(n, (c + 1) * kChunk));
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  return reduce_tree(partial, 0, partial.size());
}

struct SmallDsu {
  std::vector<int> p;
  explicit SmallDsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  void reset() { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

}  // namespace

int component_count(const WeightedGraph& g) {
  SmallDsu dsu(g.vertex_count);
  int k = g.vertex_count;
  for (const auto& e : g.edges)
    if (dsu.unite(e.a, e.b)) --k;
  return k;
}

cplx z_multivariate(const WeightedGraph& g, cplx q, const EnumerationCaps& caps) {
  const int m = static_cast<int>(g.edges.size());
  if (m > caps.max_edges || m > 62)
    throw Error(ErrorCode::TooManyEdges, std::to_string(m) + " edges exceed cap " + std::to_string(caps.max_edges));
  std::vector<cplx> qpow(g.vertex_count + 1, 1.0);
  for (int k = 1; k <= g.vertex_count; ++k) qpow[k] = qpow[k - 1] * q;
  return chunked_sum(std::uint64_t{1} << m, caps.threads, [&]() {
    auto dsu = std::make_shared<SmallDsu>(g.vertex_count);
    return std::function<cplx(std::uint64_t)>([&, dsu](std::uint64_t mask) {
      dsu->reset();
      int k = g.vertex_count;
      cplx w{1.0, 0.0};
      for (int e = 0; e < m; ++e) {
        if (!(mask >> e & 1)) continue;
        w *= g.edges[e].w;
        if (dsu->unite(g.edges[e].a, g.edges[e].b)) --k;
      }
      return qpow[k] * w;
    });
  });
}

TutteValue standard_tutte(const WeightedGraph& g, cplx x, cplx y, const EnumerationCaps& caps) {
  if (x == cplx(1.0, 0.0) || y == cplx(1.0, 0.0))
    throw Error(ErrorCode::SingularPoint, "standard Tutte change of variables needs x != 1 and y != 1");
  const int m = static_cast<int>(g.edges.size());
  if (m > caps.max_edges || m > 62) throw Error(ErrorCode::TooManyEdges, std::to_string(m) + " edges");
  WeightedGraph uniform = g;
  for (auto& e : uniform.edges) e.w = y - 1.0;
  const int kE = component_count(g);
  TutteValue out;
  out.via_z = std::pow(x - 1.0, -kE) * std::pow(y - 1.0, -g.vertex_count) *
              z_multivariate(uniform, (x - 1.0) * (y - 1.0), caps);
  out.direct_sum = chunked_sum(std::uint64_t{1} << m, caps.threads, [&]() {
    auto dsu = std::make_shared<SmallDsu>(g.vertex_count);
    return std::function<cplx(std::uint64_t)>([&, dsu](std::uint64_t mask) {
      dsu->reset();
      int k = g.vertex_count;
      int size = 0;
      for (int e = 0; e < m; ++e) {
        if (!(mask >> e & 1)) continue;
        ++size;
        if (dsu->unite(g.edges[e].a, g.edges[e].b)) --k;
      }
      return std::pow(x - 1.0, k - kE) * std::pow(y - 1.0, size + k - g.vertex_count);
    });
  });
  return out;
}

cplx potts_partition(const WeightedGraph& g, int q, const EnumerationCaps& caps) {
  if (q < 1) throw Error(ErrorCode::InvalidArgument, "Potts q must be a positive integer");
  const double total = std::pow(static_cast<double>(q), g.vertex_count);
  if (total > caps.max_colorings)
    throw Error(ErrorCode::TooManyColorings, "q^|V| = " + std::to_string(total) + " exceeds cap");
  const auto n = static_cast<std::uint64_t>(std::llround(total));
  return chunked_sum(n, caps.threads, [&]() {
    auto color = std::make_shared<std::vector<int>>(g.vertex_count);
    return std::function<cplx(std::uint64_t)>([&, color](std::uint64_t idx) {
      for (int v = 0; v < g.vertex_count; ++v) {
        (*color)[v] = static_cast<int>(idx % q);
        idx /= q;
      }
      cplx w{1.0, 0.0};
      for (const auto& e : g.edges)
        if ((*color)[e.a] == (*color)[e.b]) w *= 1.0 + e.w;
      return w;
    });
  });
}

cplx kauffman_bruteforce(const TangleProgram& prog, cplx d, const EnumerationCaps& caps) {
  try {
    validate_program(prog);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidProgram, e.what());
  }
  const int c = prog.crossing_count();
  if (c > caps.max_crossings || c > 62)
    throw Error(ErrorCode::TooManyCrossings, std::to_string(c) + " crossings exceed cap");
  return chunked_sum(std::uint64_t{1} << c, caps.threads, [&]() {
    // Arcs are union-find nodes; each strand position carries the arc it belongs to.
    struct Scratch {
      std::vector<int> parent;
      std::vector<int> pos;
    };
    auto s = std::make_shared<Scratch>();
    return std::function<cplx(std::uint64_t)>([&, s](std::uint64_t state) {
      auto& parent = s->parent;
      auto& pos = s->pos;
      parent.clear();
      pos.clear();
      auto make = [&]() {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
      };
      auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      int loops = 0;
      auto cap_at = [&](int i) {
        int a = find(pos[i - 1]), b = find(pos[i]);
        if (a != b) {
          parent[a] = b;
          --loops;
        }
        pos.erase(pos.begin() + (i - 1), pos.begin() + (i + 1));
      };
      auto cup_at = [&](int i) {
        int x = make();
        ++loops;
        pos.insert(pos.begin() + (i - 1), {x, x});
      };
      cplx w{1.0, 0.0};
      int bit = 0;
      for (const auto& p : prog.prims) {
        switch (p.kind) {
          case PrimKind::Cup: cup_at(p.i); break;
          case PrimKind::Cap: cap_at(p.i); break;
          case PrimKind::Cross: {
            const bool opened = state >> bit++ & 1;
            const bool odd = p.i % 2 == 1;
            if (opened) {
              w *= odd ? cplx(1.0, 0.0) : p.u;
              cap_at(p.i);
              cup_at(p.i);
            } else {
              w *= odd ? p.u : cplx(1.0, 0.0);
            }
            break;
          }
        }
      }
      return w * std::pow(d, loops);
    });
  });
}

}  // namespace ttl
