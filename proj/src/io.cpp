#include "tutte_tl/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ttl {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& msg) {
  throw Error(ErrorCode::ParseError, where + ": " + msg);
}

const json& field(const json& j, const char* name, const std::string& where) {
  if (!j.is_object()) parse_fail(where, "expected object");
  auto it = j.find(name);
  if (it == j.end()) parse_fail(where, std::string("missing field '") + name + "'");
  return *it;
}

int int_field(const json& j, const char* name, const std::string& where) {
  const json& v = field(j, name, where);
  if (!v.is_number_integer()) parse_fail(where + "." + name, "expected integer");
  return v.get<int>();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) parse_fail(where, "unknown field '" + it.key() + "'");
  }
}

}  // namespace

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) {
    try {
      return parse_complex(j.get<std::string>());
    } catch (const Error&) {
      parse_fail(where, "bad complex string");
    }
  }
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    parse_fail(where, "expected [re,im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

cplx parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty complex literal");
  auto num = [&](const std::string& t, bool imag_unit) -> double {
    if (imag_unit && (t.empty() || t == "+")) return 1.0;
    if (imag_unit && t == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (...) {
      throw Error(ErrorCode::ParseError, "bad complex literal '" + raw + "'");
    }
    if (used != t.size()) throw Error(ErrorCode::ParseError, "bad complex literal '" + raw + "'");
    return v;
  };
  if (s.back() != 'i' && s.back() != 'j') return {num(s, false), 0.0};
  std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that is not part of an exponent or the leading sign
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, num(body, true)};
  return {num(body.substr(0, split), false), num(body.substr(split), true)};
}

json program_to_json(const TangleProgram& p) {
  json prims = json::array();
  for (const auto& t : p.prims) {
    json e;
    switch (t.kind) {
      case PrimKind::Cup: e["t"] = "cup"; break;
      case PrimKind::Cap: e["t"] = "cap"; break;
      case PrimKind::Cross: e["t"] = "cross"; break;
    }
    e["i"] = t.i;
    if (t.kind == PrimKind::Cross) e["u"] = complex_json(t.u);
    prims.push_back(e);
  }
  json out;
  out["prims"] = prims;
  if (!p.grouping.empty()) {
    json g = json::array();
    for (const auto& [s, e] : p.grouping) g.push_back(json::array({s, e}));
    out["groups"] = g;
  }
  return out;
}

TangleProgram program_from_json(const json& j) {
  check_keys(j, {"prims", "groups"}, "program");
  const json& prims = field(j, "prims", "program");
  if (!prims.is_array()) parse_fail("program.prims", "expected array");
  TangleProgram p;
  for (std::size_t k = 0; k < prims.size(); ++k) {
    const std::string where = "prims[" + std::to_string(k) + "]";
    const json& e = prims[k];
    check_keys(e, {"t", "i", "u"}, where);
    const json& t = field(e, "t", where);
    if (!t.is_string()) parse_fail(where + ".t", "expected string");
    const std::string kind = t.get<std::string>();
    const int i = int_field(e, "i", where);
    if (kind == "cup") {
      p.prims.push_back(TanglePrim::cup(i));
    } else if (kind == "cap") {
      p.prims.push_back(TanglePrim::cap(i));
    } else if (kind == "cross") {
      p.prims.push_back(TanglePrim::cross(i, complex_from_json(field(e, "u", where), where + ".u")));
    } else {
      parse_fail(where + ".t", "unknown prim kind '" + kind + "'");
    }
  }
  if (j.contains("groups")) {
    const json& g = j["groups"];
    if (!g.is_array()) parse_fail("program.groups", "expected array");
    for (std::size_t k = 0; k < g.size(); ++k) {
      const json& iv = g[k];
      if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number_integer() || !iv[1].is_number_integer())
        parse_fail("groups[" + std::to_string(k) + "]", "expected [start,end]");
      p.grouping.emplace_back(iv[0].get<int>(), iv[1].get<int>());
    }
  }
  return p;
}

json graph_to_json(const WeightedGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) {
    json x;
    x["a"] = e.a;
    x["b"] = e.b;
    x["w"] = complex_json(e.w);
    x["parity"] = e.parity == Parity::Odd ? "odd" : e.parity == Parity::Even ? "even" : "unknown";
    edges.push_back(x);
  }
  return json{{"n", g.vertex_count}, {"edges", edges}};
}

WeightedGraph graph_from_json(const json& j) {
  check_keys(j, {"n", "edges"}, "graph");
  WeightedGraph g;
  g.vertex_count = int_field(j, "n", "graph");
  if (g.vertex_count < 0) parse_fail("graph.n", "negative vertex count");
  const json& edges = field(j, "edges", "graph");
  if (!edges.is_array()) parse_fail("graph.edges", "expected array");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string where = "edges[" + std::to_string(k) + "]";
    const json& e = edges[k];
    check_keys(e, {"a", "b", "w", "parity"}, where);
    Edge x{int_field(e, "a", where), int_field(e, "b", where),
           complex_from_json(field(e, "w", where), where + ".w"), Parity::Unknown};
    if (x.a < 0 || x.a >= g.vertex_count || x.b < 0 || x.b >= g.vertex_count)
      parse_fail(where, "endpoint out of range");
    if (e.contains("parity")) {
      const std::string p = e["parity"].is_string() ? e["parity"].get<std::string>() : "";
      if (p == "odd") x.parity = Parity::Odd;
      else if (p == "even") x.parity = Parity::Even;
      else if (p == "unknown") x.parity = Parity::Unknown;
      else parse_fail(where + ".parity", "expected odd|even|unknown");
    }
    g.edges.push_back(x);
  }
  return g;
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

json circuit_to_json(const Circuit& c) {
  json gates = json::array();
  for (const auto& g : c.gates) {
    json x;
    x["pos"] = g.pos;
    if (g.m.size() != 0) x["m"] = matrix_to_json(g.m);
    if (!g.word.empty()) {
      json w = json::array();
      for (const auto& [i, u] : g.word) w.push_back(json{{"i", i}, {"u", complex_json(u)}});
      x["word"] = w;
    }
    gates.push_back(x);
  }
  return json{{"n", c.n}, {"gates", gates}};
}

Circuit circuit_from_json(const json& j) {
  check_keys(j, {"n", "gates"}, "circuit");
  Circuit c;
  c.n = int_field(j, "n", "circuit");
  if (c.n < 1) parse_fail("circuit.n", "need at least one qubit");
  const json& gates = field(j, "gates", "circuit");
  if (!gates.is_array()) parse_fail("circuit.gates", "expected array");
  for (std::size_t k = 0; k < gates.size(); ++k) {
    const std::string where = "gates[" + std::to_string(k) + "]";
    const json& g = gates[k];
    check_keys(g, {"pos", "m", "word"}, where);
    Gate gate;
    gate.pos = int_field(g, "pos", where);
    if (gate.pos < 1 || gate.pos + 1 > c.n) parse_fail(where + ".pos", "gate outside the register");
    if (g.contains("m")) {
      const json& m = g["m"];
      std::vector<cplx> entries;
      if (m.is_array() && m.size() == 4 && m[0].is_array() && m[0].size() == 4 && m[0][0].is_array()) {
        for (std::size_t r = 0; r < 4; ++r)
          for (std::size_t col = 0; col < 4; ++col)
            entries.push_back(complex_from_json(m[r][col], where + ".m"));
      } else {
        const json& flat = (m.is_array() && m.size() == 1 && m[0].is_array()) ? m[0] : m;
        if (!flat.is_array() || flat.size() != 16) parse_fail(where + ".m", "expected 4x4 complex matrix");
        for (const auto& e : flat) entries.push_back(complex_from_json(e, where + ".m"));
      }
      gate.m = Mat(4, 4);
      for (int r = 0; r < 4; ++r)
        for (int col = 0; col < 4; ++col) gate.m(r, col) = entries[4 * r + col];
    }
    if (g.contains("word")) {
      const json& w = g["word"];
      if (!w.is_array()) parse_fail(where + ".word", "expected array");
      for (std::size_t q = 0; q < w.size(); ++q) {
        const std::string wh = where + ".word[" + std::to_string(q) + "]";
        gate.word.emplace_back(int_field(w[q], "i", wh), complex_from_json(field(w[q], "u", wh), wh + ".u"));
      }
    }
    if (gate.m.size() == 0 && gate.word.empty()) parse_fail(where, "gate needs 'm' or 'word'");
    c.gates.push_back(gate);
  }
  return c;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ttl
