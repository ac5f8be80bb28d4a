// Command-line front end: tutte, potts, bracket, eval, simulate, reduce, classify,
// compile, verify, dims. Results go to stdout (or --out) as JSON or CSV; the
// resolved configuration is echoed to stderr.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tutte_tl/compile.hpp"
#include "tutte_tl/evaluator.hpp"
#include "tutte_tl/io.hpp"
#include "tutte_tl/params.hpp"
#include "tutte_tl/qsim.hpp"
#include "tutte_tl/reduce.hpp"
#include "tutte_tl/tutte_exact.hpp"
#include "tutte_tl/verify.hpp"

using namespace ttl;

namespace {

struct Common {
  std::string format = "json";
  std::string out;
  int threads = 0;
  double tol = 0.0;  // 0: per-check defaults
  std::uint64_t seed = 1;
};

struct ParamArgs {
  std::string set = "unitary";
  std::string q;
  std::string w_odd, w_even;
};

json scaled_json(const Scaled& s) {
  json j{{"log_abs", s.log_abs()}, {"arg", s.arg()}};
  const cplx v = s.value();
  j["value"] = std::isfinite(v.real()) && std::isfinite(v.imag()) ? complex_json(v) : json(nullptr);
  return j;
}

std::vector<cplx> parse_list(const std::string& s) {
  std::vector<cplx> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_complex(item));
  return out;
}

ParamSet resolve_params(const ParamArgs& a) {
  if (!a.w_odd.empty() || !a.w_even.empty()) {
    if (a.q.empty()) throw Error(ErrorCode::InvalidArgument, "--w-odd/--w-even need --q");
    return classify_params(parse_complex(a.q), parse_list(a.w_odd), parse_list(a.w_even));
  }
  if (a.set == "unitary") return example_params(ExampleSet::Unitary);
  if (a.set == "complex") return example_params(ExampleSet::Complex);
  if (a.set == "real") return example_params(ExampleSet::Real);
  throw Error(ErrorCode::InvalidArgument, "unknown parameter set " + a.set);
}

json params_json(const ParamSet& p) {
  json checks = json::array();
  for (const auto& c : p.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"value", c.value}});
  json wo = json::array(), we = json::array();
  for (auto w : p.W_odd) wo.push_back(complex_json(w));
  for (auto w : p.W_even) we.push_back(complex_json(w));
  return {{"class", param_class_name(p.cls)},
          {"q", complex_json(p.q)},
          {"d", complex_json(p.d)},
          {"w_odd", wo},
          {"w_even", we},
          {"closed", p.closed},
          {"unitary_type", p.unitary_type},
          {"hermitian_rep", p.hermitian_rep},
          {"alpha", complex_json(p.alpha)},
          {"beta", complex_json(p.beta)},
          {"s1", p.s1},
          {"s2", p.s2},
          {"s_irrational_advisory", p.s_irrational},
          {"reasons", p.reasons},
          {"checks", checks}};
}

Mat named_gate(const std::string& name) {
  Mat U = Mat::Identity(4, 4);
  const double s = 1.0 / std::sqrt(2.0);
  if (name == "identity") return U;
  if (name == "cz") {
    U(3, 3) = -1.0;
    return U;
  }
  if (name == "cnot") {
    U(2, 2) = U(3, 3) = 0.0;
    U(2, 3) = U(3, 2) = 1.0;
    return U;
  }
  if (name == "swap") {
    U(1, 1) = U(2, 2) = 0.0;
    U(1, 2) = U(2, 1) = 1.0;
    return U;
  }
  if (name == "hadamard") {  // H on the first qubit
    U << s, 0, s, 0, 0, s, 0, s, s, 0, -s, 0, 0, s, 0, -s;
    return U;
  }
  if (name == "phase") {  // S on the first qubit
    U(2, 2) = U(3, 3) = cplx(0.0, 1.0);
    return U;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown gate " + name + " (identity, cz, cnot, swap, hadamard, phase)");
}

Mat gate_from_file(const std::string& path) {
  json j = parse_json_text(read_text_file(path));
  json c{{"n", 2}, {"gates", json::array({{{"pos", 1}, {"m", j}}})}};
  return circuit_from_json(c).gates.front().m;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Arrays of flat objects become tables; objects become key,value rows.
std::string to_csv(const json& j) {
  std::ostringstream os;
  const json* table = nullptr;
  if (j.is_array()) table = &j;
  else if (j.contains("rows") && j["rows"].is_array()) table = &j["rows"];
  if (table && !table->empty() && (*table)[0].is_object()) {
    std::vector<std::string> keys;
    for (auto it = (*table)[0].begin(); it != (*table)[0].end(); ++it) keys.push_back(it.key());
    for (std::size_t k = 0; k < keys.size(); ++k) os << (k ? "," : "") << keys[k];
    os << "\n";
    for (const auto& row : *table) {
      for (std::size_t k = 0; k < keys.size(); ++k)
        os << (k ? "," : "") << csv_escape(row.contains(keys[k]) ? scalar_text(row[keys[k]]) : "");
      os << "\n";
    }
    return os.str();
  }
  os << "key,value\n";
  for (auto it = j.begin(); it != j.end(); ++it) os << csv_escape(it.key()) << "," << csv_escape(scalar_text(*it)) << "\n";
  return os.str();
}

void emit(const Common& c, const json& result) {
  const std::string text = c.format == "csv" ? to_csv(result) : result.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + c.out);
    f << text;
  }
}

void print_error(const std::string& code, const std::string& msg) {
  std::cout << json{{"error", {{"code", code}, {"message", msg}}}}.dump() << "\n";
}

EnumerationCaps caps_of(const Common& c) {
  EnumerationCaps caps;
  caps.threads = resolve_threads(c.threads);
  return caps;
}

cplx d_or_default(const std::string& d) { return d.empty() ? cplx(std::sqrt(3.0), 0.0) : parse_complex(d); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tutte/Potts evaluation via the path-model representation, quantum simulation and hardness tools"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", "tutte-tl 1.0");
  Common common;
  ParamArgs pargs;
  std::string graph, tangle, circuit, q, d, mode = "exact", suite = "all", gate = "cz", gate_file;
  long long samples = 100000;
  double epsilon = 0.01;
  bool exact_gates = false, no_eval = false, grouped = false, emit_word = false, improved = false, lift = false;
  int programs = 30;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--out", common.out, "Output path (default stdout)");
    s->add_option("--threads", common.threads, "Worker cap (default TUTTE_TL_THREADS or 1)")->check(CLI::NonNegativeNumber);
    s->add_option("--tol", common.tol, "Tolerance override (scales check tolerances in verify)")->check(CLI::NonNegativeNumber);
    s->add_option("--seed", common.seed, "Seed");
  };
  auto add_params = [&](CLI::App* s) {
    s->add_option("--params", pargs.set, "Example parameter set")->check(CLI::IsMember({"unitary", "complex", "real"}));
    s->add_option("--q", pargs.q, "q as a+bi (with --w-odd/--w-even)");
    s->add_option("--w-odd", pargs.w_odd, "Comma-separated odd weights");
    s->add_option("--w-even", pargs.w_even, "Comma-separated even weights");
  };

  auto* c_tutte = app.add_subcommand("tutte", "Multivariate Tutte polynomial Z_G(q; v)");
  c_tutte->add_option("--graph", graph, "Graph JSON")->required()->check(CLI::ExistingFile);
  c_tutte->add_option("--q", q, "q as a+bi")->required();
  add_common(c_tutte);

  auto* c_potts = app.add_subcommand("potts", "Potts partition function by spin enumeration");
  c_potts->add_option("--graph", graph, "Graph JSON")->required()->check(CLI::ExistingFile);
  c_potts->add_option("--q", q, "Integer q >= 1")->required();
  add_common(c_potts);

  auto* c_bracket = app.add_subcommand("bracket", "Kauffman bracket by state enumeration");
  c_bracket->add_option("--tangle", tangle, "Tangle JSON")->required()->check(CLI::ExistingFile);
  c_bracket->add_option("--d", d, "Loop value d as a+bi")->required();
  add_common(c_bracket);

  auto* c_eval = app.add_subcommand("eval", "Exact path-model evaluation with approximation scales");
  c_eval->add_option("--tangle", tangle, "Tangle JSON")->required()->check(CLI::ExistingFile);
  c_eval->add_option("--d", d, "Loop value d as a+bi")->required();
  add_common(c_eval);

  auto* c_sim = app.add_subcommand("simulate", "Hadamard-test simulation of the evaluation circuit");
  c_sim->add_option("--tangle", tangle, "Tangle JSON")->required()->check(CLI::ExistingFile);
  c_sim->add_option("--d", d, "Loop value d as a+bi (default sqrt 3)");
  c_sim->add_option("--mode", mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
  c_sim->add_option("--samples", samples, "Shots per part (sampled mode)")->check(CLI::PositiveNumber);
  c_sim->add_flag("--grouped", grouped, "Simulate group matrices");
  add_common(c_sim);

  auto* c_reduce = app.add_subcommand("reduce", "Reduce a circuit to a plat program and weighted graph");
  c_reduce->add_option("--circuit", circuit, "Circuit JSON")->required()->check(CLI::ExistingFile);
  c_reduce->add_option("--epsilon", epsilon, "Total error budget")->check(CLI::PositiveNumber);
  c_reduce->add_flag("--exact-gates", exact_gates, "Use gate words instead of compiling gate matrices");
  c_reduce->add_flag("--no-eval", no_eval, "Skip the exact evaluation of Z_G");
  c_reduce->add_flag("--lift", lift, "Apply the real-circuit lift first");
  add_params(c_reduce);
  add_common(c_reduce);

  auto* c_classify = app.add_subcommand("classify", "Classify a weight set and run density diagnostics");
  add_params(c_classify);
  add_common(c_classify);

  auto* c_compile = app.add_subcommand("compile", "Compile a two-qubit gate into a crossing word");
  c_compile->add_option("--gate", gate, "identity, cz, cnot, swap, hadamard, phase");
  c_compile->add_option("--gate-file", gate_file, "4x4 complex matrix JSON")->check(CLI::ExistingFile);
  c_compile->add_option("--epsilon", epsilon, "L_8 error bound")->check(CLI::PositiveNumber);
  c_compile->add_flag("--emit-word", emit_word, "Include the crossing word");
  c_compile->add_flag("--improved", improved, "Also certify the norm on H*_8 representatives");
  add_params(c_compile);
  add_common(c_compile);

  auto* c_verify = app.add_subcommand("verify", "Run the invariant suites");
  c_verify->add_option("--suite", suite, "Suite name or all")
      ->check(CLI::IsMember({"all", "tangle", "tutte", "representation", "evaluator", "simulator", "hardness"}));
  c_verify->add_option("--programs", programs, "Random programs per suite")->check(CLI::PositiveNumber);
  add_common(c_verify);

  auto* c_dims = app.add_subcommand("dims", "Dimensions of every H_{n,k->l}");
  c_dims->add_option("--d", d, "Loop value d as a+bi (default sqrt 3)");
  int steps = 8;
  c_dims->add_option("--steps", steps, "Path length")->check(CLI::PositiveNumber);
  add_common(c_dims);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("UsageError", e.what());
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  std::cerr << "# tutte-tl " << sub->get_name() << "\n";
  std::istringstream cfg(sub->config_to_str(true, false));
  for (std::string line; std::getline(cfg, line);)
    if (!line.empty() && line[0] != '[') std::cerr << "# " << line << "\n";
  std::cerr << "# resolved_threads=" << resolve_threads(common.threads) << "\n";

  try {
    const std::string verb = sub->get_name();
    json r;
    if (verb == "tutte") {
      WeightedGraph g = graph_from_json(parse_json_text(read_text_file(graph)));
      r = {{"value", complex_json(z_multivariate(g, parse_complex(q), caps_of(common)))}};
    } else if (verb == "potts") {
      const cplx qq = parse_complex(q);
      if (qq.imag() != 0.0 || qq.real() < 1.0 || qq.real() != std::floor(qq.real()))
        throw Error(ErrorCode::InvalidArgument, "potts needs an integer q >= 1");
      WeightedGraph g = graph_from_json(parse_json_text(read_text_file(graph)));
      r = {{"value", complex_json(potts_partition(g, static_cast<int>(qq.real()), caps_of(common)))}};
    } else if (verb == "bracket") {
      TangleProgram p = program_from_json(parse_json_text(read_text_file(tangle)));
      r = {{"value", complex_json(kauffman_bruteforce(p, parse_complex(d), caps_of(common)))}};
    } else if (verb == "eval") {
      TangleProgram p = program_from_json(parse_json_text(read_text_file(tangle)));
      PathRep rep = PathRep::for_width(parse_complex(d), max_width(p));
      EvalReport ev = evaluate_exact(p, rep);
      r = {{"bracket", scaled_json(ev.bracket)},
           {"z", scaled_json(ev.z_value)},
           {"vertices", ev.vertex_count},
           {"holes", ev.holes},
           {"odd_edges", ev.odd_edges},
           {"log_delta_alg", ev.log_delta_alg},
           {"log_delta_grp", ev.log_delta_grp},
           {"grouped", ev.has_grouping}};
    } else if (verb == "simulate") {
      TangleProgram p = program_from_json(parse_json_text(read_text_file(tangle)));
      PathRep rep = PathRep::for_width(d_or_default(d), max_width(p));
      EstimateOptions o;
      o.mode = mode == "sampled" ? EstimateMode::Sampled : EstimateMode::Exact;
      o.samples = samples;
      o.seed = common.seed;
      o.grouped = grouped;
      if (common.tol > 0) o.delta = common.tol;
      EstimateReport e = hadamard_estimate(p, rep, o);
      r = {{"mode", mode},
           {"estimate", complex_json(e.estimate)},
           {"exact_amplitude", complex_json(e.exact_amplitude)},
           {"log_scale", e.log_scale},
           {"z", scaled_json(e.z_estimate)},
           {"samples", e.samples},
           {"seed", e.seed},
           {"hoeffding_bound", e.hoeffding_bound},
           {"qubits", e.qubits},
           {"vertices", e.vertex_count}};
    } else if (verb == "reduce") {
      Circuit c = circuit_from_json(parse_json_text(read_text_file(circuit)));
      if (lift) c = real_circuit_lift(c);
      ParamSet ps = resolve_params(pargs);
      ReduceOptions o;
      o.epsilon = epsilon;
      o.exact_gates = exact_gates;
      o.evaluate = !no_eval;
      o.compile.seed = common.seed;
      ReductionReport rr = reduce_circuit(c, ps, o);
      json errs = rr.gate_errors, lens = rr.gate_lengths;
      r = {{"tangle", program_to_json(rr.program)},
           {"graph", graph_to_json(rr.graph)},
           {"delta_hard", scaled_json(rr.delta_hard)},
           {"vertices", rr.vertex_count},
           {"odd_edges", rr.odd_edges},
           {"vertex_identity", rr.vertex_identity},
           {"gate_errors", errs},
           {"gate_lengths", lens},
           {"amplitude", complex_json(rr.amplitude)},
           {"bound", rr.bound}};
      if (rr.evaluated) {
        r["z"] = scaled_json(rr.z_value);
        r["z_ratio"] = complex_json(rr.z_ratio);
        r["amplitude_check"] = rr.amplitude_check;
      }
    } else if (verb == "classify") {
      ParamSet ps = resolve_params(pargs);
      r = params_json(ps);
      if (ps.cls != ParamClass::PottsPhysical && ps.cls != ParamClass::Unclassified) {
        DensityReport dr = density_diagnostics(ps, rep_for_params(ps));
        r["density"] = {{"trace_direct", complex_json(dr.trace_direct)},
                        {"trace_formula", complex_json(dr.trace_formula)},
                        {"trace_diff", dr.trace_diff},
                        {"tau", complex_json(dr.tau)},
                        {"tau_prime", complex_json(dr.tau_prime)},
                        {"gamma", complex_json(dr.gamma)},
                        {"elementary", dr.elementary},
                        {"jorgensen_x", dr.jorgensen_x},
                        {"jorgensen_y", dr.jorgensen_y},
                        {"non_commuting", dr.non_commuting}};
      }
    } else if (verb == "compile") {
      ParamSet ps = resolve_params(pargs);
      CompileOptions o;
      o.seed = common.seed;
      o.improved = improved;
      const Mat U = gate_file.empty() ? named_gate(gate) : gate_from_file(gate_file);
      auto gc = cached_compiler(ps, o);
      CompiledGate g = gc->compile(U, epsilon);
      r = {{"class", param_class_name(ps.cls)},
           {"epsilon", epsilon},
           {"l8_error", g.result.error_bound},
           {"k_error", g.k_error},
           {"length", g.result.length},
           {"elements", g.elements},
           {"decomposition_residual", g.decomposition_residual},
           {"lambda", complex_json(g.lambda)},
           {"delta_t", scaled_json(g.result.delta_scaled)},
           {"balanced", balanced(g.result.word(), 7)}};
      if (improved) r["improved_norm"] = g.improved_norm;
      if (emit_word) {
        json w = json::array();
        for (const auto& [i, u] : g.crossings(gc->alphabet())) w.push_back({{"i", i}, {"u", complex_json(u)}});
        r["word"] = w;
      }
    } else if (verb == "verify") {
      VerifyOptions o;
      o.seed = common.seed;
      o.programs = programs;
      if (common.tol > 0) o.tol_scale = common.tol;
      json rows = json::array();
      int failed = 0;
      for (const auto& row : run_verify(suite, o)) {
        rows.push_back({{"suite", row.suite},
                        {"check", row.name},
                        {"value", row.value},
                        {"tol", row.tol},
                        {"status", row.skipped ? "skip" : row.pass ? "pass" : "fail"},
                        {"note", row.note}});
        if (!row.pass) ++failed;
      }
      r = {{"suite", suite}, {"failed", failed}, {"rows", rows}};
      emit(common, r);
      return failed ? 1 : 0;
    } else if (verb == "dims") {
      PathRep rep = PathRep::compute(d_or_default(d), 32);
      json rows = json::array();
      int total = 0;
      for (const auto& s : subspace_dims(rep, steps)) {
        rows.push_back({{"start", s.start}, {"end", s.end}, {"dim", s.dim}});
        total += s.dim;
      }
      r = {{"d", complex_json(rep.d())}, {"steps", steps}, {"total", total}, {"rows", rows}};
    }
    emit(common, r);
    return 0;
  } catch (const Error& e) {
    print_error(error_name(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("InternalError", e.what());
    return 1;
  }
}
