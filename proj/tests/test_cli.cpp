#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tutte_tl/io.hpp"
#include "tutte_tl/params.hpp"

using namespace ttl;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(TUTTE_TL_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(f);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string write_tmp(const std::string& name, const json& j) {
  const auto dir = std::filesystem::temp_directory_path() / "tutte_tl_cli_test";
  std::filesystem::create_directories(dir);
  const auto p = dir / name;
  std::ofstream(p) << j.dump();
  return p.string();
}

std::string single_edge() {
  WeightedGraph g;
  g.vertex_count = 2;
  g.edges.push_back({0, 1, 1.0});
  return write_tmp("edge.json", graph_to_json(g));
}

std::string loop() {
  TangleProgram p;
  p.prims = {TanglePrim::cup(1), TanglePrim::cap(1)};
  return write_tmp("loop.json", program_to_json(p));
}

}  // namespace

TEST(Cli, TutteSingleEdge) {
  CliRun r = run("tutte --graph " + single_edge() + " --q 2+0i");
  ASSERT_EQ(r.status, 0);
  json j = json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["value"][0].get<double>(), 6.0);
  EXPECT_DOUBLE_EQ(j["value"][1].get<double>(), 0.0);
}

TEST(Cli, PottsSingleEdge) {
  CliRun r = run("potts --graph " + single_edge() + " --q 2");
  ASSERT_EQ(r.status, 0);
  EXPECT_DOUBLE_EQ(json::parse(r.out)["value"][0].get<double>(), 6.0);
}

TEST(Cli, SimulateLoopExact) {
  CliRun r = run("simulate --tangle " + loop() + " --mode exact");
  ASSERT_EQ(r.status, 0);
  json j = json::parse(r.out);
  EXPECT_NEAR(j["z"]["value"][0].get<double>(), 3.0, 1e-10);
  EXPECT_NEAR(j["z"]["value"][1].get<double>(), 0.0, 1e-10);
}

TEST(Cli, EvalLoop) {
  CliRun r = run("eval --tangle " + loop() + " --d 2");
  ASSERT_EQ(r.status, 0);
  json j = json::parse(r.out);
  EXPECT_NEAR(j["bracket"]["value"][0].get<double>(), 2.0, 1e-12);
}

TEST(Cli, VerifyRepresentationPasses) {
  CliRun r = run("verify --suite representation --programs 5");
  EXPECT_EQ(r.status, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["failed"].get<int>(), 0);
  EXPECT_GT(j["rows"].size(), 0u);
}

TEST(Cli, DimsCsv) {
  CliRun r = run("dims --format csv");
  ASSERT_EQ(r.status, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "dim,end,start");
  int total = 0, rows = 0;
  while (std::getline(in, line)) {
    total += std::stoi(line.substr(0, line.find(',')));
    ++rows;
  }
  EXPECT_EQ(rows, 13);
  EXPECT_EQ(total, 378);
}

TEST(Cli, ClassifyUnitary) {
  CliRun r = run("classify --params unitary");
  ASSERT_EQ(r.status, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["class"].get<std::string>(), param_class_name(ParamClass::UnitaryCaseI));
  EXPECT_TRUE(j["unitary_type"].get<bool>());
}

TEST(Cli, CompileIdentity) {
  CliRun r = run("compile --gate identity --epsilon 0.01");
  ASSERT_EQ(r.status, 0);
  json j = json::parse(r.out);
  EXPECT_LE(j["l8_error"].get<double>(), 0.01);
  EXPECT_TRUE(j["balanced"].get<bool>());
}

TEST(Cli, UsageErrorExitsTwo) {
  CliRun r = run("tutte --q 3");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(json::parse(r.out)["error"]["code"].get<std::string>(), "UsageError");
  EXPECT_EQ(run("nosuchverb").status, 2);
}

TEST(Cli, LibraryErrorExitsOne) {
  const std::string bad = write_tmp("bad.json", json{{"n", 2}, {"edges", json::array({{{"a", 0}, {"b", 5}, {"w", {1.0, 0.0}}}})}});
  CliRun r = run("tutte --graph " + bad + " --q 3");
  EXPECT_EQ(r.status, 1);
  EXPECT_TRUE(json::parse(r.out).contains("error"));
  CliRun s = run("compile --params complex --q 1 --w-odd 2 --w-even 1");
  EXPECT_EQ(s.status, 1);
}

TEST(Cli, Deterministic) {
  const std::string a = "simulate --tangle " + loop() + " --mode sampled --samples 2000 --seed 9";
  CliRun r1 = run(a), r2 = run(a);
  ASSERT_EQ(r1.status, 0);
  EXPECT_EQ(r1.out, r2.out);
  CliRun t1 = run("tutte --graph " + single_edge() + " --q 1.5+0.5i --threads 1");
  CliRun t2 = run("tutte --graph " + single_edge() + " --q 1.5+0.5i --threads 4");
  EXPECT_EQ(t1.out, t2.out);
}
