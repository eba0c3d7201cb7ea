#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "mnc/cli.hpp"

namespace {

using namespace mnc;
using namespace mnc::cli;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cmd(const RunConfig& c) {
  std::ostringstream out, err;
  const int code = cmd_run(c, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(std::string program) {
  RunConfig c;
  c.program = std::move(program);
  return c;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mnc_test_" + name);
}

TEST(Cli, RunMin) {
  RunConfig c = config("min");
  c.array = "5,2,8";
  const Result r = run_cmd(c);
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "min = 2, steps = 4\n");
}

TEST(Cli, RunSort) {
  RunConfig c = config("sort");
  c.array = "3,1,2";
  c.check = true;
  const Result r = run_cmd(c);
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "sorted = [1, 2, 3], steps = 6\n");
}

TEST(Cli, RunAStar) {
  RunConfig c = config("astar");
  c.instance = "canonical";
  c.strict_addresses = true;
  const Result r = run_cmd(c);
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out.rfind("path = S→B→D→G, cost = 8", 0), 0u) << r.out;
  c.instance = std::string(MNC_DATA_DIR) + "/canonical_instance.txt";
  EXPECT_EQ(run_cmd(c).out, r.out);
}

TEST(Cli, ArrayFromFile) {
  const auto path = temp_file("array.txt");
  std::ofstream(path) << "4\n-1.5\n9\n";
  RunConfig c = config("min");
  c.array = "@" + path.string();
  EXPECT_EQ(run_cmd(c).out, "min = -1.5, steps = 4\n");
  std::filesystem::remove(path);
}

TEST(Cli, ExitCodes) {
  RunConfig c = config("min");
  c.array = "5,x";
  EXPECT_EQ(run_cmd(c).code, kUsage);
  EXPECT_EQ(run_cmd(config("min")).code, kUsage);
  EXPECT_EQ(run_cmd(config("heap")).code, kUsage);
  c.array = "5,4,3";
  c.max_steps = 2;
  EXPECT_EQ(run_cmd(c).code, kNonTermination);
  c = config("min");
  c.array = "5";
  c.tau = -1.0;
  EXPECT_EQ(run_cmd(c).code, kUsage);
  c = config("astar");
  c.capacity = 134;  // five node records; the canonical search needs eight
  EXPECT_EQ(run_cmd(c).code, kCompile);
  c = config("astar");
  c.instance = "/nonexistent/instance.txt";
  EXPECT_EQ(run_cmd(c).code, kUsage);
}

TEST(Cli, ContractViolationExitCode) {
  // At tau = 1 every write leaks into untargeted cells; check mode
  // reports the frame violation.
  RunConfig c = config("min");
  c.array = "5,2,8";
  c.tau = 1.0;
  c.check = true;
  const Result r = run_cmd(c);
  EXPECT_EQ(r.code, kContract) << r.err;
  EXPECT_NE(r.err.find("untargeted cell"), std::string::npos) << r.err;
}

TEST(Cli, TraceFileDeterministic) {
  const auto p1 = temp_file("t1.jsonl");
  const auto p2 = temp_file("t2.jsonl");
  for (const char* prog : {"min", "sort", "astar"}) {
    RunConfig c = config(prog);
    if (std::string(prog) != "astar") c.array = "4,1,3,2";
    c.snapshots = true;
    c.trace_path = p1.string();
    ASSERT_EQ(run_cmd(c).code, kOk);
    c.trace_path = p2.string();
    ASSERT_EQ(run_cmd(c).code, kOk);
    std::ifstream a(p1), b(p2);
    const std::string sa((std::istreambuf_iterator<char>(a)), {});
    const std::string sb((std::istreambuf_iterator<char>(b)), {});
    EXPECT_FALSE(sa.empty());
    EXPECT_EQ(sa, sb);
    std::istringstream in(sa);
    const LoadedTrace back = read_trace(in);
    EXPECT_EQ(trace_to_string(back.program, back.trace), sa);
  }
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST(Cli, Inspect) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_inspect("min", std::nullopt, std::nullopt, std::nullopt, out, err), kOk);
  EXPECT_NE(out.str().find("K = 3, n_r = 3, n_w = 2"), std::string::npos) << out.str();
  out.str("");
  ASSERT_EQ(cmd_inspect("sort", std::nullopt, std::nullopt, std::nullopt, out, err), kOk);
  EXPECT_NE(out.str().find("n_w = 3"), std::string::npos);
  out.str("");
  const auto path = temp_file("nets.json");
  ASSERT_EQ(cmd_inspect("astar", std::nullopt, std::nullopt, path.string(), out, err), kOk);
  EXPECT_NE(out.str().find("K = 6"), std::string::npos);
  EXPECT_NE(out.str().find("table entries: controller"), std::string::npos);
  std::ifstream f(path);
  const auto j = nlohmann::json::parse(f);
  EXPECT_EQ(j["modules"].size(), 6u);
  EXPECT_EQ(j["controller"]["input_dim"], 8);
  std::filesystem::remove(path);
  EXPECT_EQ(cmd_inspect("heap", std::nullopt, std::nullopt, std::nullopt, out, err), kUsage);
}

TEST(Cli, Verify) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify("min", 1, 200, out, err), kOk);
  EXPECT_NE(out.str().find("min: 200 passed, 0 failed"), std::string::npos);
  EXPECT_EQ(cmd_verify("sort", 2, 50, out, err), kOk);
  EXPECT_EQ(cmd_verify("astar", 3, 10, out, err), kOk);
  EXPECT_EQ(cmd_verify("heap", 3, 10, out, err), kUsage);
}

TEST(Cli, VerifyReportsMismatch) {
  // A min program whose update core adds an offset diverges at step 1.
  MinProgram p = compile_min();
  const std::vector<double> a{3, 5, 1};
  ASSERT_FALSE(verify_min_case(p, a).has_value());
  p.program.modules[2] = p.program.modules[1];  // stop behaves like update
  const auto m = verify_min_case(p, a, MachineOptions{false});
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->input, "[3,5,1]");
}

}  // namespace
