#include <sstream>

#include <gtest/gtest.h>

#include "mnc/program_astar.hpp"
#include "mnc/program_min.hpp"
#include "mnc/program_sort.hpp"
#include "mnc/trace_io.hpp"

namespace {

using namespace mnc;

void expect_round_trip(const std::string& name, const ExecutionTrace& t) {
  const std::string text = trace_to_string(name, t);
  std::istringstream in(text);
  const LoadedTrace back = read_trace(in);
  EXPECT_EQ(back.program, name);
  EXPECT_EQ(back.trace.records, t.records);
  EXPECT_EQ(back.trace.final_memory, t.final_memory);
  EXPECT_EQ(trace_to_string(back.program, back.trace), text);
}

TEST(TraceIo, RoundTripsAllPrograms) {
  MachineOptions snap;
  snap.snapshots = true;
  const MinProgram mp = compile_min();
  expect_round_trip("min", run(mp.program, load_min_instance(mp, std::vector<double>{0.1, -1e-300, 7.25}), 100, snap));
  const SortProgram sp = compile_sort();
  expect_round_trip("sort", run(sp.program, load_sort_instance(sp, std::vector<double>{1.0 / 3, -2.5, 1e8}), 100));
  const AStarProgram ap = compile_astar(canonical_instance());
  expect_round_trip("astar", run(ap.program, load_astar_instance(ap), 1000));
}

TEST(TraceIo, LineStructure) {
  const MinProgram mp = compile_min();
  const auto t = run(mp.program, load_min_instance(mp, std::vector<double>{5, 2, 8}), 100);
  const std::string text = trace_to_string("min", t);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 6);
  EXPECT_EQ(text.rfind("{\"format\":\"mnc-trace\"", 0), 0u);
  EXPECT_NE(text.find("{\"status\":\"halted\",\"steps\":4"), std::string::npos);
}

TEST(TraceIo, RejectsMalformed) {
  const auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_trace(in);
  };
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("{\"format\":\"other\"}\n"), ParseError);
  EXPECT_THROW(parse("{\"format\":\"mnc-trace\",\"version\":1,\"program\":\"x\"}\n"), ParseError);
  EXPECT_THROW(parse("{\"format\":\"mnc-trace\",\"version\":1,\"program\":\"x\"}\nnot json\n"), ParseError);
  EXPECT_THROW(parse("{\"format\":\"mnc-trace\",\"version\":1,\"program\":\"x\"}\n"
                     "{\"status\":\"halted\",\"steps\":3,\"final_memory\":[]}\n"),
               ParseError);
}

}  // namespace
