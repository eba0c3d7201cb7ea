#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "mnc/program_min.hpp"

namespace {

using namespace mnc;

TEST(ProgramMin, Interface) {
  const MinProgram p = compile_min();
  EXPECT_EQ(p.program.module_count(), 3u);
  EXPECT_EQ(p.program.read_heads, 3u);
  EXPECT_EQ(p.program.write_heads, 2u);
  EXPECT_EQ(p.program.memory.capacity, 64u);
  EXPECT_EQ(p.layout.array_capacity, 56u);
}

TEST(ProgramMin, Examples) {
  const MinProgram p = compile_min();
  const auto run_min = [&](std::vector<double> a) {
    const ExecutionTrace t = run(p.program, load_min_instance(p, a), 100);
    return std::pair{extract_min(t, p.layout), t.steps()};
  };
  EXPECT_EQ(run_min({5, 2, 8}), (std::pair<double, std::size_t>{2, 4}));
  EXPECT_EQ(run_min({7}), (std::pair<double, std::size_t>{7, 2}));
  EXPECT_EQ(run_min({-1, -1, -1}).first, -1);
  EXPECT_EQ(run_min({0.1, 0.2, 0.30000000000000004}).first, 0.1);
}

TEST(ProgramMin, PhaseSchedule) {
  const MinProgram p = compile_min();
  const ExecutionTrace t = run(p.program, load_min_instance(p, std::vector<double>{5, 2, 8}), 100);
  ASSERT_EQ(t.steps(), 4u);
  EXPECT_EQ(t.records[0].gates, (std::vector<double>{1, 0, 0}));
  EXPECT_EQ(t.records[1].gates, (std::vector<double>{0, 1, 0}));
  EXPECT_EQ(t.records[2].gates, (std::vector<double>{0, 1, 0}));
  EXPECT_EQ(t.records[3].gates, (std::vector<double>{0, 0, 1}));
  // running minimum after each update
  EXPECT_EQ(t.records[1].write_values[0], 2.0);
  EXPECT_EQ(t.records[2].write_values[0], 2.0);
  EXPECT_EQ(t.final_memory[p.layout.addr_flag], -1.0);
}

TEST(ProgramMin, RandomArraysExact) {
  std::mt19937_64 rng(31);
  const MinProgram p = compile_min();
  std::uniform_int_distribution<std::size_t> len(1, 56);
  std::uniform_real_distribution<double> v(-1e8, 1e8);
  MachineOptions strict;
  strict.strict_addresses = true;
  for (int t = 0; t < 300; ++t) {
    std::vector<double> a(len(rng));
    for (double& x : a) x = v(rng);
    const ExecutionTrace tr = run(p.program, load_min_instance(p, a), 100, strict);
    ASSERT_EQ(extract_min(tr, p.layout), *std::min_element(a.begin(), a.end()));
    ASSERT_EQ(tr.steps(), a.size() + 1);
  }
}

TEST(ProgramMin, ArrayCellsUntouched) {
  const MinProgram p = compile_min();
  const std::vector<double> a{4, -3, 9, 1};
  const ExecutionTrace t = run(p.program, load_min_instance(p, a), 100);
  for (std::size_t j = 0; j < a.size(); ++j) EXPECT_EQ(t.final_memory[p.layout.array_base + j], a[j]);
}

TEST(ProgramMin, CustomCapacityAndTemperature) {
  MemoryConfig mem;
  mem.capacity = 16;
  mem.temperature = 1e-3;
  const MinProgram p = compile_min(16, MinLayout::for_capacity(16), mem);
  EXPECT_EQ(p.layout.array_capacity, 8u);
  const std::vector<double> a{3, 1, 4, 1, 5, 9, 2, 6};
  const ExecutionTrace t = run(p.program, load_min_instance(p, a), 100);
  EXPECT_EQ(extract_min(t, p.layout), 1.0);
}

TEST(ProgramMin, RejectsBadInstances) {
  const MinProgram p = compile_min(16);
  EXPECT_THROW(load_min_instance(p, std::vector<double>{}), PreconditionError);
  EXPECT_THROW(load_min_instance(p, std::vector<double>(9, 1.0)), PreconditionError);
  EXPECT_THROW(load_min_instance(p, std::vector<double>{2e8}), PreconditionError);
  EXPECT_THROW(compile_min(8), PreconditionError);
  MinLayout clash;
  clash.addr_out = clash.addr_m;
  EXPECT_THROW(clash.validate(64), PreconditionError);
}

}  // namespace
