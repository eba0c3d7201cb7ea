// Pass-based adjacent sort as a three-module program.
//
// Controller input (i, p, 0):
//   g_process <=> i < p
//   g_next    <=> i = p and p > 1
//   g_stop    <=> i = p = 1
// Modules (gate-wrapped):
//   process (x1, x2, x3) -> (min(x1, x2), max(x1, x2), x3 + 1)
//   next    (x1, x2, x3) -> (x1 - 1, 1, 0)
//   stop    (x1, x2, x3) -> (-1, 0, 0)
// Neutral writes go to a scratch cell.
#pragma once

#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <vector>

#include "mnc/machine.hpp"
#include "mnc/phase_controller.hpp"
#include "mnc/program_min.hpp"

namespace mnc {

struct SortLayout {
  std::size_t array_base = 8;
  std::size_t array_capacity = 32;
  std::size_t addr_i = 0;
  std::size_t addr_p = 1;
  std::size_t addr_n = 2;
  std::size_t addr_zero = 3;
  std::size_t addr_flag = 4;
  std::size_t addr_scratch = 5;

  void validate(std::size_t capacity) const {
    if (array_capacity < 1) throw PreconditionError("sort layout: array capacity must be >= 1");
    if (array_base + array_capacity > capacity) throw PreconditionError("sort layout does not fit in memory");
    const std::set<std::size_t> reserved{addr_i, addr_p, addr_n, addr_zero, addr_flag, addr_scratch};
    if (reserved.size() != 6) throw PreconditionError("sort layout: reserved addresses must be distinct");
    for (std::size_t a : reserved) {
      if (a >= capacity) throw PreconditionError("sort layout: reserved address out of range");
      if (a >= array_base && a < array_base + array_capacity)
        throw PreconditionError("sort layout: reserved address overlaps the array region");
    }
  }

  static SortLayout for_capacity(std::size_t capacity) {
    SortLayout l;
    if (capacity <= l.array_base) throw PreconditionError("memory too small for the sort program");
    l.array_capacity = capacity - l.array_base;
    return l;
  }
};

struct SortProgram {
  SortLayout layout;
  MNCProgram program;
};

inline SortProgram compile_sort(std::size_t capacity, const SortLayout& layout, MemoryConfig memory = {},
                                double gate_bound = kArrayGateBound) {
  memory.capacity = capacity;
  memory.validate();
  layout.validate(capacity);
  const auto d = [](std::size_t a) { return static_cast<double>(a); };
  const SortLayout& L = layout;

  std::vector<MLPNetwork> gates{
      on_linear({-1, 1, 0}, 0, build_indicator_ge(1)),
      build_and(on_linear({-1, 1, 0}, 0, build_equals(0)), on_linear({0, 1, 0}, 0, build_indicator_ge(2))),
      build_and(on_linear({1, 0, 0}, 0, build_equals(1)), on_linear({0, 1, 0}, 0, build_equals(1))),
  };
  // (r1, r2, r3, w1, w2, w3) per phase.
  const double base = d(L.array_base);
  std::vector<MLPNetwork> addresses{
      build_linear({{1, 0, 0}, {1, 0, 0}, {0, 0, 0}, {1, 0, 0}, {1, 0, 0}, {0, 0, 0}},
                   {base - 1.0, base, d(L.addr_i), base - 1.0, base, d(L.addr_i)}),
      build_constant(3, {d(L.addr_p), d(L.addr_zero), d(L.addr_zero), d(L.addr_p), d(L.addr_i), d(L.addr_scratch)}),
      build_constant(3, {d(L.addr_zero), d(L.addr_zero), d(L.addr_zero), d(L.addr_flag), d(L.addr_scratch),
                         d(L.addr_scratch)}),
  };

  const MLPNetwork process_core =
      stack_parallel(3, {{build_select_min2(), {0, 1}}, {build_select_max2(), {0, 1}}, {build_linear({{1}}, {1}), {2}}});
  const MLPNetwork next_core = build_linear({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}, {-1, 1, 0});
  const MLPNetwork stop_core = build_constant(3, {-1, 0, 0});

  MNCProgram p;
  p.name = "sort";
  p.memory = memory;
  p.read_heads = 3;
  p.write_heads = 3;
  p.control_addresses = {L.addr_i, L.addr_p, L.addr_zero};
  p.controller = build_phase_controller(3, gates, addresses, gate_bound);
  p.modules = {build_gate_wrap(process_core, gate_bound), build_gate_wrap(next_core, gate_bound),
               build_gate_wrap(stop_core, gate_bound)};
  p.module_names = {"process", "next", "stop"};
  p.halt_cell = L.addr_flag;
  p.gate_bound = gate_bound;
  p.validate();
  return {layout, std::move(p)};
}

inline SortProgram compile_sort(std::size_t capacity = 40) {
  return compile_sort(capacity, SortLayout::for_capacity(capacity));
}

inline MemoryState load_sort_instance(const SortProgram& prog, std::span<const double> array) {
  const SortLayout& L = prog.layout;
  if (array.empty() || array.size() > L.array_capacity)
    throw PreconditionError("array length " + std::to_string(array.size()) + " outside [1, " +
                            std::to_string(L.array_capacity) + "]");
  MemoryState m(prog.program.memory.capacity);
  for (std::size_t j = 0; j < array.size(); ++j) {
    if (!std::isfinite(array[j]) || std::abs(array[j]) > kArrayValueLimit)
      throw PreconditionError("array values must be finite with magnitude <= 1e8");
    m[L.array_base + j] = array[j];
  }
  const double n = static_cast<double>(array.size());
  m[L.addr_i] = 1.0;
  m[L.addr_p] = n;
  m[L.addr_n] = n;
  m[L.addr_flag] = 1.0;
  return m;
}

inline std::vector<double> extract_sorted(const ExecutionTrace& trace, const SortLayout& layout, std::size_t n) {
  if (trace.status != TerminationStatus::halted) throw PreconditionError("trace did not halt");
  if (n > layout.array_capacity) throw PreconditionError("length exceeds array capacity");
  const auto first = trace.final_memory.values.begin() + static_cast<std::ptrdiff_t>(layout.array_base);
  return {first, first + static_cast<std::ptrdiff_t>(n)};
}

}  // namespace mnc
