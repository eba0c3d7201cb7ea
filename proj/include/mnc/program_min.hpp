// Array minimum as a three-module program (init, update, stop).
//
// Controller input (i, n, 0):
//   g_init   <=> i = 1
//   g_update <=> 2 <= i <= n
//   g_stop   <=> i = n + 1
// Modules (gate-wrapped):
//   init   (x1, x2, x3) -> (x1, x2 + 1)
//   update (x1, x2, x3) -> (min(x1, x2), x3 + 1)
//   stop   (x1, x2, x3) -> (-1, x1)
// Arrays are 1-based: a_1 lives at array_base.
#pragma once

#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <vector>

#include "mnc/machine.hpp"
#include "mnc/phase_controller.hpp"

namespace mnc {

struct MinLayout {
  std::size_t array_base = 8;
  std::size_t array_capacity = 56;
  std::size_t addr_i = 0;
  std::size_t addr_n = 1;
  std::size_t addr_m = 2;
  std::size_t addr_zero = 3;
  std::size_t addr_flag = 4;
  std::size_t addr_out = 5;
  std::size_t addr_scratch = 6;

  void validate(std::size_t capacity) const {
    if (array_capacity < 1) throw PreconditionError("min layout: array capacity must be >= 1");
    if (array_base + array_capacity > capacity) throw PreconditionError("min layout does not fit in memory");
    const std::set<std::size_t> reserved{addr_i, addr_n, addr_m, addr_zero, addr_flag, addr_out, addr_scratch};
    if (reserved.size() != 7) throw PreconditionError("min layout: reserved addresses must be distinct");
    for (std::size_t a : reserved) {
      if (a >= capacity) throw PreconditionError("min layout: reserved address out of range");
      if (a >= array_base && a < array_base + array_capacity)
        throw PreconditionError("min layout: reserved address overlaps the array region");
    }
  }

  /// Default layout for a memory of the given size.
  static MinLayout for_capacity(std::size_t capacity) {
    MinLayout l;
    if (capacity <= l.array_base) throw PreconditionError("memory too small for the min program");
    l.array_capacity = capacity - l.array_base;
    return l;
  }
};

struct MinProgram {
  MinLayout layout;
  MNCProgram program;
};

/// Gate bound for the array programs: inactive cores see the active phase's
/// reads, so their outputs reach data magnitude + 1.
inline constexpr double kArrayGateBound = 1e9;
/// Largest admissible input magnitude for min and sort instances.
inline constexpr double kArrayValueLimit = 1e8;

inline MinProgram compile_min(std::size_t capacity, const MinLayout& layout, MemoryConfig memory = {},
                              double gate_bound = kArrayGateBound) {
  memory.capacity = capacity;
  memory.validate();
  layout.validate(capacity);
  const auto d = [](std::size_t a) { return static_cast<double>(a); };
  const MinLayout& L = layout;

  // Control input (i, n, z).
  std::vector<MLPNetwork> gates{
      on_linear({1, 0, 0}, 0, build_equals(1)),
      build_and(on_linear({1, 0, 0}, 0, build_indicator_ge(2)), on_linear({-1, 1, 0}, 0, build_indicator_ge(0))),
      on_linear({1, -1, 0}, 0, build_equals(1)),
  };
  // (r1, r2, r3, w1, w2) per phase.
  std::vector<MLPNetwork> addresses{
      build_constant(3, {d(L.array_base), d(L.addr_i), d(L.addr_zero), d(L.addr_m), d(L.addr_i)}),
      build_linear({{0, 0, 0}, {1, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}},
                   {d(L.addr_m), d(L.array_base) - 1.0, d(L.addr_i), d(L.addr_m), d(L.addr_i)}),
      build_constant(3, {d(L.addr_m), d(L.addr_zero), d(L.addr_zero), d(L.addr_flag), d(L.addr_out)}),
  };

  const MLPNetwork init_core = build_linear({{1, 0, 0}, {0, 1, 0}}, {0, 1});
  const MLPNetwork update_core =
      stack_parallel(3, {{build_select_min2(), {0, 1}}, {build_linear({{1}}, {1}), {2}}});
  const MLPNetwork stop_core = build_linear({{0, 0, 0}, {1, 0, 0}}, {-1, 0});

  MNCProgram p;
  p.name = "min";
  p.memory = memory;
  p.read_heads = 3;
  p.write_heads = 2;
  p.control_addresses = {L.addr_i, L.addr_n, L.addr_zero};
  p.controller = build_phase_controller(3, gates, addresses, gate_bound);
  p.modules = {build_gate_wrap(init_core, gate_bound), build_gate_wrap(update_core, gate_bound),
               build_gate_wrap(stop_core, gate_bound)};
  p.module_names = {"init", "update", "stop"};
  p.halt_cell = L.addr_flag;
  p.gate_bound = gate_bound;
  p.validate();
  return {layout, std::move(p)};
}

inline MinProgram compile_min(std::size_t capacity = 64) {
  return compile_min(capacity, MinLayout::for_capacity(capacity));
}

inline MemoryState load_min_instance(const MinProgram& prog, std::span<const double> array) {
  const MinLayout& L = prog.layout;
  if (array.empty() || array.size() > L.array_capacity)
    throw PreconditionError("array length " + std::to_string(array.size()) + " outside [1, " +
                            std::to_string(L.array_capacity) + "]");
  MemoryState m(prog.program.memory.capacity);
  for (std::size_t j = 0; j < array.size(); ++j) {
    if (!std::isfinite(array[j]) || std::abs(array[j]) > kArrayValueLimit)
      throw PreconditionError("array values must be finite with magnitude <= 1e8");
    m[L.array_base + j] = array[j];
  }
  m[L.addr_i] = 1.0;
  m[L.addr_n] = static_cast<double>(array.size());
  m[L.addr_flag] = 1.0;
  return m;
}

inline double extract_min(const ExecutionTrace& trace, const MinLayout& layout) {
  if (trace.status != TerminationStatus::halted) throw PreconditionError("trace did not halt");
  return trace.final_memory[layout.addr_out];
}

}  // namespace mnc
