// Fixed-graph execution engine.
//
// One step: control reads at fixed addresses -> controller -> (gates, read
// addresses, write addresses) -> functional reads broadcast to every module
// -> all K modules evaluated -> outputs summed componentwise -> written back
// in head order. The same program graph is reused at every step; only the
// memory changes.
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mnc/errors.hpp"
#include "mnc/memory.hpp"
#include "mnc/network.hpp"

namespace mnc {

struct MNCProgram {
  std::string name;
  MemoryConfig memory;
  std::size_t read_heads = 0;   // n_r
  std::size_t write_heads = 0;  // n_w
  std::vector<std::size_t> control_addresses;
  MLPNetwork controller;
  std::vector<MLPNetwork> modules;
  std::vector<std::string> module_names;
  std::size_t halt_cell = 0;
  double gate_bound = kDefaultGateBound;

  std::size_t module_count() const { return modules.size(); }

  void validate() const {
    memory.validate();
    const std::size_t k = modules.size();
    if (k == 0) throw StructuralError("program has no modules");
    if (module_names.size() != k) throw StructuralError("module name count mismatch");
    if (controller.input_dim() != control_addresses.size())
      throw StructuralError("controller input width must equal the number of control reads");
    if (controller.output_dim() != k + read_heads + write_heads)
      throw StructuralError("controller output width must be K + n_r + n_w");
    for (const auto& m : modules) {
      if (m.input_dim() != 1 + read_heads || m.output_dim() != write_heads)
        throw StructuralError("module interface must be (1 + n_r) -> n_w");
    }
    for (std::size_t a : control_addresses)
      if (a >= memory.capacity) throw AddressingError("control address out of range");
    if (halt_cell >= memory.capacity) throw AddressingError("halt cell out of range");
    if (!(gate_bound > 0.0)) throw PreconditionError("gate bound must be positive");
  }
};

struct MachineOptions {
  /// One-hot, inhibition, merge and frame validation after every step.
  bool check = true;
  /// Emitted addresses must be integral within 1e-9.
  bool strict_addresses = false;
  /// Route control reads through softmax attention instead of direct access.
  bool attention_control_reads = false;
  /// Record a full memory snapshot after each step.
  bool snapshots = false;
};

struct StepRecord {
  std::size_t step = 0;
  std::vector<double> control_input;
  std::vector<double> gates;
  std::vector<double> read_addresses;
  std::vector<double> read_values;
  std::vector<std::vector<double>> module_outputs;  // K x n_w
  std::vector<double> write_values;                 // merged y_t
  std::vector<double> write_addresses;
  bool halted = false;
  std::optional<std::vector<double>> snapshot;

  bool operator==(const StepRecord&) const = default;
};

enum class TerminationStatus { halted, max_steps_exceeded };

inline const char* to_string(TerminationStatus s) {
  return s == TerminationStatus::halted ? "halted" : "max_steps_exceeded";
}

struct ExecutionTrace {
  std::vector<StepRecord> records;
  MemoryState final_memory;
  TerminationStatus status = TerminationStatus::halted;

  std::size_t steps() const { return records.size(); }
  bool operator==(const ExecutionTrace&) const = default;
};

class NonTerminationError : public Error {
 public:
  NonTerminationError(const std::string& what, ExecutionTrace partial)
      : Error(what), partial_(std::move(partial)) {}
  const ExecutionTrace& partial_trace() const { return partial_; }

 private:
  ExecutionTrace partial_;
};

enum class ViolationKind { one_hot, merge, inhibition };

struct Violation {
  ViolationKind kind;
  std::string message;
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::one_hot: return "one-hot";
    case ViolationKind::merge: return "merge";
    case ViolationKind::inhibition: return "inhibition";
  }
  return "?";
}

/// Exact contract check of a recorded step: gates exactly one-hot, merged
/// outputs equal the module sum, and inhibited modules output exactly 0.0.
inline std::vector<Violation> check_step(const StepRecord& rec, std::size_t module_count) {
  std::vector<Violation> out;
  const std::string at = "step " + std::to_string(rec.step) + ": ";
  if (rec.gates.size() != module_count) {
    out.push_back({ViolationKind::one_hot, at + "gate vector has wrong length"});
  } else {
    std::size_t ones = 0;
    bool binary = true;
    for (double g : rec.gates) {
      if (g == 1.0) ++ones;
      else if (g != 0.0) binary = false;
    }
    if (!binary || ones != 1) out.push_back({ViolationKind::one_hot, at + "gates are not one-hot"});
  }
  const std::size_t width = rec.write_values.size();
  for (std::size_t i = 0; i < width; ++i) {
    double sum = 0.0;
    for (const auto& u : rec.module_outputs) sum += i < u.size() ? u[i] : 0.0;
    if (sum != rec.write_values[i])
      out.push_back({ViolationKind::merge, at + "merged output " + std::to_string(i) + " differs from module sum"});
  }
  for (std::size_t k = 0; k < rec.module_outputs.size() && k < rec.gates.size(); ++k) {
    if (rec.gates[k] != 0.0) continue;
    for (std::size_t i = 0; i < rec.module_outputs[k].size(); ++i) {
      if (rec.module_outputs[k][i] != 0.0) {
        out.push_back({ViolationKind::inhibition, at + "inhibited module " + std::to_string(k) +
                                                     " emitted nonzero output " + std::to_string(i)});
      }
    }
  }
  return out;
}

namespace detail {

inline void check_integral(double q, const char* what) {
  if (std::abs(q - std::round(q)) > 1e-9)
    throw AddressingError(std::string(what) + " address " + std::to_string(q) + " is not integral");
}

}  // namespace detail

/// Executes one step in place and returns its record.
inline StepRecord step_inplace(const MNCProgram& prog, MemoryState& mem, std::size_t index,
                               const MachineOptions& opt = {}) {
  if (mem.size() != prog.memory.capacity) throw StructuralError("memory size does not match program capacity");
  const std::size_t k_count = prog.module_count();
  StepRecord rec;
  rec.step = index;

  for (std::size_t a : prog.control_addresses) {
    rec.control_input.push_back(opt.attention_control_reads ? read(mem, static_cast<double>(a), prog.memory)
                                                            : hard_read(mem, a));
  }

  const std::vector<double> ctrl = prog.controller.evaluate(rec.control_input);
  rec.gates.assign(ctrl.begin(), ctrl.begin() + static_cast<std::ptrdiff_t>(k_count));
  rec.read_addresses.assign(ctrl.begin() + static_cast<std::ptrdiff_t>(k_count),
                            ctrl.begin() + static_cast<std::ptrdiff_t>(k_count + prog.read_heads));
  rec.write_addresses.assign(ctrl.begin() + static_cast<std::ptrdiff_t>(k_count + prog.read_heads), ctrl.end());

  if (opt.check) {
    double total = 0.0;
    for (double g : rec.gates) {
      if (std::abs(g) > 1e-9 && std::abs(g - 1.0) > 1e-9)
        throw ContractError("step " + std::to_string(index) + ": gate value " + std::to_string(g) +
                            " is neither 0 nor 1");
      total += g;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw ContractError("step " + std::to_string(index) + ": gates do not sum to 1");
  }
  if (opt.strict_addresses) {
    for (double q : rec.read_addresses) detail::check_integral(q, "read");
    for (double q : rec.write_addresses) detail::check_integral(q, "write");
  }

  for (double q : rec.read_addresses) rec.read_values.push_back(read(mem, q, prog.memory));

  std::vector<double> module_input(1 + prog.read_heads);
  std::copy(rec.read_values.begin(), rec.read_values.end(), module_input.begin() + 1);
  rec.write_values.assign(prog.write_heads, 0.0);
  for (std::size_t k = 0; k < k_count; ++k) {
    module_input[0] = rec.gates[k];
    rec.module_outputs.push_back(prog.modules[k].evaluate(module_input));
    for (std::size_t i = 0; i < prog.write_heads; ++i) rec.write_values[i] += rec.module_outputs[k][i];
  }
  for (std::size_t i = 0; i < prog.write_heads; ++i) {
    if (std::abs(rec.write_values[i]) > prog.gate_bound)
      throw GateBoundError("step " + std::to_string(index) + ": merged output " + std::to_string(i) + " = " +
                           std::to_string(rec.write_values[i]) + " exceeds gate bound " +
                           std::to_string(prog.gate_bound));
  }

  if (opt.check) {
    const auto violations = check_step(rec, k_count);
    if (!violations.empty()) throw ContractError(violations.front().message);
  }

  std::optional<MemoryState> before;
  if (opt.check) before = mem;
  for (std::size_t i = 0; i < prog.write_heads; ++i)
    write_inplace(mem, rec.write_addresses[i], rec.write_values[i], prog.memory);

  if (opt.check) {
    bool integral = true;
    for (double q : rec.write_addresses) integral = integral && q == std::floor(q);
    if (integral) {
      std::vector<bool> targeted(mem.size(), false);
      for (double q : rec.write_addresses) targeted[static_cast<std::size_t>(q)] = true;
      for (std::size_t a = 0; a < mem.size(); ++a) {
        if (!targeted[a] && mem[a] != (*before)[a])
          throw ContractError("step " + std::to_string(index) + ": untargeted cell " + std::to_string(a) +
                              " changed");
      }
    }
  }

  rec.halted = mem[prog.halt_cell] < 0.0;
  if (opt.snapshots) rec.snapshot = mem.values;
  return rec;
}

inline std::pair<MemoryState, StepRecord> step(const MNCProgram& prog, MemoryState mem, std::size_t index = 0,
                                               const MachineOptions& opt = {}) {
  StepRecord rec = step_inplace(prog, mem, index, opt);
  return {std::move(mem), std::move(rec)};
}

/// Steps until the halt cell goes negative. Throws NonTerminationError
/// carrying the partial trace after max_steps.
inline ExecutionTrace run(const MNCProgram& prog, MemoryState mem, std::size_t max_steps,
                          const MachineOptions& opt = {}) {
  if (max_steps < 1) throw PreconditionError("max_steps must be >= 1");
  prog.validate();
  if (mem.size() != prog.memory.capacity) throw StructuralError("memory size does not match program capacity");
  if (mem[prog.halt_cell] < 0.0) throw PreconditionError("memory is already in a halted state");
  ExecutionTrace trace;
  for (std::size_t t = 0; t < max_steps; ++t) {
    trace.records.push_back(step_inplace(prog, mem, t, opt));
    if (trace.records.back().halted) {
      trace.final_memory = std::move(mem);
      trace.status = TerminationStatus::halted;
      return trace;
    }
  }
  trace.final_memory = std::move(mem);
  trace.status = TerminationStatus::max_steps_exceeded;
  throw NonTerminationError("program did not halt within " + std::to_string(max_steps) + " steps",
                            std::move(trace));
}

}  // namespace mnc
