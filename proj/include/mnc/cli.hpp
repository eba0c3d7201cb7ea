// Command implementations behind the mnc executable: run, inspect, verify.
//
// Exit codes:
//   0  success
//   1  verify found a mismatch
//   2  usage or parse error
//   3  contract violation (gates, inhibition, frame, gate bound, addressing)
//   4  non-termination (max steps exceeded)
//   5  compile error (table conflict, non-integer key, capacity)
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mnc/machine.hpp"
#include "mnc/oracles.hpp"
#include "mnc/program_astar.hpp"
#include "mnc/program_min.hpp"
#include "mnc/program_sort.hpp"
#include "mnc/text.hpp"
#include "mnc/trace_io.hpp"

namespace mnc::cli {

enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kUsage = 2,
  kContract = 3,
  kNonTermination = 4,
  kCompile = 5,
};

struct RunConfig {
  std::string program;                 // min | sort | astar
  std::optional<std::string> array;    // literal "5,2,8" or @path
  std::optional<std::string> instance; // "canonical" or path
  std::optional<double> tau;
  std::optional<double> alpha;
  std::optional<std::size_t> capacity;
  std::size_t max_steps = 100000;
  std::optional<std::string> trace_path;
  bool snapshots = false;
  bool check = false;
  bool strict_addresses = false;
};

inline constexpr std::size_t kDefaultMinCapacity = 64;
inline constexpr std::size_t kDefaultSortCapacity = 40;

inline std::vector<double> load_array(const std::string& source) {
  if (!source.empty() && source[0] == '@') {
    std::ifstream in(source.substr(1));
    if (!in) throw ParseError("cannot open array file '" + source.substr(1) + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    for (char& c : text)
      if (c == '\n' || c == '\r' || c == '\t' || c == ' ') c = ',';
    std::string compact;
    for (char c : text)
      if (!(c == ',' && (compact.empty() || compact.back() == ','))) compact += c;
    while (!compact.empty() && compact.back() == ',') compact.pop_back();
    return parse_array_literal(compact);
  }
  return parse_array_literal(source);
}

inline GraphInstance load_graph(const std::optional<std::string>& source) {
  if (!source || *source == "canonical") return canonical_instance();
  return load_instance_file(*source);
}

inline MemoryConfig memory_config(const RunConfig& c, std::size_t capacity) {
  MemoryConfig m;
  m.capacity = capacity;
  if (c.tau) m.temperature = *c.tau;
  if (c.alpha) m.write_strength = *c.alpha;
  m.validate();
  return m;
}

inline AStarConfig astar_config(std::optional<std::size_t> capacity, std::size_t states) {
  AStarConfig cfg;
  if (capacity) {
    const AStarLayout probe = AStarLayout::for_instance(states, 1);
    if (*capacity < probe.capacity) throw PreconditionError("capacity too small for the A* layout");
    cfg.max_records = (*capacity - probe.node_base) / probe.node_stride;
  }
  return cfg;
}

inline std::string path_string(const GraphInstance& g, const std::vector<std::size_t>& states) {
  std::string s;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) s += "→";
    s += g.states[states[i]].name;
  }
  return s;
}

namespace detail {

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NonTerminationError& e) {
    err << "error: " << e.what() << '\n';
    return kNonTermination;
  } catch (const CompileError& e) {
    err << "compile error: " << e.what() << '\n';
    return kCompile;
  } catch (const ContractError& e) {
    err << "contract violation: " << e.what() << '\n';
    return kContract;
  } catch (const GateBoundError& e) {
    err << "contract violation: " << e.what() << '\n';
    return kContract;
  } catch (const AddressingError& e) {
    err << "contract violation: " << e.what() << '\n';
    return kContract;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kContract;
  }
}

inline void emit_trace(const RunConfig& c, const std::string& name, const ExecutionTrace& trace) {
  if (!c.trace_path) return;
  std::ofstream out(*c.trace_path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write trace file '" + *c.trace_path + "'");
  write_trace(out, name, trace);
}

}  // namespace detail

inline int cmd_run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&]() -> int {
    MachineOptions opt;
    opt.check = c.check;
    opt.strict_addresses = c.strict_addresses;
    opt.snapshots = c.snapshots;
    ExecutionTrace trace;
    const auto run_traced = [&](const MNCProgram& p, MemoryState m0) {
      try {
        trace = run(p, std::move(m0), c.max_steps, opt);
      } catch (const NonTerminationError& e) {
        detail::emit_trace(c, p.name, e.partial_trace());
        throw;
      }
      detail::emit_trace(c, p.name, trace);
    };

    if (c.program == "min" || c.program == "sort") {
      if (!c.array) throw ParseError("--array is required for the " + c.program + " program");
      const std::vector<double> a = load_array(*c.array);
      if (c.program == "min") {
        const std::size_t S = c.capacity.value_or(kDefaultMinCapacity);
        const MinProgram prog = compile_min(S, MinLayout::for_capacity(S), memory_config(c, S));
        run_traced(prog.program, load_min_instance(prog, a));
        out << "min = " << format_short(extract_min(trace, prog.layout)) << ", steps = " << trace.steps() << '\n';
      } else {
        const std::size_t S = c.capacity.value_or(kDefaultSortCapacity);
        const SortProgram prog = compile_sort(S, SortLayout::for_capacity(S), memory_config(c, S));
        run_traced(prog.program, load_sort_instance(prog, a));
        const auto sorted = extract_sorted(trace, prog.layout, a.size());
        out << "sorted = [";
        for (std::size_t i = 0; i < sorted.size(); ++i) out << (i ? ", " : "") << format_short(sorted[i]);
        out << "], steps = " << trace.steps() << '\n';
      }
      return kOk;
    }
    if (c.program == "astar") {
      const GraphInstance g = load_graph(c.instance);
      AStarProgram prog = compile_astar(g, astar_config(c.capacity, g.size()));
      prog.program.memory = memory_config(c, prog.layout.capacity);
      run_traced(prog.program, load_astar_instance(prog));
      const PathResult path = extract_path(trace.final_memory, prog.layout);
      if (path.found)
        out << "path = " << path_string(g, path.states) << ", cost = " << format_short(path.cost)
            << ", steps = " << trace.steps() << '\n';
      else
        out << "no path, steps = " << trace.steps() << '\n';
      return kOk;
    }
    throw ParseError("unknown program '" + c.program + "' (expected min, sort or astar)");
  });
}

namespace detail {

inline void describe_network(std::ostream& out, const std::string& label, const MLPNetwork& net) {
  out << "  " << label << ": " << net.input_dim() << " -> " << net.output_dim() << ", " << net.depth()
      << " layers [";
  for (std::size_t k = 0; k < net.layers().size(); ++k) {
    const Layer& l = net.layers()[k];
    out << (k ? ", " : "") << l.out_dim() << "x" << l.in_dim() << " " << to_string(l.activation);
  }
  out << "], hidden units " << net.hidden_units() << ", nonzero weights " << net.nonzero_weights() << '\n';
}

inline void describe_program(std::ostream& out, const MNCProgram& p) {
  out << "program: " << p.name << '\n';
  out << "memory: S = " << p.memory.capacity << ", tau = " << format_short(p.memory.temperature)
      << ", alpha = " << format_short(p.memory.write_strength) << '\n';
  out << "modules: K = " << p.module_count() << ", n_r = " << p.read_heads << ", n_w = " << p.write_heads
      << ", gate bound = " << format_short(p.gate_bound) << '\n';
  out << "control reads: [";
  for (std::size_t i = 0; i < p.control_addresses.size(); ++i) out << (i ? ", " : "") << p.control_addresses[i];
  out << "], halt cell: " << p.halt_cell << '\n';
  out << "networks:\n";
  describe_network(out, "controller", p.controller);
  for (std::size_t k = 0; k < p.module_count(); ++k) describe_network(out, "module " + p.module_names[k], p.modules[k]);
}

inline void write_networks(const std::string& path, const MNCProgram& p) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("cannot write '" + path + "'");
  f << "{\"program\":\"" << p.name << "\",\"controller\":" << serialize_network(p.controller) << ",\"modules\":[";
  for (std::size_t k = 0; k < p.module_count(); ++k) {
    if (k) f << ',';
    f << "{\"name\":\"" << p.module_names[k] << "\",\"network\":" << serialize_network(p.modules[k]) << '}';
  }
  f << "]}\n";
}

}  // namespace detail

inline int cmd_inspect(const std::string& program, const std::optional<std::string>& instance,
                       std::optional<std::size_t> capacity, const std::optional<std::string>& serialize_path,
                       std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&]() -> int {
    if (program == "min") {
      const std::size_t S = capacity.value_or(kDefaultMinCapacity);
      const MinProgram prog = compile_min(S, MinLayout::for_capacity(S));
      detail::describe_program(out, prog.program);
      const MinLayout& L = prog.layout;
      out << "layout: i=" << L.addr_i << " n=" << L.addr_n << " m=" << L.addr_m << " zero=" << L.addr_zero
          << " flag=" << L.addr_flag << " out=" << L.addr_out << " scratch=" << L.addr_scratch << " array=["
          << L.array_base << ", " << L.array_base + L.array_capacity << ")\n";
      if (serialize_path) detail::write_networks(*serialize_path, prog.program);
      return kOk;
    }
    if (program == "sort") {
      const std::size_t S = capacity.value_or(kDefaultSortCapacity);
      const SortProgram prog = compile_sort(S, SortLayout::for_capacity(S));
      detail::describe_program(out, prog.program);
      const SortLayout& L = prog.layout;
      out << "layout: i=" << L.addr_i << " p=" << L.addr_p << " n=" << L.addr_n << " zero=" << L.addr_zero
          << " flag=" << L.addr_flag << " scratch=" << L.addr_scratch << " array=[" << L.array_base << ", "
          << L.array_base + L.array_capacity << ")\n";
      if (serialize_path) detail::write_networks(*serialize_path, prog.program);
      return kOk;
    }
    if (program == "astar") {
      const GraphInstance g = load_graph(instance);
      const AStarProgram prog = compile_astar(g, astar_config(capacity, g.size()));
      detail::describe_program(out, prog.program);
      out << "table entries: controller " << prog.controller_entries;
      for (std::size_t k = 0; k < kAStarModules; ++k)
        out << ", " << to_string(static_cast<AStarPhase>(k)) << " " << prog.module_entries[k];
      out << '\n';
      const AStarLayout& L = prog.layout;
      out << "layout: problem=[" << L.problem_base << ", " << L.control_base << ") control=[" << L.control_base
          << ", " << L.addr_action_count + 1 << ") nodes=[" << L.node_base << ", " << L.capacity
          << ") stride=" << L.node_stride << " records=" << L.max_records << '\n';
      out << "compiled steps: " << prog.reference.size() << '\n';
      if (serialize_path) detail::write_networks(*serialize_path, prog.program);
      return kOk;
    }
    throw ParseError("unknown program '" + program + "' (expected min, sort or astar)");
  });
}

// ---------------------------------------------------------------------------
// Differential verification

struct Mismatch {
  std::string input;
  std::string detail;
};

inline std::string describe_array(const std::vector<double>& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + format_double(a[i]);
  return s + "]";
}

namespace detail {

// Run-time errors during a differential case count as mismatches.
template <class Body>
std::optional<Mismatch> catching(const std::string& input, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return Mismatch{input, e.what()};
  }
}

}  // namespace detail

inline std::optional<Mismatch> verify_min_case(const MinProgram& prog, const std::vector<double>& a,
                                               const MachineOptions& opt = {}) {
  return detail::catching(describe_array(a), [&]() -> std::optional<Mismatch> {
    const ExecutionTrace t = run(prog.program, load_min_instance(prog, a), a.size() + 8, opt);
    double running = a[0];
    for (std::size_t s = 0; s + 1 < t.records.size(); ++s) {
      // After step s the m cell holds min(a_1 .. a_{s+1}).
      if (s > 0 && a[s] < running) running = a[s];
      const std::size_t m_addr = prog.layout.addr_m;
      const auto& w = t.records[s].write_addresses;
      for (std::size_t h = 0; h < w.size(); ++h)
        if (w[h] == static_cast<double>(m_addr) && t.records[s].write_values[h] != running)
          return Mismatch{describe_array(a), "first divergent step " + std::to_string(s) + ": running minimum " +
                                                 format_double(t.records[s].write_values[h]) + ", expected " +
                                                 format_double(running)};
    }
    const double expected = oracle::oracle_min(a);
    if (extract_min(t, prog.layout) != expected)
      return Mismatch{describe_array(a), "result " + format_double(extract_min(t, prog.layout)) + ", expected " +
                                             format_double(expected)};
    if (t.steps() != a.size() + 1)
      return Mismatch{describe_array(a), "halted after " + std::to_string(t.steps()) + " steps, expected " +
                                             std::to_string(a.size() + 1)};
    return std::nullopt;
  });
}

inline std::optional<Mismatch> verify_sort_case(const SortProgram& prog, const std::vector<double>& a,
                                                const MachineOptions& opt = {}) {
  return detail::catching(describe_array(a), [&]() -> std::optional<Mismatch> {
    const std::size_t n = a.size();
    const ExecutionTrace t = run(prog.program, load_sort_instance(prog, a), n * (n + 1) / 2 + 8, opt);
    const auto [sorted, oracle_trace] = oracle::oracle_sort(a);
    MemoryState m = load_sort_instance(prog, a);
    for (std::size_t s = 0; s < t.records.size() && s < oracle_trace.steps.size(); ++s) {
      const StepRecord& r = t.records[s];
      for (std::size_t h = 0; h < r.write_addresses.size(); ++h)
        m[static_cast<std::size_t>(r.write_addresses[h])] = r.write_values[h];
      const auto first = m.values.begin() + static_cast<std::ptrdiff_t>(prog.layout.array_base);
      if (!std::equal(first, first + static_cast<std::ptrdiff_t>(n), oracle_trace.steps[s].array.begin()))
        return Mismatch{describe_array(a), "first divergent step " + std::to_string(s)};
    }
    if (extract_sorted(t, prog.layout, n) != sorted) return Mismatch{describe_array(a), "final array differs"};
    if (t.steps() != n * (n + 1) / 2)
      return Mismatch{describe_array(a), "halted after " + std::to_string(t.steps()) + " steps, expected " +
                                             std::to_string(n * (n + 1) / 2)};
    return std::nullopt;
  });
}

inline std::optional<Mismatch> verify_astar_case(const GraphInstance& g, const MachineOptions& opt = {}) {
  return detail::catching(serialize_instance(g), [&]() -> std::optional<Mismatch> {
    const std::string name = serialize_instance(g);
    const oracle::AStarResult expected = oracle::oracle_astar(g, 4096);
    AStarConfig cfg;
    cfg.max_records = expected.records.size() + 1;
    const AStarProgram prog = compile_astar(g, cfg);
    const ExecutionTrace t = run(prog.program, load_astar_instance(prog), prog.reference.size() + 8, opt);
    for (std::size_t s = 0; s < t.records.size() && s < prog.reference.size(); ++s) {
      const StepRecord& r = t.records[s];
      const PhaseStep& p = prog.reference[s];
      if (r.control_input != p.control_input || r.gates != p.gates || r.read_addresses != p.read_addresses ||
          r.read_values != p.read_values || r.write_addresses != p.write_addresses || r.write_values != p.outputs)
        return Mismatch{name, "first divergent step " + std::to_string(s) + " (" + to_string(p.phase) + ")"};
    }
    if (t.steps() != prog.reference.size()) return Mismatch{name, "step count differs from the phase machine"};
    if (read_node_records(t.final_memory, prog.layout) != expected.records)
      return Mismatch{name, "node records differ from the oracle"};
    const PathResult path = extract_path(t.final_memory, prog.layout);
    if (path.found != expected.found || (path.found && (path.states != expected.path || path.cost != expected.cost)))
      return Mismatch{name, "path or cost differs from the oracle"};
    return std::nullopt;
  });
}

/// Random instance with edges only to later states (so the unoptimized
/// search terminates), integer costs and heuristics; start 0, goal n-1.
inline GraphInstance random_instance(std::mt19937_64& rng, std::size_t max_records) {
  for (;;) {
    std::uniform_int_distribution<std::size_t> size_d(2, 8);
    const std::size_t n = size_d(rng);
    GraphInstance g;
    std::uniform_int_distribution<int> h_d(0, 9);
    std::uniform_int_distribution<int> c_d(1, 9);
    std::uniform_int_distribution<int> deg_d(0, 2);
    for (std::size_t s = 0; s < n; ++s) g.states.push_back({"N" + std::to_string(s), double(h_d(rng)), {}});
    g.states[n - 1].heuristic = 0.0;
    for (std::size_t s = 0; s + 1 < n; ++s) {
      const int deg = std::min<int>(deg_d(rng), static_cast<int>(n - 1 - s));
      std::vector<std::size_t> targets;
      std::uniform_int_distribution<std::size_t> t_d(s + 1, n - 1);
      while (static_cast<int>(targets.size()) < deg) {
        const std::size_t t = t_d(rng);
        if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
      }
      for (std::size_t t : targets) g.states[s].edges.push_back({t, double(c_d(rng))});
    }
    g.start = 0;
    g.goal = n - 1;
    try {
      if (oracle::oracle_astar(g, max_records).records.size() <= max_records) return g;
    } catch (const PreconditionError&) {
    }
  }
}

inline std::vector<double> random_array(std::mt19937_64& rng, std::size_t max_len, bool integers,
                                        double magnitude) {
  std::uniform_int_distribution<std::size_t> len_d(1, max_len);
  const std::size_t n = len_d(rng);
  std::vector<double> a(n);
  if (integers) {
    std::uniform_int_distribution<int> v(-static_cast<int>(magnitude), static_cast<int>(magnitude));
    for (double& x : a) x = v(rng);
  } else {
    std::uniform_real_distribution<double> v(-magnitude, magnitude);
    for (double& x : a) x = v(rng);
  }
  return a;
}

inline int cmd_verify(const std::string& program, std::uint64_t seed, std::size_t count, std::ostream& out,
                      std::ostream& err) {
  return detail::guarded(err, [&]() -> int {
    std::mt19937_64 rng(seed);
    std::size_t passed = 0;
    std::size_t failed = 0;
    const auto report = [&](const std::optional<Mismatch>& m) {
      if (!m) {
        ++passed;
        return;
      }
      ++failed;
      std::string input = m->input;
      std::replace(input.begin(), input.end(), '\n', ';');
      out << "MISMATCH input=" << input << " : " << m->detail << '\n';
    };
    if (program == "min") {
      const MinProgram prog = compile_min();
      for (std::size_t i = 0; i < count; ++i)
        report(verify_min_case(prog, random_array(rng, 32, i % 5 != 4, i % 5 != 4 ? 100.0 : 1e6)));
    } else if (program == "sort") {
      const SortProgram prog = compile_sort();
      for (std::size_t i = 0; i < count; ++i)
        report(verify_sort_case(prog, random_array(rng, 16, i % 5 != 4, i % 5 != 4 ? 100.0 : 1e6)));
    } else if (program == "astar") {
      report(verify_astar_case(canonical_instance()));
      for (std::size_t i = 1; i < count; ++i) report(verify_astar_case(random_instance(rng, 48)));
    } else {
      throw ParseError("unknown program '" + program + "' (expected min, sort or astar)");
    }
    out << program << ": " << passed << " passed, " << failed << " failed\n";
    return failed == 0 ? kOk : kMismatch;
  });
}

}  // namespace mnc::cli
