// Unoptimized A* on a fixed instance, compiled from its execution trace.
//
// Memory has three regions:
//   problem   header (start, goal, state count) followed by one 8-cell block
//             per state: id, h, action count, succ0, cost0, succ1, cost1, gap
//   control   phase, next_free, scan_pos, best_node, best_f, selected,
//             action_idx, open_count, solution_ptr, flag, zero, scratch,
//             cur_state, cur_g, action_count
//   nodes     fixed-stride search-node records (state, parent, action, G, H,
//             F, open, valid) separated by unused gap cells
//
// The phase machine below runs the search symbolically, one step per module
// activation, and records every controller input, gate vector, address and
// value. compile_astar() turns those records into exact table networks: one
// for the controller and one gate-wrapped table per module. Any input tuple
// that would need two different outputs is a compile error.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mnc/graph.hpp"
#include "mnc/machine.hpp"
#include "mnc/network.hpp"

namespace mnc {

enum class AStarPhase : int {
  InitRoot = 0,
  StartOpenScan = 1,
  ScanOpenNode = 2,
  FinishOpenScan = 3,
  GoalTest = 4,
  ExpandAction = 5,
};

inline constexpr std::size_t kAStarModules = 6;

inline const char* to_string(AStarPhase p) {
  switch (p) {
    case AStarPhase::InitRoot: return "InitRoot";
    case AStarPhase::StartOpenScan: return "StartOpenScan";
    case AStarPhase::ScanOpenNode: return "ScanOpenNode";
    case AStarPhase::FinishOpenScan: return "FinishOpenScan";
    case AStarPhase::GoalTest: return "GoalTest";
    case AStarPhase::ExpandAction: return "ExpandAction";
  }
  return "?";
}

/// Field offsets inside a search-node record.
enum class NodeField : std::size_t { state = 0, parent, action, g, h, f, open, valid };
inline constexpr std::size_t kNodeFields = 8;

struct AStarLayout {
  // Problem region.
  std::size_t problem_base = 0;
  std::size_t state_base = 4;
  std::size_t state_stride = 8;
  std::size_t state_count = 0;

  // Control region.
  std::size_t control_base = 0;
  std::size_t addr_phase = 0, addr_next_free = 0, addr_scan_pos = 0, addr_best_node = 0, addr_best_f = 0,
              addr_selected = 0, addr_action_idx = 0, addr_open_count = 0, addr_solution_ptr = 0, addr_flag = 0,
              addr_zero = 0, addr_scratch = 0, addr_cur_state = 0, addr_cur_g = 0, addr_action_count = 0;

  // Node region.
  std::size_t node_base = 0;
  std::size_t node_stride = 10;
  std::size_t max_records = 0;

  std::size_t capacity = 0;

  std::size_t addr_start() const { return problem_base; }
  std::size_t addr_goal() const { return problem_base + 1; }
  std::size_t addr_state_count() const { return problem_base + 2; }
  std::size_t state_record(std::size_t s) const { return state_base + state_stride * s; }
  std::size_t addr_heuristic(std::size_t s) const { return state_record(s) + 1; }
  std::size_t addr_action_total(std::size_t s) const { return state_record(s) + 2; }
  std::size_t addr_successor(std::size_t s, std::size_t a) const { return state_record(s) + 3 + 2 * a; }
  std::size_t addr_edge_cost(std::size_t s, std::size_t a) const { return state_record(s) + 4 + 2 * a; }
  std::size_t node_field(std::size_t record, NodeField f) const {
    return node_base + node_stride * record + static_cast<std::size_t>(f);
  }

  /// Control cells read by the controller, in input order.
  std::vector<std::size_t> control_inputs() const {
    return {addr_phase,      addr_scan_pos,  addr_action_idx, addr_next_free,
            addr_open_count, addr_best_node, addr_selected,   addr_flag};
  }

  static AStarLayout for_instance(std::size_t state_count, std::size_t max_records) {
    AStarLayout l;
    l.state_count = state_count;
    l.control_base = l.state_base + l.state_stride * state_count + 4;
    std::size_t a = l.control_base;
    for (std::size_t* cell : {&l.addr_phase, &l.addr_next_free, &l.addr_scan_pos, &l.addr_best_node, &l.addr_best_f,
                              &l.addr_selected, &l.addr_action_idx, &l.addr_open_count, &l.addr_solution_ptr,
                              &l.addr_flag, &l.addr_zero, &l.addr_scratch, &l.addr_cur_state, &l.addr_cur_g,
                              &l.addr_action_count})
      *cell = a++;
    l.node_base = a + 5;
    l.max_records = max_records;
    l.capacity = l.node_base + l.node_stride * max_records;
    l.validate();
    return l;
  }

  void validate() const {
    if (node_stride <= kNodeFields) throw PreconditionError("node stride must leave gap cells between records");
    if (state_stride < 7) throw PreconditionError("state stride too small");
    if (max_records < 1) throw PreconditionError("need at least one node record");
    if (state_base < problem_base + 3 || control_base < state_base + state_stride * state_count ||
        node_base <= addr_action_count || node_base < control_base)
      throw PreconditionError("astar layout regions overlap");
    if (node_base + node_stride * max_records > capacity) throw PreconditionError("node records do not fit in memory");
  }
};

struct AStarConfig {
  std::size_t read_heads = 9;
  std::size_t write_heads = 12;
  std::size_t max_records = 32;
  double large_f = 1e6;
  double gate_bound = kDefaultGateBound;
  std::size_t max_phase_steps = 100000;
};

/// One recorded step of the symbolic phase machine.
struct PhaseStep {
  AStarPhase phase = AStarPhase::InitRoot;
  std::vector<double> control_input;
  std::vector<double> gates;
  std::vector<double> read_addresses;
  std::vector<double> read_values;
  std::vector<double> outputs;
  std::vector<double> write_addresses;
  bool operator==(const PhaseStep&) const = default;
};

/// Programmatic initialization of all three regions.
inline MemoryState load_astar_instance(const GraphInstance& g, const AStarLayout& L) {
  g.validate();
  if (g.size() != L.state_count) throw PreconditionError("layout was built for a different state count");
  MemoryState m(L.capacity);
  m[L.addr_start()] = static_cast<double>(g.start);
  m[L.addr_goal()] = static_cast<double>(g.goal);
  m[L.addr_state_count()] = static_cast<double>(g.size());
  for (std::size_t s = 0; s < g.size(); ++s) {
    const GraphState& st = g.states[s];
    m[L.state_record(s)] = static_cast<double>(s);
    m[L.addr_heuristic(s)] = st.heuristic;
    m[L.addr_action_total(s)] = static_cast<double>(st.edges.size());
    for (std::size_t a = 0; a < kMaxOutDegree; ++a) {
      m[L.addr_successor(s, a)] = a < st.edges.size() ? static_cast<double>(st.edges[a].to) : -1.0;
      m[L.addr_edge_cost(s, a)] = a < st.edges.size() ? st.edges[a].cost : 0.0;
    }
  }
  m[L.addr_phase] = static_cast<double>(AStarPhase::InitRoot);
  m[L.addr_best_node] = -1.0;
  m[L.addr_selected] = -1.0;
  m[L.addr_solution_ptr] = -1.0;
  m[L.addr_cur_state] = -1.0;
  m[L.addr_flag] = 1.0;
  return m;
}

namespace detail {

inline std::size_t as_index(double v, const char* what) {
  if (v < 0.0 || v != std::floor(v)) throw PreconditionError(std::string("phase machine: bad ") + what);
  return static_cast<std::size_t>(v);
}

// Module semantic maps. Each depends on its read values only; the controller
// decides where those values come from and where the outputs go.

inline std::vector<double> init_root_map(const std::vector<double>& x, std::size_t n_w) {
  std::vector<double> y(n_w, 0.0);
  const double start = x[0];
  const double h = x[1];
  const std::array<double, 11> v{start, -1.0, -1.0, 0.0, h, h, 1.0, 1.0, 1.0, 1.0,
                                 static_cast<double>(AStarPhase::StartOpenScan)};
  std::copy(v.begin(), v.end(), y.begin());
  return y;
}

inline std::vector<double> start_scan_map(double large_f, std::size_t n_w) {
  std::vector<double> y(n_w, 0.0);
  y[0] = 0.0;
  y[1] = -1.0;
  y[2] = large_f;
  y[3] = static_cast<double>(AStarPhase::ScanOpenNode);
  return y;
}

// reads: open, valid, F, best_f, best_node, scan_pos, next_free
inline std::vector<double> scan_node_map(const std::vector<double>& x, std::size_t n_w) {
  std::vector<double> y(n_w, 0.0);
  const bool eligible = x[0] == 1.0 && x[1] == 1.0 && x[2] < x[3];
  y[0] = eligible ? x[5] : x[4];
  y[1] = eligible ? x[2] : x[3];
  y[2] = x[5] + 1.0;
  y[3] = static_cast<double>(x[5] + 1.0 == x[6] ? AStarPhase::FinishOpenScan : AStarPhase::ScanOpenNode);
  return y;
}

// reads: best_node, state(best), G(best), open_count
inline std::vector<double> finish_scan_map(const std::vector<double>& x, std::size_t n_w) {
  std::vector<double> y(n_w, 0.0);
  if (x[0] < 0.0) {
    y[0] = -2.0;  // flag
    y[1] = -1.0;  // solution pointer
    return y;
  }
  y[0] = x[0];
  y[1] = x[1];
  y[2] = x[2];
  y[3] = 0.0;
  y[4] = x[3] - 1.0;
  y[5] = static_cast<double>(AStarPhase::GoalTest);
  return y;
}

// reads: cur_state, goal, action count of cur_state, selected
inline std::vector<double> goal_test_map(const std::vector<double>& x, std::size_t n_w) {
  std::vector<double> y(n_w, 0.0);
  if (x[0] == x[1]) {
    y[0] = x[3];
    y[1] = -1.0;
  } else if (x[2] > 0.0) {
    y[0] = 0.0;
    y[1] = x[2];
    y[2] = static_cast<double>(AStarPhase::ExpandAction);
  } else {
    y[0] = static_cast<double>(AStarPhase::StartOpenScan);
  }
  return y;
}

// reads: succ, cost, h(succ), cur_g, selected, action_idx, action_count,
//        next_free, open_count
inline std::vector<double> expand_action_map(const std::vector<double>& x, std::size_t n_w) {
  std::vector<double> y(n_w, 0.0);
  const double g = x[3] + x[1];
  const std::array<double, 12> v{
      x[0], x[4], x[5], g, x[2], g + x[2], 1.0, 1.0, x[7] + 1.0, x[8] + 1.0, x[5] + 1.0,
      static_cast<double>(x[5] + 1.0 == x[6] ? AStarPhase::StartOpenScan : AStarPhase::ExpandAction)};
  std::copy(v.begin(), v.end(), y.begin());
  return y;
}

}  // namespace detail

/// Runs the search symbolically with the exact step structure of the six
/// modules and returns every step.
inline std::vector<PhaseStep> phase_machine(const GraphInstance& g, const AStarLayout& L, const AStarConfig& cfg) {
  if (cfg.read_heads < 9 || cfg.write_heads < 12)
    throw PreconditionError("the A* program needs at least 9 read heads and 12 write heads");
  MemoryState mem = load_astar_instance(g, L);
  const auto d = [](std::size_t a) { return static_cast<double>(a); };
  std::vector<PhaseStep> steps;

  while (mem[L.addr_flag] >= 0.0) {
    if (steps.size() >= cfg.max_phase_steps) throw PreconditionError("phase machine did not terminate");
    PhaseStep st;
    for (std::size_t a : L.control_inputs()) st.control_input.push_back(mem[a]);
    const auto phase = static_cast<AStarPhase>(static_cast<int>(mem[L.addr_phase]));
    st.phase = phase;
    st.gates.assign(kAStarModules, 0.0);
    st.gates[static_cast<std::size_t>(phase)] = 1.0;

    std::vector<std::size_t> reads(cfg.read_heads, L.addr_zero);
    std::vector<std::size_t> writes(cfg.write_heads, L.addr_scratch);
    const auto node = [&](std::size_t rec, NodeField f) { return L.node_field(rec, f); };
    const auto set_record_writes = [&](std::size_t rec) {
      for (std::size_t f = 0; f < kNodeFields; ++f) writes[f] = node(rec, static_cast<NodeField>(f));
    };

    switch (phase) {
      case AStarPhase::InitRoot: {
        reads[0] = L.addr_start();
        reads[1] = L.addr_heuristic(detail::as_index(mem[L.addr_start()], "start"));
        set_record_writes(0);
        writes[8] = L.addr_next_free;
        writes[9] = L.addr_open_count;
        writes[10] = L.addr_phase;
        break;
      }
      case AStarPhase::StartOpenScan:
        writes[0] = L.addr_scan_pos;
        writes[1] = L.addr_best_node;
        writes[2] = L.addr_best_f;
        writes[3] = L.addr_phase;
        break;
      case AStarPhase::ScanOpenNode: {
        const std::size_t j = detail::as_index(mem[L.addr_scan_pos], "scan position");
        reads[0] = node(j, NodeField::open);
        reads[1] = node(j, NodeField::valid);
        reads[2] = node(j, NodeField::f);
        reads[3] = L.addr_best_f;
        reads[4] = L.addr_best_node;
        reads[5] = L.addr_scan_pos;
        reads[6] = L.addr_next_free;
        writes[0] = L.addr_best_node;
        writes[1] = L.addr_best_f;
        writes[2] = L.addr_scan_pos;
        writes[3] = L.addr_phase;
        break;
      }
      case AStarPhase::FinishOpenScan: {
        reads[0] = L.addr_best_node;
        if (mem[L.addr_best_node] < 0.0) {
          writes[0] = L.addr_flag;
          writes[1] = L.addr_solution_ptr;
        } else {
          const std::size_t b = detail::as_index(mem[L.addr_best_node], "best node");
          reads[1] = node(b, NodeField::state);
          reads[2] = node(b, NodeField::g);
          reads[3] = L.addr_open_count;
          writes[0] = L.addr_selected;
          writes[1] = L.addr_cur_state;
          writes[2] = L.addr_cur_g;
          writes[3] = node(b, NodeField::open);
          writes[4] = L.addr_open_count;
          writes[5] = L.addr_phase;
        }
        break;
      }
      case AStarPhase::GoalTest: {
        const std::size_t s = detail::as_index(mem[L.addr_cur_state], "current state");
        reads[0] = L.addr_cur_state;
        reads[1] = L.addr_goal();
        reads[2] = L.addr_action_total(s);
        reads[3] = L.addr_selected;
        if (mem[L.addr_cur_state] == mem[L.addr_goal()]) {
          writes[0] = L.addr_solution_ptr;
          writes[1] = L.addr_flag;
        } else if (mem[L.addr_action_total(s)] > 0.0) {
          writes[0] = L.addr_action_idx;
          writes[1] = L.addr_action_count;
          writes[2] = L.addr_phase;
        } else {
          writes[0] = L.addr_phase;
        }
        break;
      }
      case AStarPhase::ExpandAction: {
        const std::size_t s = detail::as_index(mem[L.addr_cur_state], "current state");
        const std::size_t a = detail::as_index(mem[L.addr_action_idx], "action index");
        const std::size_t succ = detail::as_index(mem[L.addr_successor(s, a)], "successor");
        const std::size_t child = detail::as_index(mem[L.addr_next_free], "next free slot");
        if (child >= L.max_records) throw CompileError("A* node-record capacity exceeded");
        reads[0] = L.addr_successor(s, a);
        reads[1] = L.addr_edge_cost(s, a);
        reads[2] = L.addr_heuristic(succ);
        reads[3] = L.addr_cur_g;
        reads[4] = L.addr_selected;
        reads[5] = L.addr_action_idx;
        reads[6] = L.addr_action_count;
        reads[7] = L.addr_next_free;
        reads[8] = L.addr_open_count;
        set_record_writes(child);
        writes[8] = L.addr_next_free;
        writes[9] = L.addr_open_count;
        writes[10] = L.addr_action_idx;
        writes[11] = L.addr_phase;
        break;
      }
      default:
        throw PreconditionError("phase machine: unknown phase value");
    }

    for (std::size_t a : reads) {
      st.read_addresses.push_back(d(a));
      st.read_values.push_back(mem[a]);
    }
    switch (phase) {
      case AStarPhase::InitRoot: st.outputs = detail::init_root_map(st.read_values, cfg.write_heads); break;
      case AStarPhase::StartOpenScan: st.outputs = detail::start_scan_map(cfg.large_f, cfg.write_heads); break;
      case AStarPhase::ScanOpenNode: st.outputs = detail::scan_node_map(st.read_values, cfg.write_heads); break;
      case AStarPhase::FinishOpenScan: st.outputs = detail::finish_scan_map(st.read_values, cfg.write_heads); break;
      case AStarPhase::GoalTest: st.outputs = detail::goal_test_map(st.read_values, cfg.write_heads); break;
      case AStarPhase::ExpandAction: st.outputs = detail::expand_action_map(st.read_values, cfg.write_heads); break;
    }
    for (std::size_t i = 0; i < writes.size(); ++i) {
      st.write_addresses.push_back(d(writes[i]));
      mem[writes[i]] = st.outputs[i];
    }
    steps.push_back(std::move(st));
  }
  return steps;
}

struct AStarProgram {
  GraphInstance instance;
  AStarLayout layout;
  AStarConfig config;
  MNCProgram program;
  std::vector<PhaseStep> reference;  // the phase machine's steps
  std::size_t controller_entries = 0;
  std::array<std::size_t, kAStarModules> module_entries{};
};

namespace detail {

inline std::vector<std::int64_t> integer_key(const std::vector<double>& values, const std::string& where) {
  std::vector<std::int64_t> key;
  for (double v : values) {
    if (v != std::floor(v) || std::abs(v) > 9.0e15)
      throw CompileError(where + ": table key component " + format_double(v) + " is not an integer");
    key.push_back(static_cast<std::int64_t>(v));
  }
  return key;
}

// Deduplicates with step provenance so conflicts name the colliding steps.
struct TableAccumulator {
  std::string name;
  std::vector<TableEntry> entries;
  std::map<std::vector<std::int64_t>, std::size_t> first_step;
  std::map<std::vector<std::int64_t>, std::size_t> index;

  void add(std::vector<std::int64_t> key, std::vector<double> value, std::size_t step) {
    if (auto it = index.find(key); it != index.end()) {
      if (entries[it->second].value != value)
        throw CompileConflictError(name + ": steps " + std::to_string(first_step[key]) + " and " +
                                   std::to_string(step) + " share an input but need different outputs");
      return;
    }
    index.emplace(key, entries.size());
    first_step.emplace(key, step);
    entries.push_back({std::move(key), std::move(value)});
  }
};

}  // namespace detail

/// Compiles an explicit step list (normally the phase machine's output).
inline AStarProgram compile_astar_steps(const GraphInstance& g, const AStarLayout& L, const AStarConfig& cfg,
                                        std::vector<PhaseStep> steps) {
  if (steps.empty()) throw CompileError("no steps to compile");
  const std::size_t n_r = cfg.read_heads;
  const std::size_t n_w = cfg.write_heads;
  detail::TableAccumulator controller{"controller", {}, {}, {}};
  std::array<detail::TableAccumulator, kAStarModules> modules;
  for (std::size_t k = 0; k < kAStarModules; ++k)
    modules[k].name = std::string("module ") + to_string(static_cast<AStarPhase>(k));

  for (std::size_t t = 0; t < steps.size(); ++t) {
    const PhaseStep& st = steps[t];
    if (st.read_addresses.size() != n_r || st.read_values.size() != n_r || st.write_addresses.size() != n_w ||
        st.outputs.size() != n_w || st.gates.size() != kAStarModules)
      throw CompileError("step " + std::to_string(t) + " has the wrong interface width");
    std::vector<double> ctrl_out = st.gates;
    ctrl_out.insert(ctrl_out.end(), st.read_addresses.begin(), st.read_addresses.end());
    ctrl_out.insert(ctrl_out.end(), st.write_addresses.begin(), st.write_addresses.end());
    controller.add(detail::integer_key(st.control_input, "controller"), std::move(ctrl_out), t);
    const auto k = static_cast<std::size_t>(st.phase);
    modules[k].add(detail::integer_key(st.read_values, modules[k].name), st.outputs, t);
  }

  AStarProgram out;
  out.instance = g;
  out.layout = L;
  out.config = cfg;
  out.controller_entries = controller.entries.size();
  MNCProgram& p = out.program;
  p.name = "astar";
  p.memory.capacity = L.capacity;
  p.read_heads = n_r;
  p.write_heads = n_w;
  p.control_addresses = L.control_inputs();
  p.controller = build_table(controller.entries, p.control_addresses.size(), kAStarModules + n_r + n_w);
  for (std::size_t k = 0; k < kAStarModules; ++k) {
    out.module_entries[k] = modules[k].entries.size();
    const MLPNetwork core = modules[k].entries.empty() ? build_constant(n_r, std::vector<double>(n_w, 0.0))
                                                       : build_table(modules[k].entries, n_r, n_w);
    p.modules.push_back(build_gate_wrap(core, cfg.gate_bound));
    p.module_names.push_back(to_string(static_cast<AStarPhase>(k)));
  }
  p.halt_cell = L.addr_flag;
  p.gate_bound = cfg.gate_bound;
  p.validate();
  out.reference = std::move(steps);
  return out;
}

inline AStarProgram compile_astar(const GraphInstance& g, const AStarConfig& cfg = {}) {
  const AStarLayout L = AStarLayout::for_instance(g.size(), cfg.max_records);
  return compile_astar_steps(g, L, cfg, phase_machine(g, L, cfg));
}

inline MemoryState load_astar_instance(const AStarProgram& prog) {
  return load_astar_instance(prog.instance, prog.layout);
}

/// Reads record j out of memory (for dumps and invariant checks).
inline NodeRecord read_node_record(const MemoryState& m, const AStarLayout& L, std::size_t j) {
  const auto f = [&](NodeField field) { return m[L.node_field(j, field)]; };
  return {static_cast<std::int64_t>(f(NodeField::state)),
          static_cast<std::int64_t>(f(NodeField::parent)),
          static_cast<std::int64_t>(f(NodeField::action)),
          f(NodeField::g),
          f(NodeField::h),
          f(NodeField::f),
          f(NodeField::open) == 1.0,
          f(NodeField::valid) == 1.0};
}

/// All records below the next-free pointer.
inline std::vector<NodeRecord> read_node_records(const MemoryState& m, const AStarLayout& L) {
  std::vector<NodeRecord> out;
  const auto used = static_cast<std::size_t>(std::max(0.0, m[L.addr_next_free]));
  for (std::size_t j = 0; j < used && j < L.max_records; ++j) out.push_back(read_node_record(m, L, j));
  return out;
}

struct PathResult {
  bool found = false;
  std::vector<std::size_t> states;
  double cost = 0.0;
};

/// Follows parent links from the solution record back to the root.
inline PathResult extract_path(const MemoryState& m, const AStarLayout& L) {
  PathResult r;
  const double sol = m[L.addr_solution_ptr];
  if (sol < 0.0) return r;
  if (sol != std::floor(sol) || sol >= static_cast<double>(L.max_records))
    throw ContractError("solution pointer does not name a record");
  auto j = static_cast<std::int64_t>(sol);
  r.cost = m[L.node_field(static_cast<std::size_t>(j), NodeField::g)];
  std::size_t hops = 0;
  while (j >= 0) {
    if (static_cast<std::size_t>(j) >= L.max_records || ++hops > L.max_records)
      throw ContractError("broken parent chain");
    const NodeRecord rec = read_node_record(m, L, static_cast<std::size_t>(j));
    if (!rec.valid) throw ContractError("parent chain reaches an invalid record");
    r.states.insert(r.states.begin(), static_cast<std::size_t>(rec.state));
    if (rec.parent >= j) throw ContractError("parent index does not precede its child");
    j = rec.parent;
  }
  r.found = true;
  return r;
}

}  // namespace mnc
