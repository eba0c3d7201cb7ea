// Search problem instances for the A* program and their text format.
//
//   # comment
//   state <name> <h>
//   edge <from> <to> <cost>
//   start <name>
//   goal <name>
//
// States are numbered in declaration order; a state's actions are its edges
// in declaration order.
#pragma once

#include <cmath>
#include <cstdint>
#include <cstddef>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mnc/errors.hpp"
#include "mnc/text.hpp"

namespace mnc {

struct GraphEdge {
  std::size_t to = 0;
  double cost = 0.0;
  bool operator==(const GraphEdge&) const = default;
};

struct GraphState {
  std::string name;
  double heuristic = 0.0;
  std::vector<GraphEdge> edges;
  bool operator==(const GraphState&) const = default;
};

inline constexpr std::size_t kMaxOutDegree = 2;

struct GraphInstance {
  std::vector<GraphState> states;
  std::size_t start = 0;
  std::size_t goal = 0;

  std::size_t size() const { return states.size(); }

  std::size_t id_of(const std::string& name) const {
    for (std::size_t s = 0; s < states.size(); ++s)
      if (states[s].name == name) return s;
    throw ParseError("unknown state '" + name + "'");
  }

  double cost(std::size_t from, std::size_t to) const {
    for (const auto& e : states.at(from).edges)
      if (e.to == to) return e.cost;
    throw PreconditionError("no edge " + states.at(from).name + " -> " + states.at(to).name);
  }

  void validate() const {
    if (states.empty()) throw PreconditionError("instance has no states");
    if (start >= states.size() || goal >= states.size()) throw PreconditionError("start/goal out of range");
    for (const auto& s : states) {
      if (s.edges.size() > kMaxOutDegree)
        throw PreconditionError("state " + s.name + " has more than two actions");
      if (!std::isfinite(s.heuristic) || s.heuristic < 0.0)
        throw PreconditionError("state " + s.name + " has an invalid heuristic");
      for (const auto& e : s.edges) {
        if (e.to >= states.size()) throw PreconditionError("edge target out of range");
        if (!(e.cost > 0.0) || !std::isfinite(e.cost)) throw PreconditionError("edge costs must be positive");
      }
    }
  }

  bool operator==(const GraphInstance&) const = default;
};

/// One search-node record as stored by the A* program.
struct NodeRecord {
  std::int64_t state = 0;
  std::int64_t parent = -1;
  std::int64_t action = -1;
  double g = 0.0;
  double h = 0.0;
  double f = 0.0;
  bool open = false;
  bool valid = false;
  bool operator==(const NodeRecord&) const = default;
};

/// Seven-state instance S, A, B, C, D, E, G. Optimal path S -> B -> D -> G
/// with cost 4 + 1 + 3 = 8; D is reachable through A and through B.
inline GraphInstance canonical_instance() {
  GraphInstance g;
  for (auto [name, h] : std::initializer_list<std::pair<const char*, double>>{
           {"S", 6}, {"A", 5}, {"B", 4}, {"C", 5}, {"D", 3}, {"E", 2}, {"G", 0}})
    g.states.push_back({name, h, {}});
  const auto edge = [&](const char* a, const char* b, double c) { g.states[g.id_of(a)].edges.push_back({g.id_of(b), c}); };
  edge("S", "A", 2);
  edge("S", "B", 4);
  edge("A", "C", 3);
  edge("A", "D", 4);
  edge("B", "D", 1);
  edge("B", "E", 5);
  edge("C", "G", 6);
  edge("D", "G", 3);
  edge("E", "G", 2);
  g.start = g.id_of("S");
  g.goal = g.id_of("G");
  return g;
}

inline GraphInstance parse_instance(std::istream& in) {
  GraphInstance g;
  bool have_start = false;
  bool have_goal = false;
  std::string line;
  std::size_t lineno = 0;
  const auto fail = [&](const std::string& msg) {
    throw ParseError("instance line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    std::vector<std::string> args;
    for (std::string a; ls >> a;) args.push_back(a);
    try {
      if (kw == "state") {
        if (args.size() != 2) fail("expected 'state <name> <h>'");
        for (const auto& s : g.states)
          if (s.name == args[0]) fail("duplicate state '" + args[0] + "'");
        g.states.push_back({args[0], parse_double(args[1]), {}});
      } else if (kw == "edge") {
        if (args.size() != 3) fail("expected 'edge <from> <to> <cost>'");
        g.states[g.id_of(args[0])].edges.push_back({g.id_of(args[1]), parse_double(args[2])});
      } else if (kw == "start" || kw == "goal") {
        if (args.size() != 1) fail("expected '" + kw + " <name>'");
        (kw == "start" ? g.start : g.goal) = g.id_of(args[0]);
        (kw == "start" ? have_start : have_goal) = true;
      } else {
        fail("unknown keyword '" + kw + "'");
      }
    } catch (const ParseError& e) {
      if (std::string(e.what()).rfind("instance line", 0) == 0) throw;
      fail(e.what());
    }
  }
  if (!have_start || !have_goal) throw ParseError("instance needs both 'start' and 'goal'");
  try {
    g.validate();
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
  return g;
}

inline GraphInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  return parse_instance(in);
}

inline std::string serialize_instance(const GraphInstance& g) {
  std::string out;
  for (const auto& s : g.states) out += "state " + s.name + " " + format_double(s.heuristic) + "\n";
  for (const auto& s : g.states)
    for (const auto& e : s.edges)
      out += "edge " + s.name + " " + g.states[e.to].name + " " + format_double(e.cost) + "\n";
  out += "start " + g.states[g.start].name + "\n";
  out += "goal " + g.states[g.goal].name + "\n";
  return out;
}

}  // namespace mnc
