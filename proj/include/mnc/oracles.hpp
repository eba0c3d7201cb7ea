// Plain symbolic reference implementations used as differential ground
// truth. Nothing here touches networks or the associative memory.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mnc/errors.hpp"
#include "mnc/graph.hpp"

namespace mnc::oracle {

inline double oracle_min(std::span<const double> a) {
  if (a.empty()) throw PreconditionError("oracle_min: empty input");
  double m = a[0];
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] < m) m = a[i];
  return m;
}

struct SortSnapshot {
  std::vector<double> array;
  std::size_t i = 0;  // pair index after the step
  std::size_t p = 0;  // pass limit after the step
};

struct OracleSortTrace {
  std::vector<SortSnapshot> steps;
};

/// Pass-based adjacent sort on the exact (i, p) schedule, one snapshot per
/// step including the final stop step.
inline std::pair<std::vector<double>, OracleSortTrace> oracle_sort(std::span<const double> input) {
  if (input.empty()) throw PreconditionError("oracle_sort: empty input");
  std::vector<double> a(input.begin(), input.end());
  OracleSortTrace trace;
  std::size_t i = 1;
  std::size_t p = a.size();
  for (;;) {
    if (i < p) {
      if (a[i] < a[i - 1]) std::swap(a[i - 1], a[i]);
      ++i;
    } else if (p > 1) {
      --p;
      i = 1;
    } else {
      trace.steps.push_back({a, i, p});
      break;
    }
    trace.steps.push_back({a, i, p});
  }
  return {std::move(a), std::move(trace)};
}

using mnc::NodeRecord;

struct AStarResult {
  bool found = false;
  std::vector<std::size_t> path;  // state ids, start first
  double cost = 0.0;
  std::vector<NodeRecord> records;
  std::vector<std::size_t> expansions;  // record index selected at each iteration
};

/// Unoptimized A*: explicit record list, no closed list, no duplicate
/// suppression; the open record with the smallest F wins, lowest index on ties.
inline AStarResult oracle_astar(const GraphInstance& g, std::size_t max_records) {
  g.validate();
  AStarResult r;
  const auto push = [&](NodeRecord rec) {
    if (r.records.size() >= max_records) throw PreconditionError("oracle_astar: node capacity exhausted");
    r.records.push_back(rec);
  };
  const double h0 = g.states[g.start].heuristic;
  push({static_cast<std::int64_t>(g.start), -1, -1, 0.0, h0, h0, true, true});
  for (;;) {
    std::size_t best = r.records.size();
    for (std::size_t j = 0; j < r.records.size(); ++j) {
      const NodeRecord& n = r.records[j];
      if (n.valid && n.open && (best == r.records.size() || n.f < r.records[best].f)) best = j;
    }
    if (best == r.records.size()) return r;
    r.expansions.push_back(best);
    r.records[best].open = false;
    const NodeRecord cur = r.records[best];
    const auto s = static_cast<std::size_t>(cur.state);
    if (s == g.goal) {
      r.found = true;
      r.cost = cur.g;
      for (std::int64_t j = static_cast<std::int64_t>(best); j >= 0; j = r.records[static_cast<std::size_t>(j)].parent)
        r.path.insert(r.path.begin(), static_cast<std::size_t>(r.records[static_cast<std::size_t>(j)].state));
      return r;
    }
    const auto& edges = g.states[s].edges;
    for (std::size_t a = 0; a < edges.size(); ++a) {
      const double child_g = cur.g + edges[a].cost;
      const double h = g.states[edges[a].to].heuristic;
      push({static_cast<std::int64_t>(edges[a].to), static_cast<std::int64_t>(best), static_cast<std::int64_t>(a),
            child_g, h, child_g + h, true, true});
    }
  }
}

}  // namespace mnc::oracle
