#include <algorithm>
#include <functional>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "mnc/oracles.hpp"

namespace {

using namespace mnc;
using namespace mnc::oracle;

std::vector<double> random_array(std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_real_distribution<double> v(-1e3, 1e3);
  std::vector<double> a(len(rng));
  for (double& x : a) x = v(rng);
  return a;
}

TEST(Oracles, MinExamples) {
  EXPECT_EQ(oracle_min(std::vector<double>{5, 2, 8}), 2);
  EXPECT_EQ(oracle_min(std::vector<double>{-1}), -1);
  EXPECT_THROW(oracle_min(std::vector<double>{}), PreconditionError);
}

TEST(Oracles, SortExample) {
  const auto [sorted, trace] = oracle_sort(std::vector<double>{3, 1, 2});
  EXPECT_EQ(sorted, (std::vector<double>{1, 2, 3}));
  ASSERT_EQ(trace.steps.size(), 6u);
  EXPECT_EQ(trace.steps[0].array, (std::vector<double>{1, 3, 2}));
}

TEST(Oracles, AgreeWithStandardLibrary) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 10000; ++t) {
    const auto a = random_array(rng, 24);
    ASSERT_EQ(oracle_min(a), *std::min_element(a.begin(), a.end()));
    auto expected = a;
    std::sort(expected.begin(), expected.end());
    ASSERT_EQ(oracle_sort(a).first, expected);
  }
}

TEST(Oracles, SortStepCount) {
  for (std::size_t n = 1; n <= 64; ++n) {
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = double((i * 37) % 11);
    EXPECT_EQ(oracle_sort(a).second.steps.size(), n * (n + 1) / 2) << n;
  }
}

TEST(Oracles, AStarCanonical) {
  const GraphInstance g = canonical_instance();
  const AStarResult r = oracle_astar(g, 64);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.cost, 8.0);
  std::vector<std::size_t> path;
  for (const char* s : {"S", "B", "D", "G"}) path.push_back(g.id_of(s));
  EXPECT_EQ(r.path, path);
  const auto d_count = std::count_if(r.records.begin(), r.records.end(),
                                     [&](const NodeRecord& n) { return n.state == std::int64_t(g.id_of("D")); });
  EXPECT_GE(d_count, 2);
  for (const auto& n : r.records) EXPECT_EQ(n.f, n.g + n.h);
}

TEST(Oracles, AStarStartIsGoal) {
  GraphInstance g = canonical_instance();
  g.goal = g.start;
  const AStarResult r = oracle_astar(g, 8);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.cost, 0.0);
  EXPECT_EQ(r.path, std::vector<std::size_t>{g.start});
}

TEST(Oracles, AStarUnreachable) {
  GraphInstance g = canonical_instance();
  for (auto& s : g.states) std::erase_if(s.edges, [&](const GraphEdge& e) { return e.to == g.goal; });
  const AStarResult r = oracle_astar(g, 64);
  EXPECT_FALSE(r.found);
  EXPECT_TRUE(r.path.empty());
}

TEST(Oracles, AStarCapacity) {
  EXPECT_THROW(oracle_astar(canonical_instance(), 3), PreconditionError);
}

// Exhaustive simple-path enumeration for the optimal cost.
double best_path_cost(const GraphInstance& g) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> seen(g.size(), false);
  std::function<void(std::size_t, double)> dfs = [&](std::size_t s, double c) {
    if (s == g.goal) {
      best = std::min(best, c);
      return;
    }
    seen[s] = true;
    for (const auto& e : g.states[s].edges)
      if (!seen[e.to]) dfs(e.to, c + e.cost);
    seen[s] = false;
  };
  dfs(g.start, 0.0);
  return best;
}

// Exact h* by Bellman-Ford style relaxation, scaled down to stay admissible.
GraphInstance random_admissible(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size(2, 8);
  std::uniform_int_distribution<int> cost(1, 9);
  std::uniform_int_distribution<int> deg(0, 2);
  const std::size_t n = size(rng);
  GraphInstance g;
  for (std::size_t s = 0; s < n; ++s) g.states.push_back({"N" + std::to_string(s), 0.0, {}});
  std::uniform_int_distribution<std::size_t> to(0, n - 1);
  for (std::size_t s = 0; s < n; ++s) {
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) {
      const std::size_t t = to(rng);
      if (t == s) continue;
      bool dup = false;
      for (const auto& e : g.states[s].edges) dup = dup || e.to == t;
      if (!dup) g.states[s].edges.push_back({t, double(cost(rng))});
    }
  }
  g.start = 0;
  g.goal = n - 1;
  std::vector<double> hstar(n, std::numeric_limits<double>::infinity());
  hstar[g.goal] = 0;
  for (std::size_t it = 0; it < n; ++it)
    for (std::size_t s = 0; s < n; ++s)
      for (const auto& e : g.states[s].edges) hstar[s] = std::min(hstar[s], e.cost + hstar[e.to]);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (std::size_t s = 0; s < n; ++s)
    g.states[s].heuristic = std::isfinite(hstar[s]) ? std::floor(hstar[s] * frac(rng)) : 0.0;
  return g;
}

TEST(Oracles, AStarOptimalOnAdmissibleInstances) {
  std::mt19937_64 rng(29);
  int checked = 0;
  for (int t = 0; t < 400; ++t) {
    const GraphInstance g = random_admissible(rng);
    AStarResult r;
    try {
      r = oracle_astar(g, 4000);
    } catch (const PreconditionError&) {
      continue;  // cyclic instance without a path can grow without bound
    }
    const double best = best_path_cost(g);
    ASSERT_EQ(r.found, std::isfinite(best));
    if (r.found) {
      ASSERT_EQ(r.cost, best);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

}  // namespace
