#include <doctest.h>

#include <algorithm>

#include "wqa/digraph.hpp"
#include "wqa/errors.hpp"
#include "wqa/suite.hpp"

using namespace wqa;

namespace {

Digraph make(int n, std::initializer_list<std::tuple<int, int, Rational>> edges) {
  Digraph g;
  g.num_nodes = n;
  for (auto [u, v, w] : edges) g.add_edge(u, v, w);
  g.finalize();
  return g;
}

Rational cycle_mean_of(const Digraph& g, const std::vector<int>& edges) {
  Rational s;
  for (int e : edges) s += g.edges[e].weight;
  return s / Rational(static_cast<long>(edges.size()));
}

} // namespace

TEST_CASE("scc decomposition") {
  auto g = make(5, {{0, 1, Rational(0)},
                    {1, 2, Rational(0)},
                    {2, 0, Rational(0)},
                    {2, 3, Rational(0)},
                    {3, 4, Rational(0)},
                    {4, 3, Rational(0)}});
  auto comp = scc_ids(g);
  CHECK(comp[0] == comp[1]);
  CHECK(comp[1] == comp[2]);
  CHECK(comp[3] == comp[4]);
  CHECK(comp[0] != comp[3]);
}

TEST_CASE("min cycle mean: basic shapes") {
  auto loop = make(1, {{0, 0, Rational(1, 2)}});
  auto r = min_cycle_mean(loop);
  REQUIRE(r.has_cycle);
  CHECK(r.mean == Rational(1, 2));
  CHECK(max_cycle_mean(loop).mean == Rational(1, 2));

  auto tri = make(3, {{0, 1, Rational(1)}, {1, 2, Rational(2)}, {2, 0, Rational(3)}});
  CHECK(min_cycle_mean(tri).mean == Rational(2));
  CHECK(max_cycle_mean(tri).mean == Rational(2));

  auto loops = make(2, {{0, 0, Rational(0)}, {1, 1, Rational(1)}});
  CHECK(min_cycle_mean(loops).mean == Rational(0));
  CHECK(max_cycle_mean(loops).mean == Rational(1));

  auto acyclic = make(2, {{0, 1, Rational(1)}});
  CHECK(!min_cycle_mean(acyclic).has_cycle);
  CHECK(!max_cycle_mean(acyclic).has_cycle);
}

TEST_CASE("extracted cycles attain the reported mean") {
  Rng rng(99);
  for (int i = 0; i < 120; ++i) {
    int n = 2 + static_cast<int>(rng.below(5));
    Digraph g;
    g.num_nodes = n;
    int m = n + static_cast<int>(rng.below(2 * n));
    for (int e = 0; e < m; ++e)
      g.add_edge(static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n)),
                 Rational(static_cast<long>(rng.below(9)) - 4,
                          1 + static_cast<long>(rng.below(3))));
    g.finalize();
    auto lo = min_cycle_mean(g);
    auto hi = max_cycle_mean(g);
    CHECK(lo.has_cycle == hi.has_cycle);
    if (!lo.has_cycle) continue;
    CHECK(lo.mean <= hi.mean);
    CHECK(cycle_mean_of(g, lo.cycle_edges) == lo.mean);
    CHECK(cycle_mean_of(g, hi.cycle_edges) == hi.mean);
    // Cycles are closed walks.
    for (std::size_t k = 0; k < lo.cycle_edges.size(); ++k) {
      int to = g.edges[lo.cycle_edges[k]].to;
      int from = g.edges[lo.cycle_edges[(k + 1) % lo.cycle_edges.size()]].from;
      CHECK(to == from);
    }

    // Independent check by simple-cycle enumeration.
    std::vector<char> all(g.num_nodes, 1);
    auto cycles = enumerate_simple_cycles(g, all);
    REQUIRE(!cycles.empty());
    const Rational first = cycle_mean_of(g, cycles[0]);
    Rational lo_ref = first, hi_ref = first;
    bool all_means_equal = true;
    for (const auto& c : cycles) {
      Rational mean = cycle_mean_of(g, c);
      if (mean != first) all_means_equal = false;
      lo_ref = min(lo_ref, mean);
      hi_ref = max(hi_ref, mean);
    }
    CHECK(lo.mean == lo_ref);
    CHECK(hi.mean == hi_ref);
    CHECK((lo.mean == hi.mean) == all_means_equal);
  }
}

TEST_CASE("lasso enumeration covers simple stems and cycles") {
  auto g = make(3, {{0, 1, Rational(1)},
                    {1, 2, Rational(2)},
                    {2, 1, Rational(3)},
                    {1, 1, Rational(4)},
                    {2, 0, Rational(5)}});
  auto lassos = enumerate_lassos(g, 0);
  CHECK(!lassos.empty());
  for (const auto& l : lassos) {
    REQUIRE(!l.cycle_edges.empty());
    // Stem starts at 0, cycle closes on the stem's endpoint.
    int cur = 0;
    for (int e : l.stem_edges) {
      CHECK(g.edges[e].from == cur);
      cur = g.edges[e].to;
    }
    int entry = cur;
    for (int e : l.cycle_edges) {
      CHECK(g.edges[e].from == cur);
      cur = g.edges[e].to;
    }
    CHECK(cur == entry);
  }
  // The self-loop at 1 must appear as one of the cycles.
  bool found_self = false;
  for (const auto& l : lassos)
    if (l.cycle_edges.size() == 1 && g.edges[l.cycle_edges[0]].from == 1) found_self = true;
  CHECK(found_self);
}

TEST_CASE("enumeration caps throw") {
  // Dense graph: enough simple cycles to trip a tiny cap.
  Digraph g;
  g.num_nodes = 6;
  for (int u = 0; u < 6; ++u)
    for (int v = 0; v < 6; ++v) g.add_edge(u, v, Rational(1));
  g.finalize();
  std::vector<char> all(g.num_nodes, 1);
  CHECK_THROWS_AS(enumerate_simple_cycles(g, all, 10), CapExceeded);
  CHECK_THROWS_AS(enumerate_lassos(g, 0, 10), CapExceeded);
}

TEST_CASE("shortest path") {
  auto g = make(4, {{0, 1, Rational(0)}, {1, 2, Rational(0)}, {2, 3, Rational(0)},
                    {0, 3, Rational(0)}});
  auto p = shortest_path(g, 0, 3);
  REQUIRE(p.has_value());
  CHECK(p->size() == 1);
  CHECK(!shortest_path(g, 3, 0).has_value());
  CHECK(shortest_path(g, 2, 2)->empty());
}
