#ifndef WQA_DIGRAPH_HPP
#define WQA_DIGRAPH_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "wqa/rational.hpp"

namespace wqa {

/// Plain weighted digraph on dense node indices.  The edge tag is an
/// opaque caller payload (a transition index, typically).
struct Digraph {
  struct Edge {
    int from = 0;
    int to = 0;
    Rational weight;
    int tag = -1;
  };

  int num_nodes = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> out;  // node -> edge indices; build with finalize()

  void add_edge(int from, int to, Rational w, int tag = -1) {
    edges.push_back({from, to, std::move(w), tag});
  }
  void finalize();
};

/// SCC id per node (Tarjan, iterative).  Ids are dense, 0-based, and in
/// reverse topological order of the condensation.
std::vector<int> scc_ids(const Digraph& g);

std::vector<char> reachable_from(const Digraph& g, int src);

struct CycleMeanResult {
  bool has_cycle = false;
  Rational mean;
  std::vector<int> cycle_edges;  // a cycle attaining the mean, as edge indices
};

/// Exact minimum (resp. maximum) cycle mean over all cycles of g,
/// computed per SCC with Karp's dynamic program; the reported cycle is
/// recovered from tight edges under the mean-shifted weights.
CycleMeanResult min_cycle_mean(const Digraph& g);
CycleMeanResult max_cycle_mean(const Digraph& g);

/// Same, restricted to one SCC given by a node filter (nonzero entries).
CycleMeanResult min_cycle_mean_scc(const Digraph& g, const std::vector<char>& in_scc);
CycleMeanResult max_cycle_mean_scc(const Digraph& g, const std::vector<char>& in_scc);

/// All simple cycles, as edge-index lists, restricted to nodes allowed
/// by the filter (empty filter = all nodes).  Throws CapExceeded when
/// more than `cap` cycles or `step_cap` search steps are produced.
std::vector<std::vector<int>> enumerate_simple_cycles(
    const Digraph& g, const std::vector<char>& allowed,
    std::size_t cap = 1 << 20, std::size_t step_cap = 1 << 24);

struct GraphLasso {
  std::vector<int> stem_edges;
  std::vector<int> cycle_edges;
};

/// All walks from `start` that are simple until their first node repeat,
/// reported as stem + cycle.  Covers every (simple stem, simple cycle)
/// lasso run.
std::vector<GraphLasso> enumerate_lassos(
    const Digraph& g, int start,
    std::size_t cap = 1 << 20, std::size_t step_cap = 1 << 24);

/// Shortest (fewest edges) path between two nodes as edge indices;
/// nullopt if unreachable.  Ties break toward smaller edge indices.
std::optional<std::vector<int>> shortest_path(
    const Digraph& g, int from, int to, const std::vector<char>& allowed_nodes = {});

} // namespace wqa

#endif
