#include "wqa/digraph.hpp"

#include <algorithm>
#include <deque>
#include <optional>

#include "wqa/errors.hpp"

namespace wqa {

void Digraph::finalize() {
  out.assign(num_nodes, {});
  for (std::size_t i = 0; i < edges.size(); ++i)
    out[edges[i].from].push_back(static_cast<int>(i));
}

std::vector<int> scc_ids(const Digraph& g) {
  // Iterative Tarjan.
  std::vector<int> index(g.num_nodes, -1), low(g.num_nodes, 0), comp(g.num_nodes, -1);
  std::vector<char> on_stack(g.num_nodes, 0);
  std::vector<int> stack;
  int next_index = 0, next_comp = 0;

  struct Frame { int node; std::size_t edge_pos; };
  for (int root = 0; root < g.num_nodes; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge_pos < g.out[f.node].size()) {
        int e = g.out[f.node][f.edge_pos++];
        int w = g.edges[e].to;
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
      } else {
        int v = f.node;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().node] = std::min(low[frames.back().node], low[v]);
        if (low[v] == index[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = next_comp;
            if (w == v) break;
          }
          ++next_comp;
        }
      }
    }
  }
  return comp;
}

std::vector<char> reachable_from(const Digraph& g, int src) {
  std::vector<char> seen(g.num_nodes, 0);
  if (src < 0 || src >= g.num_nodes) return seen;
  std::vector<int> stack{src};
  seen[src] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : g.out[v]) {
      int w = g.edges[e].to;
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

namespace {

// Karp's characterization on a single SCC: mu* = min over v of
// max over k of (D_n(v) - D_k(v)) / (n - k), with D_k the minimum weight
// of an edge progression of exactly k edges from an arbitrary source.
// The cycle is recovered afterwards from tight edges of the shifted
// weights w - mu*: every minimum-mean cycle is tight, and every cycle in
// the tight subgraph has mean exactly mu*.
std::optional<CycleMeanResult> karp_min_in_scc(const Digraph& g, const std::vector<char>& in_scc) {
  std::vector<int> nodes;
  for (int v = 0; v < g.num_nodes; ++v)
    if (in_scc[v]) nodes.push_back(v);
  if (nodes.empty()) return std::nullopt;

  std::vector<int> local(g.num_nodes, -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<int>(i);
  std::vector<int> scc_edges;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (in_scc[g.edges[e].from] && in_scc[g.edges[e].to])
      scc_edges.push_back(static_cast<int>(e));
  if (scc_edges.empty()) return std::nullopt;  // trivial SCC, no cycle

  const int n = static_cast<int>(nodes.size());
  const int src = 0;  // local id of the source

  std::vector<std::vector<std::optional<Rational>>> dist(
      n + 1, std::vector<std::optional<Rational>>(n));
  dist[0][src] = Rational(0);
  for (int k = 1; k <= n; ++k)
    for (int e : scc_edges) {
      int u = local[g.edges[e].from], v = local[g.edges[e].to];
      if (!dist[k - 1][u]) continue;
      Rational cand = *dist[k - 1][u] + g.edges[e].weight;
      if (!dist[k][v] || cand < *dist[k][v]) dist[k][v] = cand;
    }

  std::optional<Rational> mu;
  for (int v = 0; v < n; ++v) {
    if (!dist[n][v]) continue;
    std::optional<Rational> inner;
    for (int k = 0; k < n; ++k) {
      if (!dist[k][v]) continue;
      Rational ratio = (*dist[n][v] - *dist[k][v]) / Rational(n - k);
      if (!inner || ratio > *inner) inner = ratio;
    }
    if (inner && (!mu || *inner < *mu)) mu = inner;
  }
  if (!mu) return std::nullopt;

  // Shortest distances under w' = w - mu (no negative cycle) from src.
  std::vector<std::optional<Rational>> d(n);
  d[src] = Rational(0);
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (int e : scc_edges) {
      int u = local[g.edges[e].from], v = local[g.edges[e].to];
      if (!d[u]) continue;
      Rational cand = *d[u] + g.edges[e].weight - *mu;
      if (!d[v] || cand < *d[v]) {
        d[v] = cand;
        changed = true;
      }
    }
    if (!changed) break;
  }

  // Cycle in the tight subgraph via DFS: a back edge closes a cycle of
  // mean exactly mu.
  std::vector<std::vector<int>> tight(n);
  for (int e : scc_edges) {
    int u = local[g.edges[e].from], v = local[g.edges[e].to];
    if (d[u] && d[v] && *d[u] + g.edges[e].weight - *mu == *d[v])
      tight[u].push_back(e);
  }

  std::vector<int> state(n, 0);  // 0 = unseen, 1 = on path, 2 = done
  std::vector<int> path_edges;
  std::vector<std::pair<int, std::size_t>> stk;
  CycleMeanResult res;
  res.has_cycle = true;
  res.mean = *mu;
  for (int s = 0; s < n && res.cycle_edges.empty(); ++s) {
    if (state[s] != 0) continue;
    stk.assign(1, {s, 0});
    state[s] = 1;
    path_edges.clear();
    while (!stk.empty() && res.cycle_edges.empty()) {
      auto& [v, pos] = stk.back();
      if (pos < tight[v].size()) {
        int e = tight[v][pos++];
        int w = local[g.edges[e].to];
        if (state[w] == 1) {
          // Back edge: the cycle is w's path segment up to v, plus e.
          std::vector<int> cyc{e};
          if (w != v)
            for (auto it = path_edges.rbegin(); it != path_edges.rend(); ++it) {
              cyc.push_back(*it);
              if (local[g.edges[*it].from] == w) break;
            }
          std::reverse(cyc.begin(), cyc.end());
          res.cycle_edges = cyc;
        } else if (state[w] == 0) {
          state[w] = 1;
          path_edges.push_back(e);
          stk.push_back({w, 0});
        }
      } else {
        state[v] = 2;
        stk.pop_back();
        if (!path_edges.empty()) path_edges.pop_back();
      }
    }
  }
  return res;
}

CycleMeanResult min_over_sccs(const Digraph& g, const std::vector<char>& node_filter) {
  auto comp = scc_ids(g);
  int num_comp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  CycleMeanResult best;
  for (int c = 0; c < num_comp; ++c) {
    std::vector<char> in_scc(g.num_nodes, 0);
    bool any = false;
    for (int v = 0; v < g.num_nodes; ++v)
      if (comp[v] == c && (node_filter.empty() || node_filter[v])) {
        in_scc[v] = 1;
        any = true;
      }
    if (!any) continue;
    auto r = karp_min_in_scc(g, in_scc);
    if (r && (!best.has_cycle || r->mean < best.mean)) best = *r;
  }
  return best;
}

Digraph negated(const Digraph& g) {
  Digraph n = g;
  for (auto& e : n.edges) e.weight = -e.weight;
  return n;
}

} // namespace

CycleMeanResult min_cycle_mean(const Digraph& g) { return min_over_sccs(g, {}); }

CycleMeanResult max_cycle_mean(const Digraph& g) {
  auto r = min_cycle_mean(negated(g));
  if (r.has_cycle) r.mean = -r.mean;
  return r;
}

CycleMeanResult min_cycle_mean_scc(const Digraph& g, const std::vector<char>& in_scc) {
  auto r = karp_min_in_scc(g, in_scc);
  return r ? *r : CycleMeanResult{};
}

CycleMeanResult max_cycle_mean_scc(const Digraph& g, const std::vector<char>& in_scc) {
  auto r = karp_min_in_scc(negated(g), in_scc);
  if (!r) return {};
  r->mean = -r->mean;
  return *r;
}

std::vector<std::vector<int>> enumerate_simple_cycles(
    const Digraph& g, const std::vector<char>& allowed,
    std::size_t cap, std::size_t step_cap) {
  std::vector<std::vector<int>> cycles;
  std::size_t steps = 0;
  std::vector<char> on_path(g.num_nodes, 0);
  std::vector<int> path;

  // Anchor each cycle at its smallest node: search only nodes >= s.
  for (int s = 0; s < g.num_nodes; ++s) {
    if (!allowed.empty() && !allowed[s]) continue;
    struct Frame { int node; std::size_t pos; };
    std::vector<Frame> stk{{s, 0}};
    on_path[s] = 1;
    while (!stk.empty()) {
      if (++steps > step_cap) throw CapExceeded("cycle enumeration step cap exceeded");
      auto& f = stk.back();
      if (f.pos < g.out[f.node].size()) {
        int e = g.out[f.node][f.pos++];
        int w = g.edges[e].to;
        if (w < s || (!allowed.empty() && !allowed[w])) continue;
        if (w == s) {
          path.push_back(e);
          cycles.push_back(path);
          path.pop_back();
          if (cycles.size() > cap) throw CapExceeded("cycle enumeration cap exceeded");
        } else if (!on_path[w]) {
          on_path[w] = 1;
          path.push_back(e);
          stk.push_back({w, 0});
        }
      } else {
        if (!path.empty()) path.pop_back();
        on_path[f.node] = 0;
        stk.pop_back();
      }
    }
    on_path[s] = 0;
  }
  return cycles;
}

std::vector<GraphLasso> enumerate_lassos(
    const Digraph& g, int start, std::size_t cap, std::size_t step_cap) {
  std::vector<GraphLasso> lassos;
  std::size_t steps = 0;
  std::vector<int> pos_on_path(g.num_nodes, -1);
  std::vector<int> path_edges;

  struct Frame { int node; std::size_t pos; };
  std::vector<Frame> stk{{start, 0}};
  pos_on_path[start] = 0;
  while (!stk.empty()) {
    if (++steps > step_cap) throw CapExceeded("lasso enumeration step cap exceeded");
    auto& f = stk.back();
    if (f.pos < g.out[f.node].size()) {
      int e = g.out[f.node][f.pos++];
      int w = g.edges[e].to;
      if (pos_on_path[w] >= 0) {
        // First repeat: split the walk at the first occurrence of w.
        GraphLasso l;
        int split = pos_on_path[w];
        l.stem_edges.assign(path_edges.begin(), path_edges.begin() + split);
        l.cycle_edges.assign(path_edges.begin() + split, path_edges.end());
        l.cycle_edges.push_back(e);
        lassos.push_back(std::move(l));
        if (lassos.size() > cap) throw CapExceeded("lasso enumeration cap exceeded");
      } else {
        pos_on_path[w] = static_cast<int>(path_edges.size()) + 1;
        path_edges.push_back(e);
        stk.push_back({w, 0});
      }
    } else {
      pos_on_path[f.node] = -1;
      if (!path_edges.empty()) path_edges.pop_back();
      stk.pop_back();
    }
  }
  return lassos;
}

std::optional<std::vector<int>> shortest_path(
    const Digraph& g, int from, int to, const std::vector<char>& allowed_nodes) {
  std::vector<int> pred_edge(g.num_nodes, -1);
  std::vector<char> seen(g.num_nodes, 0);
  std::deque<int> queue;
  queue.push_back(from);
  seen[from] = 1;
  if (from == to) return std::vector<int>{};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int e : g.out[v]) {
      int w = g.edges[e].to;
      if (seen[w] || (!allowed_nodes.empty() && !allowed_nodes[w])) continue;
      seen[w] = 1;
      pred_edge[w] = e;
      if (w == to) {
        std::vector<int> path;
        int cur = to;
        while (cur != from) {
          path.push_back(pred_edge[cur]);
          cur = g.edges[pred_edge[cur]].from;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

} // namespace wqa
