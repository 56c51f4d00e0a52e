#include "wqa/eval.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "wqa/errors.hpp"

namespace wqa {

std::vector<Rational> RunWitness::stem_weights() const {
  std::vector<Rational> w;
  w.reserve(stem.size());
  for (const auto& s : stem) w.push_back(s.weight);
  return w;
}

std::vector<Rational> RunWitness::cycle_weights() const {
  std::vector<Rational> w;
  w.reserve(cycle.size());
  for (const auto& s : cycle) w.push_back(s.weight);
  return w;
}

Rational replay_value(const ValueFunction& vf, const std::vector<Rational>& stem,
                      const std::vector<Rational>& cycle) {
  auto max_of = [](const std::vector<Rational>& v, std::optional<Rational> acc) {
    for (const auto& x : v)
      if (!acc || x > *acc) acc = x;
    return acc;
  };
  switch (vf.tag) {
    case ValTag::Last:
      if (!cycle.empty() || stem.empty()) throw PreconditionError("last needs a finite run");
      return stem.back();
    case ValTag::Max: {
      if (!cycle.empty() || stem.empty()) throw PreconditionError("max needs a finite run");
      return *max_of(stem, std::nullopt);
    }
    case ValTag::Sum: {
      if (!cycle.empty() || stem.empty()) throw PreconditionError("sum needs a finite run");
      Rational s;
      for (const auto& x : stem) s += x;
      return s;
    }
    case ValTag::Sup: {
      if (cycle.empty()) throw PreconditionError("sup needs an infinite run");
      return *max_of(cycle, max_of(stem, std::nullopt));
    }
    case ValTag::LimSup: {
      if (cycle.empty()) throw PreconditionError("limsup needs an infinite run");
      return *max_of(cycle, std::nullopt);
    }
    case ValTag::LimInf: {
      if (cycle.empty()) throw PreconditionError("liminf needs an infinite run");
      Rational m = cycle.front();
      for (const auto& x : cycle)
        if (x < m) m = x;
      return m;
    }
    case ValTag::LimAvg: {
      if (cycle.empty()) throw PreconditionError("limavg needs an infinite run");
      Rational s;
      for (const auto& x : cycle) s += x;
      return s / Rational(static_cast<long>(cycle.size()));
    }
    case ValTag::Disc: {
      if (cycle.empty()) throw PreconditionError("disc needs an infinite run");
      Rational acc, pw = Rational(1);
      for (const auto& x : stem) {
        acc += pw * x;
        pw *= vf.lambda;
      }
      Rational cyc, cpw = Rational(1);
      for (const auto& x : cycle) {
        cyc += cpw * x;
        cpw *= vf.lambda;
      }
      // cpw is now lambda^{|cycle|}.
      return acc + pw * cyc / (Rational(1) - cpw);
    }
  }
  throw Error("unreachable");
}

namespace {

WitnessStep make_step(const ProductGraph& p, const Digraph::Edge& e) {
  int pos = p.node_pos(e.from);
  return {p.node_state(e.from), pos, p.word_syms[pos], e.weight};
}

RunWitness witness_from_edges(const ProductGraph& p, const std::vector<int>& stem,
                              const std::vector<int>& cycle) {
  RunWitness w;
  for (int e : stem) w.stem.push_back(make_step(p, p.graph.edges[e]));
  for (int e : cycle) w.cycle.push_back(make_step(p, p.graph.edges[e]));
  return w;
}

/// Follow lowest-index edges from `start` until a node repeats; returns
/// (extension edges, cycle edges).
std::pair<std::vector<int>, std::vector<int>> greedy_walk_to_cycle(const Digraph& g, int start) {
  std::vector<int> walk;  // edges taken
  std::vector<int> pos(g.num_nodes, -1);
  int cur = start;
  pos[start] = 0;
  while (true) {
    if (g.out[cur].empty()) throw Error("walk stuck: node without successors");
    int e = g.out[cur][0];
    int nxt = g.edges[e].to;
    if (pos[nxt] >= 0) {
      walk.push_back(e);
      std::vector<int> ext(walk.begin(), walk.begin() + pos[nxt]);
      std::vector<int> cyc(walk.begin() + pos[nxt], walk.end());
      return {ext, cyc};
    }
    walk.push_back(e);
    pos[nxt] = static_cast<int>(walk.size());
    cur = nxt;
  }
}

/// Cycle through `anchor_edge` inside one SCC: anchor, then a shortest
/// path back to the anchor's source using SCC nodes only.
std::vector<int> cycle_through(const Digraph& g, int anchor_edge,
                               const std::vector<char>& scc_nodes) {
  const auto& e = g.edges[anchor_edge];
  std::vector<int> cyc{anchor_edge};
  if (e.to != e.from) {
    auto back = shortest_path(g, e.to, e.from, scc_nodes);
    if (!back) throw Error("anchor edge not inside a strongly connected set");
    cyc.insert(cyc.end(), back->begin(), back->end());
  }
  return cyc;
}

EvalResult eval_sup(const ProductGraph& p, const std::vector<char>& reach) {
  const Digraph& g = p.graph;
  int best = -1;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (reach[g.edges[e].from] &&
        (best < 0 || g.edges[e].weight > g.edges[best].weight))
      best = static_cast<int>(e);
  if (best < 0) throw Error("no reachable edges");

  auto stem = shortest_path(g, p.initial, g.edges[best].from);
  stem->push_back(best);
  auto [ext, cyc] = greedy_walk_to_cycle(g, g.edges[best].to);
  stem->insert(stem->end(), ext.begin(), ext.end());
  return {g.edges[best].weight, witness_from_edges(p, *stem, cyc)};
}

EvalResult eval_limsup(const ProductGraph& p, const std::vector<char>& reach) {
  const Digraph& g = p.graph;
  auto comp = scc_ids(g);
  int best = -1;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    if (!reach[ed.from] || comp[ed.from] != comp[ed.to]) continue;
    if (best < 0 || ed.weight > g.edges[best].weight) best = static_cast<int>(e);
  }
  if (best < 0) throw Error("no reachable cycle");  // impossible for total automata

  std::vector<char> in_scc(g.num_nodes, 0);
  for (int v = 0; v < g.num_nodes; ++v)
    if (comp[v] == comp[g.edges[best].from]) in_scc[v] = 1;
  auto stem = shortest_path(g, p.initial, g.edges[best].from);
  return {g.edges[best].weight,
          witness_from_edges(p, *stem, cycle_through(g, best, in_scc))};
}

EvalResult eval_liminf(const ProductGraph& p, const std::vector<char>& reach) {
  const Digraph& g = p.graph;
  std::vector<Rational> weights;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (reach[g.edges[e].from]) weights.push_back(g.edges[e].weight);
  std::sort(weights.begin(), weights.end());
  weights.erase(std::unique(weights.begin(), weights.end()), weights.end());

  // Largest threshold v such that a cycle using only weights >= v is
  // reachable.  The subgraph keeps the original node numbering.
  for (auto it = weights.rbegin(); it != weights.rend(); ++it) {
    const Rational& v = *it;
    Digraph sub;
    sub.num_nodes = g.num_nodes;
    std::vector<int> orig_edge;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if (reach[g.edges[e].from] && reach[g.edges[e].to] && g.edges[e].weight >= v) {
        sub.add_edge(g.edges[e].from, g.edges[e].to, g.edges[e].weight,
                     static_cast<int>(e));
        orig_edge.push_back(static_cast<int>(e));
      }
    sub.finalize();
    auto comp = scc_ids(sub);
    int anchor_sub = -1;
    for (std::size_t e = 0; e < sub.edges.size(); ++e)
      if (comp[sub.edges[e].from] == comp[sub.edges[e].to] && sub.edges[e].weight == v) {
        anchor_sub = static_cast<int>(e);
        break;
      }
    if (anchor_sub < 0) {
      // No in-SCC edge of weight exactly v: any cycle here also survives
      // a higher threshold, which was already ruled out.
      bool any_cycle = false;
      for (std::size_t e = 0; e < sub.edges.size() && !any_cycle; ++e)
        any_cycle = comp[sub.edges[e].from] == comp[sub.edges[e].to];
      if (any_cycle) throw Error("liminf threshold scan out of order");
      continue;
    }
    std::vector<char> in_scc(sub.num_nodes, 0);
    for (int x = 0; x < sub.num_nodes; ++x)
      if (comp[x] == comp[sub.edges[anchor_sub].from]) in_scc[x] = 1;
    auto cyc_sub = cycle_through(sub, anchor_sub, in_scc);
    std::vector<int> cyc;
    for (int e : cyc_sub) cyc.push_back(sub.edges[e].tag);
    auto stem = shortest_path(g, p.initial, g.edges[cyc.front()].from);
    return {v, witness_from_edges(p, *stem, cyc)};
  }
  throw Error("no reachable cycle");
}

EvalResult eval_limavg(const ProductGraph& p, const std::vector<char>& reach) {
  const Digraph& g = p.graph;
  auto comp = scc_ids(g);
  int num_comp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::optional<CycleMeanResult> best;
  for (int c = 0; c < num_comp; ++c) {
    std::vector<char> in_scc(g.num_nodes, 0);
    bool any = false;
    for (int v = 0; v < g.num_nodes; ++v)
      if (comp[v] == c && reach[v]) {
        in_scc[v] = 1;
        any = true;
      }
    if (!any) continue;
    auto r = max_cycle_mean_scc(g, in_scc);
    if (r.has_cycle && (!best || r.mean > best->mean)) best = r;
  }
  if (!best) throw Error("no reachable cycle");

  // Rotate the cycle is unnecessary: path to its first node suffices.
  int entry = g.edges[best->cycle_edges.front()].from;
  auto stem = shortest_path(g, p.initial, entry);
  return {best->mean, witness_from_edges(p, *stem, best->cycle_edges)};
}

EvalResult eval_disc(const ProductGraph& p, const Rational& lambda) {
  const Digraph& g = p.graph;
  auto pol = disc_policy_iteration(g, lambda, p.initial);

  // The policy's functional graph yields the witness lasso.
  std::vector<int> walk;
  std::vector<int> pos(g.num_nodes, -1);
  int cur = p.initial;
  pos[cur] = 0;
  while (true) {
    int e = pol.policy[cur];
    int nxt = g.edges[e].to;
    if (pos[nxt] >= 0) {
      walk.push_back(e);
      std::vector<int> stem(walk.begin(), walk.begin() + pos[nxt]);
      std::vector<int> cyc(walk.begin() + pos[nxt], walk.end());
      return {pol.value, witness_from_edges(p, stem, cyc)};
    }
    walk.push_back(e);
    pos[nxt] = static_cast<int>(walk.size());
    cur = nxt;
  }
}

} // namespace

EvalResult eval_lasso(const WeightedAutomaton& aut, const LassoWord& word) {
  if (!aut.valuefn.infinite_words())
    throw PreconditionError("eval_lasso needs an infinite-word value function");
  if (!aut.valuefn.lambda_in_range())
    throw PreconditionError("discount factor outside (0, 1)");
  ProductGraph p = build_product(aut, word);
  auto reach = reachable_from(p.graph, p.initial);
  switch (aut.valuefn.tag) {
    case ValTag::Sup: return eval_sup(p, reach);
    case ValTag::LimSup: return eval_limsup(p, reach);
    case ValTag::LimInf: return eval_liminf(p, reach);
    case ValTag::LimAvg: return eval_limavg(p, reach);
    case ValTag::Disc: return eval_disc(p, aut.valuefn.lambda);
    default: throw Error("unreachable");
  }
}

EvalResult eval_finite(const WeightedAutomaton& aut, const FiniteWord& word) {
  if (!aut.valuefn.finite_words())
    throw PreconditionError("eval_finite needs a finite-word value function");
  if (word.symbols.empty()) throw PreconditionError("empty finite word");
  require_valid(aut);

  const int n = static_cast<int>(word.symbols.size());
  std::vector<int> syms(n);
  for (int i = 0; i < n; ++i) {
    syms[i] = aut.symbol_index(word.symbols[i]);
    if (syms[i] < 0)
      throw PreconditionError("word symbol '" + word.symbols[i] + "' not in alphabet");
  }

  // best[i][q]: optimal value of the suffix from state q at position i;
  // choice[i][q] the transition index achieving it.
  const ValTag tag = aut.valuefn.tag;
  std::vector<std::vector<Rational>> best(n, std::vector<Rational>(aut.num_states));
  std::vector<std::vector<int>> choice(n, std::vector<int>(aut.num_states, -1));
  for (int i = n - 1; i >= 0; --i)
    for (int q = 0; q < aut.num_states; ++q) {
      std::optional<Rational> acc;
      int pick = -1;
      for (std::size_t t = 0; t < aut.transitions.size(); ++t) {
        const auto& tr = aut.transitions[t];
        if (tr.src != q || tr.sym != syms[i]) continue;
        Rational cand;
        if (i == n - 1)
          cand = tr.weight;  // single step left, all three tags agree
        else if (tag == ValTag::Sum)
          cand = tr.weight + best[i + 1][tr.dst];
        else if (tag == ValTag::Max)
          cand = max(tr.weight, best[i + 1][tr.dst]);
        else  // Last: only the final transition's weight matters
          cand = best[i + 1][tr.dst];
        if (!acc || cand > *acc) {
          acc = cand;
          pick = static_cast<int>(t);
        }
      }
      if (!acc) throw Error("totality violated during finite evaluation");
      best[i][q] = *acc;
      choice[i][q] = pick;
    }

  EvalResult res;
  res.value = best[0][aut.initial];
  int q = aut.initial;
  for (int i = 0; i < n; ++i) {
    const auto& tr = aut.transitions[choice[i][q]];
    res.witness.stem.push_back({q, i, syms[i], tr.weight});
    q = tr.dst;
  }
  return res;
}

PolicyResult disc_policy_iteration(const Digraph& g, const Rational& lambda, int source) {
  if (!(lambda > Rational(0) && lambda < Rational(1)))
    throw PreconditionError("discount factor outside (0, 1)");
  auto reach = reachable_from(g, source);
  std::vector<int> nodes;
  for (int v = 0; v < g.num_nodes; ++v)
    if (reach[v]) {
      if (g.out[v].empty()) throw PreconditionError("node without successors");
      nodes.push_back(v);
    }

  std::vector<int> policy(g.num_nodes, -1);
  for (int v : nodes) policy[v] = g.out[v][0];

  std::vector<Rational> val(g.num_nodes);
  auto evaluate = [&]() {
    std::vector<int> state(g.num_nodes, 0);  // 0 fresh, 1 on chain, 2 done
    for (int v0 : nodes) {
      if (state[v0] == 2) continue;
      // Follow the chain to a done node or a fresh cycle.
      std::vector<int> chain;
      int cur = v0;
      while (state[cur] == 0) {
        state[cur] = 1;
        chain.push_back(cur);
        cur = g.edges[policy[cur]].to;
      }
      if (state[cur] == 1) {
        // Found a new cycle starting at cur; solve it in closed form.
        std::size_t k = 0;
        while (chain[k] != cur) ++k;
        std::vector<int> cyc(chain.begin() + k, chain.end());
        Rational acc, pw = Rational(1);
        for (int x : cyc) {
          acc += pw * g.edges[policy[x]].weight;
          pw *= lambda;
        }
        Rational cval = acc / (Rational(1) - pw);  // pw = lambda^|cyc|
        val[cur] = cval;
        state[cur] = 2;
        // Remaining cycle nodes in reverse chain order, so each successor
        // value is already known.
        for (std::size_t i = cyc.size(); i-- > 1;) {
          int x = cyc[i];
          val[x] = g.edges[policy[x]].weight + lambda * val[g.edges[policy[x]].to];
          state[x] = 2;
        }
      }
      // Stem nodes (suffix of chain before the cycle/done node).
      for (std::size_t i = chain.size(); i-- > 0;) {
        int x = chain[i];
        if (state[x] == 2) continue;
        val[x] = g.edges[policy[x]].weight + lambda * val[g.edges[policy[x]].to];
        state[x] = 2;
      }
    }
  };

  while (true) {
    evaluate();
    bool improved = false;
    for (int v : nodes) {
      Rational cur_q = g.edges[policy[v]].weight + lambda * val[g.edges[policy[v]].to];
      int best_edge = -1;
      Rational best_q;
      for (int e : g.out[v]) {
        Rational q = g.edges[e].weight + lambda * val[g.edges[e].to];
        bool take = best_edge < 0 || q > best_q;
        if (!take && q == best_q)
          take = g.edges[e].to < g.edges[best_edge].to ||
                 (g.edges[e].to == g.edges[best_edge].to && e < best_edge);
        if (take) {
          best_q = q;
          best_edge = e;
        }
      }
      // Switch only on strict gain; ties among improving edges already
      // broke toward the lowest target node index.
      if (best_q > cur_q) {
        policy[v] = best_edge;
        improved = true;
      }
    }
    if (!improved) break;
  }
  return {val[source], policy};
}

} // namespace wqa
