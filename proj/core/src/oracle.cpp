#include <algorithm>
#include <optional>
#include <set>

#include "wqa/errors.hpp"
#include "wqa/eval.hpp"

namespace wqa {

namespace {

Rational cycle_aggregate(const Digraph& g, const std::vector<int>& cyc, ValTag tag) {
  switch (tag) {
    case ValTag::LimSup: {
      Rational m = g.edges[cyc.front()].weight;
      for (int e : cyc) m = max(m, g.edges[e].weight);
      return m;
    }
    case ValTag::LimInf: {
      Rational m = g.edges[cyc.front()].weight;
      for (int e : cyc) m = min(m, g.edges[e].weight);
      return m;
    }
    case ValTag::LimAvg: {
      Rational s;
      for (int e : cyc) s += g.edges[e].weight;
      return s / Rational(static_cast<long>(cyc.size()));
    }
    default: throw Error("unreachable");
  }
}

Rational oracle_disc(const ProductGraph& p, const Rational& lambda, const OracleConfig& cfg) {
  const Digraph& g = p.graph;

  // Candidate values: the finitely many lasso runs with simple stem and
  // simple cycle; the optimum is among them.
  auto lassos = enumerate_lassos(g, p.initial, cfg.max_lassos, cfg.max_steps);
  std::set<Rational> cand_set;
  ValueFunction vf = ValueFunction::disc(lambda);
  for (const auto& l : lassos) {
    std::vector<Rational> sw, cw;
    for (int e : l.stem_edges) sw.push_back(g.edges[e].weight);
    for (int e : l.cycle_edges) cw.push_back(g.edges[e].weight);
    cand_set.insert(replay_value(vf, sw, cw));
  }
  std::vector<Rational> cands(cand_set.begin(), cand_set.end());
  if (cands.empty()) throw Error("no lasso runs");
  if (cands.size() == 1) return cands.front();

  Rational min_gap = cands[1] - cands[0];
  for (std::size_t i = 2; i < cands.size(); ++i)
    min_gap = min(min_gap, cands[i] - cands[i - 1]);

  auto reach = reachable_from(g, p.initial);
  Rational v_abs;
  for (const auto& e : g.edges)
    if (reach[e.from]) v_abs = max(v_abs, e.weight.abs());

  // Smallest horizon with tail bound u_n = V*lambda^n/(1-lambda) below
  // half the candidate gap; then exactly one candidate fits the
  // enclosing interval around the finite-horizon optimum.
  Rational one_minus = Rational(1) - lambda;
  unsigned n = 1;
  Rational u = v_abs * lambda / one_minus;
  while (!(u + u < min_gap)) {
    ++n;
    u *= lambda;
    if (n > 100000) throw CapExceeded("discount horizon runaway");
  }

  // M[x] = max over runs of length d from x of the discounted sum.
  std::vector<Rational> m(g.num_nodes), next(g.num_nodes);
  for (unsigned d = 1; d <= n; ++d) {
    for (int x = 0; x < g.num_nodes; ++x) {
      if (g.out[x].empty()) continue;
      std::optional<Rational> acc;
      for (int e : g.out[x]) {
        Rational q = g.edges[e].weight + lambda * m[g.edges[e].to];
        if (!acc || q > *acc) acc = q;
      }
      next[x] = *acc;
    }
    std::swap(m, next);
  }
  Rational horizon_best = m[p.initial];

  std::optional<Rational> hit;
  for (const auto& c : cands)
    if (c >= horizon_best - u && c <= horizon_best + u) {
      if (hit) throw Error("discount oracle interval not separating");
      hit = c;
    }
  if (!hit) throw Error("discount oracle lost the true value");
  return *hit;
}

} // namespace

Rational oracle_eval(const WeightedAutomaton& aut, const LassoWord& word,
                     const OracleConfig& cfg) {
  if (!aut.valuefn.infinite_words())
    throw PreconditionError("oracle_eval needs an infinite-word value function");
  ProductGraph p = build_product(aut, word);
  if (static_cast<std::size_t>(p.graph.num_nodes) > cfg.max_nodes)
    throw CapExceeded("oracle product graph above size cap");

  const Digraph& g = p.graph;
  auto reach = reachable_from(g, p.initial);

  switch (aut.valuefn.tag) {
    case ValTag::Sup: {
      // Every reachable edge lies on some stem; take the best.
      std::optional<Rational> best;
      for (const auto& e : g.edges)
        if (reach[e.from] && (!best || e.weight > *best)) best = e.weight;
      if (!best) throw Error("no reachable edges");
      return *best;
    }
    case ValTag::LimSup:
    case ValTag::LimInf:
    case ValTag::LimAvg: {
      auto cycles = enumerate_simple_cycles(g, reach, cfg.max_cycles, cfg.max_steps);
      std::optional<Rational> best;
      for (const auto& c : cycles) {
        Rational v = cycle_aggregate(g, c, aut.valuefn.tag);
        if (!best || v > *best) best = v;
      }
      if (!best) throw Error("no reachable cycle");
      return *best;
    }
    case ValTag::Disc:
      return oracle_disc(p, aut.valuefn.lambda, cfg);
    default:
      throw Error("unreachable");
  }
}

} // namespace wqa
