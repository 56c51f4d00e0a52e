#include "wqa/cutpoint.hpp"

#include <algorithm>
#include <map>

#include "wqa/digraph.hpp"
#include "wqa/errors.hpp"
#include "wqa/eval.hpp"

namespace wqa {

bool cutpoint_member(const WeightedAutomaton& aut, const LassoWord& word,
                     const Rational& eta) {
  if (!aut.valuefn.infinite_words())
    throw PreconditionError("cut-point membership needs an infinite-word automaton");
  return eval_lasso(aut, word).value >= eta;
}

namespace {

Digraph automaton_graph(const WeightedAutomaton& aut) {
  Digraph g;
  g.num_nodes = aut.num_states;
  for (std::size_t i = 0; i < aut.transitions.size(); ++i)
    g.add_edge(aut.transitions[i].src, aut.transitions[i].dst, aut.transitions[i].weight,
               static_cast<int>(i));
  g.finalize();
  return g;
}

} // namespace

std::vector<SccInterval> limavg_scc_intervals(const WeightedAutomaton& aut) {
  if (aut.valuefn.tag != ValTag::LimAvg)
    throw PreconditionError("SCC intervals apply to limit-average automata");
  require_valid(aut);
  if (!is_deterministic(aut))
    throw PreconditionError("SCC interval analysis needs a deterministic automaton");

  Digraph g = automaton_graph(aut);
  auto comp = scc_ids(g);
  auto reach = reachable_from(g, aut.initial);
  int num_comp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;

  std::vector<SccInterval> out;
  for (int c = 0; c < num_comp; ++c) {
    std::vector<char> in_scc(g.num_nodes, 0);
    SccInterval iv;
    iv.scc_id = c;
    for (int q = 0; q < g.num_nodes; ++q)
      if (comp[q] == c) {
        in_scc[q] = 1;
        iv.states.push_back(q);
        if (reach[q]) iv.reachable = true;
      }
    auto lo = min_cycle_mean_scc(g, in_scc);
    if (!lo.has_cycle) continue;  // trivial SCC
    auto hi = max_cycle_mean_scc(g, in_scc);
    iv.min_mean = lo.mean;
    iv.max_mean = hi.mean;
    out.push_back(std::move(iv));
  }
  return out;
}

IsolationResult limavg_isolation_check(const WeightedAutomaton& aut, const Rational& eta) {
  auto intervals = limavg_scc_intervals(aut);
  IsolationResult res;
  res.isolated = true;
  for (const auto& iv : intervals) {
    if (!iv.reachable) continue;
    if (eta >= iv.min_mean && eta <= iv.max_mean) {
      res.isolated = false;
      res.margin.reset();
      return res;
    }
    Rational dist = eta < iv.min_mean ? iv.min_mean - eta : eta - iv.max_mean;
    if (!res.margin || dist < *res.margin) res.margin = dist;
  }
  return res;
}

BuchiAutomaton extract_dbw_limavg(const WeightedAutomaton& aut, const Rational& eta) {
  auto check = limavg_isolation_check(aut, eta);
  if (!check.isolated)
    throw NotIsolated("threshold " + eta.str() + " meets an attainable value interval");

  auto intervals = limavg_scc_intervals(aut);
  std::vector<char> accepting(aut.num_states, 0);
  for (const auto& iv : intervals)
    if (iv.min_mean > eta)
      for (int q : iv.states) accepting[q] = 1;

  WeightedAutomaton out = aut;
  out.name = aut.name + "_cut";
  out.provenance = "cut-point DBW at eta = " + eta.str();
  out.valuefn = ValueFunction::limsup();
  for (auto& t : out.transitions) t.weight = accepting[t.src] ? Rational(1) : Rational(0);
  out.canonicalize();
  return BuchiAutomaton(std::move(out));
}

DiscUnfoldingPlan plan_disc_unfolding(const WeightedAutomaton& aut, const Rational& epsilon) {
  DiscUnfoldingPlan plan;
  for (const auto& t : aut.transitions)
    plan.max_abs_weight = max(plan.max_abs_weight, t.weight.abs());
  const Rational& lambda = aut.valuefn.lambda;
  Rational u = plan.max_abs_weight / (Rational(1) - lambda);  // u_0
  unsigned n = 0;
  while (u >= epsilon) {
    ++n;
    u *= lambda;
    if (n > 1000000) throw CapExceeded("unfolding depth runaway");
  }
  plan.depth = n;
  plan.tail_bound = u;
  return plan;
}

BuchiAutomaton extract_nbw_disc(const WeightedAutomaton& aut, const Rational& eta,
                                const Rational& epsilon) {
  if (aut.valuefn.tag != ValTag::Disc)
    throw PreconditionError("cut-point unfolding applies to discounted-sum automata");
  require_valid(aut);
  if (!(epsilon > Rational(0))) throw PreconditionError("epsilon must be positive");

  auto plan = plan_disc_unfolding(aut, epsilon);
  const unsigned n = plan.depth;
  const Rational accept_at = eta + epsilon - plan.tail_bound;
  const Rational reject_at = eta - epsilon + plan.tail_bound;

  WeightedAutomaton out;
  out.name = aut.name + "_cut";
  out.provenance = "cut-point unfolding to depth " + std::to_string(n);
  out.alphabet = aut.alphabet;
  out.valuefn = ValueFunction::limsup();

  // Sinks first: 0 accepting, 1 rejecting.
  const int acc_sink = 0, rej_sink = 1;
  out.num_states = 2;
  for (std::size_t s = 0; s < out.alphabet.size(); ++s) {
    out.add_transition(acc_sink, static_cast<int>(s), acc_sink, Rational(1));
    out.add_transition(rej_sink, static_cast<int>(s), rej_sink, Rational(0));
  }

  // Levels of (state, exact partial sum) pairs.
  using Node = std::pair<int, Rational>;
  auto classify = [&](const Node& node, unsigned depth) -> int {
    if (depth < n) return -1;
    if (node.second >= accept_at) return acc_sink;
    if (node.second <= reject_at) return rej_sink;
    throw IsolationViolated(
        "depth-" + std::to_string(n) + " path into state " + std::to_string(node.first) +
        " has value " + node.second.str() + " strictly inside (" + reject_at.str() + ", " +
        accept_at.str() + "); epsilon = " + epsilon.str() + " is not a valid margin");
  };

  std::map<Node, int> level;  // current level's automaton states
  Node root{aut.initial, Rational(0)};
  if (n == 0) {
    int sink = classify(root, 0);
    WeightedAutomaton trivial;
    trivial.name = out.name;
    trivial.provenance = out.provenance;
    trivial.alphabet = out.alphabet;
    trivial.valuefn = ValueFunction::limsup();
    trivial.num_states = 1;
    trivial.initial = 0;
    for (std::size_t s = 0; s < trivial.alphabet.size(); ++s)
      trivial.add_transition(0, static_cast<int>(s), 0,
                             Rational(sink == acc_sink ? 1 : 0));
    trivial.canonicalize();
    return BuchiAutomaton(std::move(trivial));
  }

  out.initial = out.num_states;
  level[root] = out.num_states++;
  Rational pw(1);  // lambda^depth
  for (unsigned depth = 0; depth < n; ++depth) {
    std::map<Node, int> next_level;
    for (const auto& [node, id] : level) {
      for (const auto& t : aut.transitions) {
        if (t.src != node.first) continue;
        Node nxt{t.dst, node.second + pw * t.weight};
        int target = classify(nxt, depth + 1);
        if (target < 0) {
          auto it = next_level.find(nxt);
          if (it == next_level.end())
            it = next_level.emplace(nxt, out.num_states++).first;
          target = it->second;
        }
        out.add_transition(id, t.sym, target, Rational(target == acc_sink ? 1 : 0));
      }
    }
    level = std::move(next_level);
    pw *= aut.valuefn.lambda;
  }
  out.canonicalize();
  return BuchiAutomaton(std::move(out));
}

} // namespace wqa
