#include "wqa/buchi.hpp"

#include <algorithm>
#include <map>

#include "wqa/errors.hpp"
#include "wqa/eval.hpp"

namespace wqa {

BuchiAutomaton::BuchiAutomaton(WeightedAutomaton a) : aut(std::move(a)) {
  if (aut.valuefn.tag != ValTag::LimSup)
    throw PreconditionError("Buchi view needs limsup semantics");
  for (const auto& t : aut.transitions)
    if (t.weight != Rational(0) && t.weight != Rational(1))
      throw PreconditionError("Buchi view needs weights in {0, 1}");
}

BuchiAutomaton threshold_nbw(const WeightedAutomaton& aut, const Rational& v) {
  if (aut.valuefn.tag != ValTag::LimSup)
    throw PreconditionError("threshold slicing needs a limsup automaton");
  require_valid(aut);
  WeightedAutomaton out = aut;
  out.name = aut.name + "_ge";
  out.provenance = "threshold slice at " + v.str();
  for (auto& t : out.transitions) t.weight = t.weight >= v ? Rational(1) : Rational(0);
  out.canonicalize();
  return BuchiAutomaton(std::move(out));
}

StateAcceptanceView split_to_state_acceptance(const BuchiAutomaton& b) {
  const WeightedAutomaton& in = b.aut;
  // States (q, flag); (q, 1) exists only if an accepting edge enters q.
  std::vector<char> has_acc_in(in.num_states, 0);
  for (const auto& t : in.transitions)
    if (t.weight == Rational(1)) has_acc_in[t.dst] = 1;

  StateAcceptanceView view;
  std::vector<int> plain(in.num_states, -1), acc(in.num_states, -1);
  int next = 0;
  for (int q = 0; q < in.num_states; ++q) {
    plain[q] = next++;
    if (has_acc_in[q]) acc[q] = next++;
  }
  view.aut.name = in.name + "_state_acc";
  view.aut.alphabet = in.alphabet;
  view.aut.valuefn = ValueFunction::limsup();
  view.aut.num_states = next;
  view.aut.initial = plain[in.initial];
  view.accepting.assign(next, 0);
  for (int q = 0; q < in.num_states; ++q)
    if (acc[q] >= 0) view.accepting[acc[q]] = 1;
  for (const auto& t : in.transitions) {
    int dst = t.weight == Rational(1) ? acc[t.dst] : plain[t.dst];
    view.aut.add_transition(plain[t.src], t.sym, dst, Rational(0));
    if (has_acc_in[t.src]) view.aut.add_transition(acc[t.src], t.sym, dst, Rational(0));
  }
  view.aut.canonicalize();
  return view;
}

namespace {

// Macrostate of the rank-based construction: a level ranking (rank per
// tracked state, -1 = absent) plus the even-rank obligation set, stored
// as a bitmask.  Rank moves are restricted to {m, m-1} (and the even
// floor at accepting states), which preserves completeness and keeps
// the branching factor at two per successor state.
struct RankState {
  std::vector<int> rank;
  std::uint64_t obligation = 0;

  friend bool operator<(const RankState& a, const RankState& b) {
    if (a.obligation != b.obligation) return a.obligation < b.obligation;
    return a.rank < b.rank;
  }
  friend bool operator==(const RankState&, const RankState&) = default;
};

} // namespace

BuchiAutomaton complement_nbw(const BuchiAutomaton& b, const BuchiConfig& cfg) {
  if (b.aut.num_states > cfg.max_input_states)
    throw CapExceeded("complementation input above state cap (" +
                      std::to_string(cfg.max_input_states) + ")");
  require_valid(b.aut);

  StateAcceptanceView view = split_to_state_acceptance(b);
  const WeightedAutomaton& a = view.aut;
  const int n = a.num_states;
  if (n > 64) throw CapExceeded("state-acceptance view too large");
  int num_acc = 0;
  for (char f : view.accepting) num_acc += f;
  const int max_rank = 2 * (n - num_acc);

  // Successor table: succ[q][sym] = list of targets.
  std::vector<std::vector<std::vector<int>>> succ(
      n, std::vector<std::vector<int>>(a.alphabet.size()));
  for (const auto& t : a.transitions) succ[t.src][t.sym].push_back(t.dst);

  RankState init;
  init.rank.assign(n, -1);
  init.rank[a.initial] = max_rank;

  std::map<RankState, int> index;
  std::vector<RankState> states{init};
  index[init] = 0;

  WeightedAutomaton out;
  out.name = b.aut.name + "_comp";
  out.provenance = "rank-based complementation";
  out.alphabet = a.alphabet;
  out.valuefn = ValueFunction::limsup();
  out.initial = 0;

  struct PendingEdge { int src, sym, dst; bool accepting_src; };
  std::vector<PendingEdge> edges;

  for (std::size_t idx = 0; idx < states.size(); ++idx) {
    RankState cur = states[idx];
    bool breakpoint = cur.obligation == 0;
    for (std::size_t sym = 0; sym < a.alphabet.size(); ++sym) {
      // m[q'] = min over predecessors of their rank.
      std::vector<int> bound(n, -1);
      for (int q = 0; q < n; ++q) {
        if (cur.rank[q] < 0) continue;
        for (int q2 : succ[q][sym])
          if (bound[q2] < 0 || cur.rank[q] < bound[q2]) bound[q2] = cur.rank[q];
      }
      std::vector<int> dom;
      for (int q = 0; q < n; ++q)
        if (bound[q] >= 0) dom.push_back(q);
      if (dom.empty()) continue;  // cannot happen for total automata

      // Choice per successor: accepting states take the even floor of m;
      // others take m or m-1.
      std::vector<std::vector<int>> options(dom.size());
      for (std::size_t i = 0; i < dom.size(); ++i) {
        int q = dom[i], m = bound[q];
        if (view.accepting[q])
          options[i] = {m % 2 == 0 ? m : m - 1};
        else if (m == 0)
          options[i] = {0};
        else
          options[i] = {m, m - 1};
      }

      std::vector<std::size_t> pick(dom.size(), 0);
      while (true) {
        RankState nxt;
        nxt.rank.assign(n, -1);
        for (std::size_t i = 0; i < dom.size(); ++i)
          nxt.rank[dom[i]] = options[i][pick[i]];
        // Obligation update: successors of the tracked set (or everything
        // after a breakpoint) that still hold even rank.
        std::uint64_t oblig = 0;
        if (breakpoint) {
          for (int q : dom)
            if (nxt.rank[q] % 2 == 0) oblig |= 1ull << q;
        } else {
          for (int q = 0; q < n; ++q) {
            if (!(cur.obligation >> q & 1)) continue;
            for (int q2 : succ[q][sym])
              if (nxt.rank[q2] >= 0 && nxt.rank[q2] % 2 == 0) oblig |= 1ull << q2;
          }
        }
        nxt.obligation = oblig;

        auto [it, fresh] = index.try_emplace(nxt, static_cast<int>(states.size()));
        if (fresh) {
          states.push_back(nxt);
          if (states.size() > cfg.max_states)
            throw CapExceeded("complementation state explosion");
        }
        edges.push_back({static_cast<int>(idx), static_cast<int>(sym), it->second,
                         breakpoint});
        if (edges.size() > cfg.max_edges)
          throw CapExceeded("complementation edge explosion");

        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
  }

  out.num_states = static_cast<int>(states.size());
  // Transition-based acceptance: edges out of breakpoint states carry 1,
  // so a run hits breakpoints infinitely often iff its LimSup is 1.
  for (const auto& e : edges)
    out.add_transition(e.src, e.sym, e.dst, Rational(e.accepting_src ? 1 : 0));
  out.canonicalize();
  return BuchiAutomaton(std::move(out));
}

bool buchi_member(const BuchiAutomaton& b, const LassoWord& word) {
  return eval_lasso(b.aut, word).value == Rational(1);
}

} // namespace wqa
