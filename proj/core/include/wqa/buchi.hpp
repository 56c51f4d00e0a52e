#ifndef WQA_BUCHI_HPP
#define WQA_BUCHI_HPP

#include "wqa/automaton.hpp"

namespace wqa {

/// Boolean-weight LimSup automaton: acceptance is "LimSup value 1",
/// i.e. the weight-1 edges are the accepting ones.
struct BuchiAutomaton {
  WeightedAutomaton aut;

  explicit BuchiAutomaton(WeightedAutomaton a);
  BuchiAutomaton() = default;
};

struct BuchiConfig {
  int max_input_states = 8;         // complementation input cap
  std::size_t max_states = 200000;  // constructed-state cap
  std::size_t max_edges = 2000000;  // constructed-edge cap
};

/// Buchi automaton accepting { w : L_A(w) >= v } for a LimSup automaton:
/// edges of weight >= v become accepting.
BuchiAutomaton threshold_nbw(const WeightedAutomaton& aut, const Rational& v);

/// State-acceptance view: states (q, b) where b records whether the
/// incoming edge was accepting.  Used by the rank-based complementation.
struct StateAcceptanceView {
  WeightedAutomaton aut;           // weights all 0; acceptance via the flag below
  std::vector<char> accepting;     // per state
};
StateAcceptanceView split_to_state_acceptance(const BuchiAutomaton& b);

/// Rank-based complementation: accepts exactly the words B rejects.
BuchiAutomaton complement_nbw(const BuchiAutomaton& b, const BuchiConfig& cfg = {});

/// Lasso membership: some run crosses accepting edges infinitely often.
bool buchi_member(const BuchiAutomaton& b, const LassoWord& word);

} // namespace wqa

#endif
