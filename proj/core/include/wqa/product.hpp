#ifndef WQA_PRODUCT_HPP
#define WQA_PRODUCT_HPP

#include "wqa/automaton.hpp"
#include "wqa/digraph.hpp"

namespace wqa {

/// Automaton x word-position graph: the finite carrier for runs over a
/// lasso word.  Nodes are (state, position) pairs numbered state-major
/// (node = state * len + pos); the position after the last one wraps to
/// the period start.  Edge tags index the automaton's transitions.
struct ProductGraph {
  int num_states = 0;
  int prefix_len = 0;
  int len = 0;  // |prefix| + |period|
  std::vector<int> word_syms;
  Digraph graph;
  int initial = 0;

  int node(int state, int pos) const { return state * len + pos; }
  int node_state(int n) const { return n / len; }
  int node_pos(int n) const { return n % len; }
  int next_pos(int pos) const { return pos + 1 < len ? pos + 1 : prefix_len; }
};

/// Requires every word symbol to be in the automaton's alphabet.
ProductGraph build_product(const WeightedAutomaton& aut, const LassoWord& word);

} // namespace wqa

#endif
