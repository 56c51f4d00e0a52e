#include "wqa/product.hpp"

#include "wqa/errors.hpp"

namespace wqa {

ProductGraph build_product(const WeightedAutomaton& aut, const LassoWord& word) {
  require_valid(aut);
  if (word.period.empty()) throw PreconditionError("lasso word needs a nonempty period");

  ProductGraph p;
  p.num_states = aut.num_states;
  p.prefix_len = static_cast<int>(word.prefix.size());
  p.len = static_cast<int>(word.length());
  p.word_syms.reserve(p.len);
  for (int i = 0; i < p.len; ++i) {
    int s = aut.symbol_index(word.at(i));
    if (s < 0)
      throw PreconditionError("word symbol '" + word.at(i) + "' not in alphabet of '" +
                              aut.name + "'");
    p.word_syms.push_back(s);
  }

  // Transitions bucketed by (state, symbol); edges generated for nodes
  // reachable from the initial one only.  Node numbering stays dense and
  // state-major regardless.
  std::vector<std::vector<int>> by_src_sym(
      static_cast<std::size_t>(aut.num_states) * aut.alphabet.size());
  for (std::size_t t = 0; t < aut.transitions.size(); ++t)
    by_src_sym[static_cast<std::size_t>(aut.transitions[t].src) * aut.alphabet.size() +
               aut.transitions[t].sym]
        .push_back(static_cast<int>(t));

  p.graph.num_nodes = p.num_states * p.len;
  p.initial = p.node(aut.initial, 0);
  std::vector<char> seen(p.graph.num_nodes, 0);
  std::vector<int> queue{p.initial};
  seen[p.initial] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int node = queue[qi];
    int state = p.node_state(node), pos = p.node_pos(node);
    int nxt = p.next_pos(pos);
    for (int t : by_src_sym[static_cast<std::size_t>(state) * aut.alphabet.size() +
                            p.word_syms[pos]]) {
      const auto& tr = aut.transitions[t];
      int target = p.node(tr.dst, nxt);
      p.graph.add_edge(node, target, tr.weight, t);
      if (!seen[target]) {
        seen[target] = 1;
        queue.push_back(target);
      }
    }
  }
  p.graph.finalize();
  return p;
}

} // namespace wqa
