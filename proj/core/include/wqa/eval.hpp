#ifndef WQA_EVAL_HPP
#define WQA_EVAL_HPP

#include <cstddef>
#include <vector>

#include "wqa/automaton.hpp"
#include "wqa/digraph.hpp"
#include "wqa/product.hpp"

namespace wqa {

/// One step of a witness run: the transition taken at a word position.
struct WitnessStep {
  int state = 0;   // source state
  int pos = 0;     // word position (for finite words: index in the word)
  int sym = 0;     // alphabet index
  Rational weight;
};

/// Lasso-shaped run witness: stem then cycle, repeated forever.  Finite
/// word witnesses leave the cycle empty.
struct RunWitness {
  std::vector<WitnessStep> stem;
  std::vector<WitnessStep> cycle;

  std::vector<Rational> stem_weights() const;
  std::vector<Rational> cycle_weights() const;
};

struct EvalResult {
  Rational value;
  RunWitness witness;
};

/// Value of the eventually periodic weight sequence stem . cycle^omega
/// (or of the finite sequence stem, when cycle is empty) under the given
/// value function.  Exact; used to check witness soundness.
Rational replay_value(const ValueFunction& vf, const std::vector<Rational>& stem,
                      const std::vector<Rational>& cycle);

/// L_A(w) = sup over runs, computed exactly on the product graph.
/// Requires an infinite-word value function.
EvalResult eval_lasso(const WeightedAutomaton& aut, const LassoWord& word);

/// Sup over runs for Last/Max/Sum via backward dynamic programming on
/// the layered (position, state) DAG.
EvalResult eval_finite(const WeightedAutomaton& aut, const FiniteWord& word);

struct PolicyResult {
  Rational value;            // optimal discounted value at the source
  std::vector<int> policy;   // chosen edge index per node (-1 off-policy)
};

/// Exact optimal discounted value from `source` over nodes reachable
/// from it; every node needs at least one successor.  Improvement ties
/// break toward the smallest successor node index, then edge index.
PolicyResult disc_policy_iteration(const Digraph& g, const Rational& lambda, int source);

struct OracleConfig {
  std::size_t max_nodes = 4096;        // product graph size cap
  std::size_t max_cycles = 1 << 20;
  std::size_t max_lassos = 1 << 20;
  std::size_t max_steps = 1 << 25;
};

/// Independent evaluation by enumeration: simple cycles and stems for
/// Sup/LimSup/LimInf/LimAvg; for Disc, finite-horizon deepening with
/// tail bounds, matched against the finitely many lasso-run values.
Rational oracle_eval(const WeightedAutomaton& aut, const LassoWord& word,
                     const OracleConfig& cfg = {});

} // namespace wqa

#endif
