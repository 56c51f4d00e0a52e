#ifndef WQA_CLOSURE_HPP
#define WQA_CLOSURE_HPP

#include "wqa/automaton.hpp"
#include "wqa/buchi.hpp"

namespace wqa {

enum class ClosureOp { Max, Min, Complement, Sum };

std::string to_string(ClosureOp op);

/// Value-function tag plus determinism, derived from automata and never
/// stored independently.
struct AutomatonClass {
  ValTag tag;
  bool deterministic;

  static AutomatonClass of(const WeightedAutomaton& aut);
  /// Class of a pair: deterministic iff both are.
  static AutomatonClass of_pair(const WeightedAutomaton& a1, const WeightedAutomaton& a2);

  std::string name() const;  // "DLAvg", "NSup", "det Sum", ...
};

/// One cell of the closure table.
struct ClosureVerdict {
  bool closed = false;
  std::string construction;  // empty when not closed
  std::string cost;          // e.g. "O(n1*n2)", "O(2^n)"
  std::string citation;      // "Thm 12", ...
};

ClosureVerdict closure_table(const AutomatonClass& cls, ClosureOp op);

struct ClosureConfig {
  std::size_t max_states = 500000;  // BFS cap for constructed automata
  int max_tracked_weights = 20;     // |V1 u V2| / |V1 x V2| cap for bit products
  BuchiConfig buchi;                // for the complementation route
};

/// L_out = max(L_1, L_2); same alphabet and value function required.
/// Throws ClosedUnderOpViolation when the derived class is not closed.
WeightedAutomaton op_max(const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                         const ClosureConfig& cfg = {});

/// L_out = min(L_1, L_2).
WeightedAutomaton op_min(const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                         const ClosureConfig& cfg = {});

/// L_out = L_1 + L_2.
WeightedAutomaton op_sum(const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                         const ClosureConfig& cfg = {});

/// L_out = 1 - L_in.
WeightedAutomaton complement(const WeightedAutomaton& aut, const ClosureConfig& cfg = {});

} // namespace wqa

#endif
