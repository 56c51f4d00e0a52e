#ifndef WQA_CUTPOINT_HPP
#define WQA_CUTPOINT_HPP

#include <optional>

#include "wqa/automaton.hpp"
#include "wqa/buchi.hpp"

namespace wqa {

struct CutPoint {
  Rational eta;
  std::optional<Rational> epsilon;  // claimed isolation margin, > 0
};

/// Min/max cycle mean inside one SCC of the automaton graph; trivial
/// SCCs (no cycle) are not reported.
struct SccInterval {
  int scc_id = 0;
  Rational min_mean;
  Rational max_mean;
  bool reachable = false;
  std::vector<int> states;
};

/// Exact membership in the cut-point language L^{>= eta}.
bool cutpoint_member(const WeightedAutomaton& aut, const LassoWord& word,
                     const Rational& eta);

/// Intervals of attainable limit-average values, one per cycle-bearing
/// SCC, computed with Karp's algorithm.  Requires a deterministic
/// limit-average automaton.
std::vector<SccInterval> limavg_scc_intervals(const WeightedAutomaton& aut);

struct IsolationResult {
  bool isolated = false;
  std::optional<Rational> margin;  // min distance to the reachable intervals
};

/// eta is isolated iff it avoids every reachable SCC interval.
IsolationResult limavg_isolation_check(const WeightedAutomaton& aut, const Rational& eta);

/// Deterministic Buchi automaton for L^{>= eta} of a deterministic
/// limit-average automaton with isolated eta: accepting states are those
/// in SCCs lying entirely above eta.
BuchiAutomaton extract_dbw_limavg(const WeightedAutomaton& aut, const Rational& eta);

/// Buchi automaton for L^{>= eta} of a discounted-sum automaton, given a
/// claimed isolation margin epsilon > 0: the automaton is unfolded to
/// the least depth n with V*lambda^n/(1-lambda) < epsilon and each
/// depth-n path is sent to an accepting or rejecting sink.  A path value
/// inside the undecided middle interval refutes the margin
/// (IsolationViolated).
BuchiAutomaton extract_nbw_disc(const WeightedAutomaton& aut, const Rational& eta,
                                const Rational& epsilon);

/// The chosen unfolding depth and tail bound, exposed for inspection.
struct DiscUnfoldingPlan {
  unsigned depth = 0;
  Rational max_abs_weight;
  Rational tail_bound;  // V*lambda^depth/(1-lambda)
};
DiscUnfoldingPlan plan_disc_unfolding(const WeightedAutomaton& aut, const Rational& epsilon);

} // namespace wqa

#endif
