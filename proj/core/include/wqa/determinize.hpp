#ifndef WQA_DETERMINIZE_HPP
#define WQA_DETERMINIZE_HPP

#include "wqa/automaton.hpp"

namespace wqa {

struct DeterminizeConfig {
  int max_input_states = 16;
  std::size_t max_states = 500000;  // constructed-state cap
};

/// Deterministic LimInf automaton with the same quantitative language.
/// Per weight threshold v, a breakpoint set tracks the runs that have
/// crossed only weights >= v since the last reset; the transition weight
/// reflects the smallest threshold whose set was forced to reset.
WeightedAutomaton determinize_liminf(const WeightedAutomaton& aut,
                                     const DeterminizeConfig& cfg = {});

/// Subset construction with per-step maximal weights; exact for Last
/// (and for finite Max and infinite Sup, whose values are sup-shaped).
WeightedAutomaton determinize_subset_max(const WeightedAutomaton& aut,
                                         const DeterminizeConfig& cfg = {});

} // namespace wqa

#endif
