#ifndef WQA_ROBUSTNESS_HPP
#define WQA_ROBUSTNESS_HPP

#include <cstdint>
#include <span>

#include "wqa/automaton.hpp"

namespace wqa {

/// Same skeleton, every weight moved by a seed-deterministic rational
/// delta with |delta| <= epsilon.  Deltas have denominators bounded by
/// 64 * den(epsilon) so perturbed automata stay exact-friendly.
WeightedAutomaton perturb(const WeightedAutomaton& aut, const Rational& epsilon,
                          std::uint64_t seed);

/// Sup-distance bound between a language and any epsilon-approximation:
/// epsilon for Sup/LimSup/LimInf/LimAvg, epsilon/(1-lambda) for Disc.
/// Finite-word tags rejected.
Rational robustness_bound(const ValueFunction& vf, const Rational& epsilon);

/// Exact max over the sample of |L_A(w) - L_B(w)|; B must share A's
/// skeleton (states, initial, transition triples).
Rational check_robustness(const WeightedAutomaton& a, const WeightedAutomaton& b,
                          std::span<const LassoWord> words);

/// true iff membership at eta agrees between A and perturb(A, epsilon,
/// seed) on every sampled word.  A sampled check, not a proof.
bool check_cutpoint_stability(const WeightedAutomaton& aut, const Rational& eta,
                              const Rational& epsilon, std::uint64_t seed,
                              std::span<const LassoWord> words);

struct BooleanizationCertificate {
  long n_a = 1;  // least n with every weight of the form e/n
};

struct BooleanizeResult {
  WeightedAutomaton automaton;
  BooleanizationCertificate certificate;
};

/// Remainder-tracking reduction of a [0,1]-weighted limit-average
/// automaton to weights {0,1}: states Q x [n_A], value preserved
/// exactly, determinism preserved.
BooleanizeResult booleanize_limavg(const WeightedAutomaton& aut);

/// One-state discounted-sum automaton separating [0,1] weights from
/// boolean ones, with its two diagnostic words and their exact values.
struct DiscGapWitness {
  WeightedAutomaton automaton;
  LassoWord word_ab;   // a then b forever
  Rational value_ab;   // (1+lambda)/2
  LassoWord word_aa;   // a forever
  Rational value_aa;   // (1+lambda)/(2(1-lambda))
};
DiscGapWitness boolean_disc_gap_witness(const Rational& lambda);

} // namespace wqa

#endif
