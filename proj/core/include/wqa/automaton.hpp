#ifndef WQA_AUTOMATON_HPP
#define WQA_AUTOMATON_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wqa/rational.hpp"

namespace wqa {

enum class ValTag { Last, Max, Sum, Sup, LimSup, LimInf, LimAvg, Disc };

/// Aggregator of a run's weight sequence.  Last/Max/Sum apply to finite
/// words, Sup/LimSup/LimInf/LimAvg/Disc to infinite words; Disc carries
/// its discount factor 0 < lambda < 1.
struct ValueFunction {
  ValTag tag = ValTag::LimSup;
  Rational lambda;  // meaningful iff tag == Disc

  static ValueFunction last() { return {ValTag::Last, {}}; }
  static ValueFunction max_fn() { return {ValTag::Max, {}}; }
  static ValueFunction sum() { return {ValTag::Sum, {}}; }
  static ValueFunction sup() { return {ValTag::Sup, {}}; }
  static ValueFunction limsup() { return {ValTag::LimSup, {}}; }
  static ValueFunction liminf() { return {ValTag::LimInf, {}}; }
  static ValueFunction limavg() { return {ValTag::LimAvg, {}}; }
  static ValueFunction disc(Rational lambda) { return {ValTag::Disc, std::move(lambda)}; }

  bool finite_words() const {
    return tag == ValTag::Last || tag == ValTag::Max || tag == ValTag::Sum;
  }
  bool infinite_words() const { return !finite_words(); }
  bool lambda_in_range() const {
    return tag != ValTag::Disc || (lambda > Rational(0) && lambda < Rational(1));
  }

  std::string name() const;  // e.g. "limavg", "disc 2/3"

  friend bool operator==(const ValueFunction& a, const ValueFunction& b) {
    if (a.tag != b.tag) return false;
    return a.tag != ValTag::Disc || a.lambda == b.lambda;
  }
};

struct Transition {
  int src = 0;
  int sym = 0;  // index into the alphabet
  int dst = 0;
  Rational weight;

  friend bool operator==(const Transition&, const Transition&) = default;
  friend bool operator<(const Transition& a, const Transition& b) {
    if (a.src != b.src) return a.src < b.src;
    if (a.sym != b.sym) return a.sym < b.sym;
    if (a.dst != b.dst) return a.dst < b.dst;
    return a.weight < b.weight;
  }
};

/// Weighted automaton over a finite ordered alphabet: total transition
/// relation with rational weights plus a value-function tag.  The word
/// value is the sup over runs of the value function applied to the run's
/// weight sequence.  Parallel (src, sym, dst) transitions with distinct
/// weights are allowed; exact duplicates are merged by canonicalize().
struct WeightedAutomaton {
  std::string name = "a";
  std::vector<std::string> alphabet;
  int num_states = 0;
  int initial = 0;
  std::vector<Transition> transitions;
  ValueFunction valuefn;
  std::string provenance;  // construction note; empty for hand-built automata

  int symbol_index(std::string_view sym) const;
  void add_transition(int src, std::string_view sym, int dst, Rational w);
  void add_transition(int src, int sym, int dst, Rational w);

  /// Sort transitions by (src, sym, dst, weight) and drop exact duplicates.
  void canonicalize();

  std::vector<int> transitions_from(int state, int sym) const;  // indices
};

/// Ultimately periodic word u . v^omega, the finite presentation on
/// which all infinite-word evaluation runs.
struct LassoWord {
  std::vector<std::string> prefix;
  std::vector<std::string> period;  // nonempty

  std::size_t length() const { return prefix.size() + period.size(); }
  const std::string& at(std::size_t i) const {
    return i < prefix.size() ? prefix[i] : period[i - prefix.size()];
  }
  std::string str() const;
};

struct FiniteWord {
  std::vector<std::string> symbols;  // nonempty
  std::string str() const;
};

struct ValidationReport {
  std::vector<std::string> structural;        // index/alphabet defects
  std::vector<std::pair<int, int>> missing;   // (state, sym) totality gaps
  bool deterministic = false;
  bool lambda_ok = true;
  std::vector<int> unreachable;               // informational only

  bool ok() const { return structural.empty() && missing.empty() && lambda_ok; }
  std::vector<std::string> problems() const;
};

ValidationReport validate(const WeightedAutomaton& aut);

/// Throws PreconditionError unless the automaton validates.
void require_valid(const WeightedAutomaton& aut);

bool is_deterministic(const WeightedAutomaton& aut);

/// Distinct transition weights in ascending order.
std::vector<Rational> weight_set(const WeightedAutomaton& aut);

/// L_out(w) = c + L_in(w).  Adds c to every weight, except for Sum and
/// Disc where a copy of the initial state carries the shift on its
/// outgoing transitions so that c is counted exactly once.
WeightedAutomaton shift(const WeightedAutomaton& aut, const Rational& c);

/// L_out(w) = c * L_in(w) for c >= 0; negative c rejected.
WeightedAutomaton scale(const WeightedAutomaton& aut, const Rational& c);

/// Optional normalization pass: of parallel (src, sym, dst) transitions
/// keep only the maximum weight.  Sound for sup-over-runs semantics.
WeightedAutomaton normalize_parallel(const WeightedAutomaton& aut);

} // namespace wqa

#endif
