#ifndef WQA_SUITE_HPP
#define WQA_SUITE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wqa/automaton.hpp"

namespace wqa {

/// Seeded splitmix64 generator; fully specified so failures replay
/// bit-identically from (seed, trial index) alone.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
  bool coin() { return next() & 1; }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }
};

struct AutomatonSpec {
  int num_states = 3;
  int num_symbols = 2;
  std::vector<Rational> weights{Rational(0), Rational(1)};
  bool deterministic = true;  // false forces a genuinely nondeterministic automaton
  ValueFunction valuefn = ValueFunction::limsup();
};

WeightedAutomaton random_automaton(Rng& rng, const AutomatonSpec& spec);
LassoWord random_lasso(Rng& rng, const std::vector<std::string>& alphabet, int max_len);
FiniteWord random_finite(Rng& rng, const std::vector<std::string>& alphabet, int max_len);

/// All lasso words over the alphabet with |prefix| + |period| <= max_len.
std::vector<LassoWord> all_lassos(const std::vector<std::string>& alphabet, int max_len);

struct SuiteFailure {
  std::size_t trial = 0;
  std::string message;  // carries serialized inputs and expected/actual values
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<SuiteFailure> failures;
  double wall_seconds = 0;

  bool ok() const { return failures.empty(); }
  std::string render() const;
};

/// Per-trial observer, e.g. for "TRIAL k PASS" lines.
using TrialLogger = std::function<void(std::size_t, bool)>;

/// Named property suites: "closure", "robustness", "oracle", "cutpoint".
/// Each trial is regenerated from (seed, trial index) only.
SuiteReport run_suite(const std::string& name, std::size_t trials, std::uint64_t seed,
                      const TrialLogger& log = {});

/// Single replayable trial; returns an empty string on pass, otherwise
/// the failure message.  Exposed so reports can be replayed precisely.
std::string run_trial(const std::string& suite, std::uint64_t seed, std::size_t trial);

} // namespace wqa

#endif
