#include "wqa/robustness.hpp"

#include <algorithm>
#include <numeric>

#include "wqa/errors.hpp"
#include "wqa/eval.hpp"

namespace wqa {

namespace {

// splitmix64: tiny, fully specified, reproducible across platforms.
std::uint64_t mix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace

WeightedAutomaton perturb(const WeightedAutomaton& aut, const Rational& epsilon,
                          std::uint64_t seed) {
  require_valid(aut);
  if (epsilon < Rational(0)) throw PreconditionError("epsilon must be nonnegative");
  WeightedAutomaton out = aut;
  out.name = aut.name + "_pert";
  out.provenance = "perturbation, epsilon " + epsilon.str() + ", seed " + std::to_string(seed);
  std::uint64_t state = seed ^ 0xa0761d6478bd642fULL;
  for (auto& t : out.transitions) {
    long k = static_cast<long>(mix(state) % 129) - 64;  // uniform in [-64, 64]
    t.weight += epsilon * Rational(k, 64);
  }
  out.canonicalize();
  return out;
}

Rational robustness_bound(const ValueFunction& vf, const Rational& epsilon) {
  if (epsilon < Rational(0)) throw PreconditionError("epsilon must be nonnegative");
  if (vf.finite_words())
    throw PreconditionError("robustness bounds cover infinite-word classes only");
  if (vf.tag == ValTag::Disc) {
    if (!vf.lambda_in_range()) throw PreconditionError("discount factor outside (0, 1)");
    return epsilon / (Rational(1) - vf.lambda);
  }
  return epsilon;
}

Rational check_robustness(const WeightedAutomaton& a, const WeightedAutomaton& b,
                          std::span<const LassoWord> words) {
  auto skeleton = [](const WeightedAutomaton& x) {
    std::vector<std::tuple<int, int, int>> sk;
    for (const auto& t : x.transitions) sk.emplace_back(t.src, t.sym, t.dst);
    std::sort(sk.begin(), sk.end());
    return sk;
  };
  if (a.num_states != b.num_states || a.initial != b.initial ||
      a.alphabet != b.alphabet || skeleton(a) != skeleton(b))
    throw PreconditionError("automata do not share a skeleton");

  Rational worst;
  for (const auto& w : words) {
    Rational d = (eval_lasso(a, w).value - eval_lasso(b, w).value).abs();
    worst = max(worst, d);
  }
  return worst;
}

bool check_cutpoint_stability(const WeightedAutomaton& aut, const Rational& eta,
                              const Rational& epsilon, std::uint64_t seed,
                              std::span<const LassoWord> words) {
  WeightedAutomaton pert = perturb(aut, epsilon, seed);
  for (const auto& w : words) {
    bool a = eval_lasso(aut, w).value >= eta;
    bool b = eval_lasso(pert, w).value >= eta;
    if (a != b) return false;
  }
  return true;
}

BooleanizeResult booleanize_limavg(const WeightedAutomaton& aut) {
  if (aut.valuefn.tag != ValTag::LimAvg)
    throw PreconditionError("booleanization applies to limit-average automata");
  require_valid(aut);
  for (const auto& t : aut.transitions)
    if (t.weight < Rational(0) || t.weight > Rational(1))
      throw PreconditionError("booleanization needs weights in [0, 1]");

  // n_a = lcm of the canonical denominators: least n with each weight e/n.
  long n_a = 1;
  for (const auto& t : aut.transitions) {
    long den = t.weight.den_long();
    long g = std::gcd(n_a, den);
    n_a = n_a / g * den;
  }

  BooleanizeResult res;
  res.certificate.n_a = n_a;
  WeightedAutomaton& out = res.automaton;
  out.name = aut.name + "_bool";
  out.provenance = "remainder-tracking booleanization, n = " + std::to_string(n_a);
  out.alphabet = aut.alphabet;
  out.valuefn = ValueFunction::limavg();
  out.num_states = aut.num_states * static_cast<int>(n_a);
  // State (q, i) has index q * n_a + i; remainder i of weight i / n_a.
  out.initial = aut.initial * static_cast<int>(n_a);
  for (const auto& t : aut.transitions) {
    long e = (t.weight * Rational(n_a)).num_long();  // exact integer
    for (long i = 0; i < n_a; ++i) {
      bool carry = i + e >= n_a;
      long j = carry ? i + e - n_a : i + e;
      out.add_transition(static_cast<int>(t.src * n_a + i), t.sym,
                         static_cast<int>(t.dst * n_a + j), Rational(carry ? 1 : 0));
    }
  }
  out.canonicalize();
  return res;
}

DiscGapWitness boolean_disc_gap_witness(const Rational& lambda) {
  if (!(lambda > Rational(0) && lambda < Rational(1)))
    throw PreconditionError("discount factor outside (0, 1)");
  DiscGapWitness w;
  w.automaton.name = "disc_gap_witness";
  w.automaton.alphabet = {"a", "b"};
  w.automaton.num_states = 1;
  w.automaton.initial = 0;
  w.automaton.valuefn = ValueFunction::disc(lambda);
  Rational half_up = (Rational(1) + lambda) / Rational(2);
  w.automaton.add_transition(0, "a", 0, half_up);
  w.automaton.add_transition(0, "b", 0, Rational(0));
  w.automaton.canonicalize();
  w.word_ab = LassoWord{{"a"}, {"b"}};
  w.value_ab = half_up;
  w.word_aa = LassoWord{{}, {"a"}};
  w.value_aa = half_up / (Rational(1) - lambda);
  return w;
}

} // namespace wqa
