#include <doctest.h>

#include <functional>
#include <numeric>

#include "wqa/errors.hpp"
#include "wqa/eval.hpp"
#include "wqa/robustness.hpp"
#include "wqa/suite.hpp"

using namespace wqa;

namespace {

WeightedAutomaton one_state(const ValueFunction& vf, Rational wa, Rational wb) {
  WeightedAutomaton aut;
  aut.name = "loop";
  aut.alphabet = {"a", "b"};
  aut.num_states = 1;
  aut.initial = 0;
  aut.valuefn = vf;
  aut.add_transition(0, "a", 0, std::move(wa));
  aut.add_transition(0, "b", 0, std::move(wb));
  aut.canonicalize();
  return aut;
}

WeightedAutomaton a_counter(const ValueFunction& vf) {
  return one_state(vf, Rational(1), Rational(0));
}

/// Exhaustive run enumeration for finite words: the reference for
/// eval_finite.
Rational brute_finite(const WeightedAutomaton& aut, const FiniteWord& word) {
  Rational best;
  bool found = false;
  std::vector<Rational> weights;
  std::function<void(int, std::size_t)> go = [&](int state, std::size_t i) {
    if (i == word.symbols.size()) {
      Rational v = replay_value(aut.valuefn, weights, {});
      if (!found || v > best) best = v;
      found = true;
      return;
    }
    int sym = aut.symbol_index(word.symbols[i]);
    for (const auto& t : aut.transitions) {
      if (t.src != state || t.sym != sym) continue;
      weights.push_back(t.weight);
      go(t.dst, i + 1);
      weights.pop_back();
    }
  };
  go(aut.initial, 0);
  REQUIRE(found);
  return best;
}

} // namespace

TEST_CASE("product graph shape") {
  auto aut = one_state(ValueFunction::limsup(), Rational(1), Rational(0));
  auto p = build_product(aut, LassoWord{{"a"}, {"b"}});
  CHECK(p.graph.num_nodes == 2);
  CHECK(p.graph.edges.size() == 2);
  CHECK(p.next_pos(1) == 1);  // period of length one wraps onto itself

  WeightedAutomaton two;
  two.alphabet = {"a", "b"};
  two.num_states = 2;
  two.initial = 0;
  two.valuefn = ValueFunction::limsup();
  two.add_transition(0, "a", 1, Rational(0));
  two.add_transition(0, "b", 0, Rational(0));
  two.add_transition(1, "a", 1, Rational(0));
  two.add_transition(1, "b", 0, Rational(1));
  two.canonicalize();
  auto q = build_product(two, LassoWord{{}, {"a", "b"}});
  CHECK(q.graph.num_nodes <= 4);
  auto reach = reachable_from(q.graph, q.initial);
  for (int v = 0; v < q.graph.num_nodes; ++v)
    if (reach[v]) CHECK(q.graph.out[v].size() == 1);

  CHECK_THROWS_AS(build_product(two, LassoWord{{}, {"z"}}), PreconditionError);

  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    AutomatonSpec spec;
    spec.num_states = 1 + static_cast<int>(rng.below(4));
    spec.deterministic = rng.coin();
    spec.valuefn = ValueFunction::limsup();
    auto r = random_automaton(rng, spec);
    LassoWord w = random_lasso(rng, r.alphabet, 7);
    auto pg = build_product(r, w);
    CHECK(pg.graph.num_nodes <= r.num_states * static_cast<int>(w.length()));
  }
}

TEST_CASE("discounted evaluation reproduces the gap-witness values") {
  auto witness = boolean_disc_gap_witness(Rational(2, 3));
  CHECK(eval_lasso(witness.automaton, witness.word_aa).value == Rational(5, 2));
  CHECK(eval_lasso(witness.automaton, witness.word_ab).value == Rational(5, 6));
  CHECK(witness.value_aa == Rational(5, 2));
  CHECK(witness.value_ab == Rational(5, 6));
}

TEST_CASE("limavg counter saturates on tails") {
  auto aut = a_counter(ValueFunction::limavg());
  CHECK(eval_lasso(aut, LassoWord{{"b", "a", "b"}, {"a"}}).value == Rational(1));
  CHECK(eval_lasso(aut, LassoWord{{"a", "a", "a"}, {"b"}}).value == Rational(0));
}

TEST_CASE("pointwise min of the two counters on balanced blocks") {
  auto la = a_counter(ValueFunction::limavg());
  auto lb = one_state(ValueFunction::limavg(), Rational(0), Rational(1));
  for (int k = 1; k <= 4; ++k) {
    LassoWord w;
    for (int i = 0; i < k; ++i) w.period.push_back("a");
    for (int i = 0; i < k; ++i) w.period.push_back("b");
    Rational va = eval_lasso(la, w).value;
    Rational vb = eval_lasso(lb, w).value;
    CHECK(min(va, vb) == Rational(1, 2));
  }
}

TEST_CASE("sup takes the best reachable weight") {
  auto aut = one_state(ValueFunction::sup(), Rational(1, 2), Rational(1, 2));
  CHECK(eval_lasso(aut, LassoWord{{}, {"a"}}).value == Rational(1, 2));
}

TEST_CASE("witness soundness across value functions") {
  Rng rng(77);
  static const std::vector<ValTag> tags{ValTag::Sup, ValTag::LimSup, ValTag::LimInf,
                                        ValTag::LimAvg, ValTag::Disc};
  for (int i = 0; i < 150; ++i) {
    AutomatonSpec spec;
    spec.num_states = 1 + static_cast<int>(rng.below(4));
    spec.num_symbols = 2;
    spec.deterministic = rng.coin();
    spec.weights = {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)};
    ValTag tag = tags[i % tags.size()];
    spec.valuefn = tag == ValTag::Disc
                       ? ValueFunction::disc(Rational(1 + static_cast<long>(rng.below(3)), 4))
                       : ValueFunction{tag, {}};
    auto aut = random_automaton(rng, spec);
    LassoWord w = random_lasso(rng, aut.alphabet, 7);
    auto res = eval_lasso(aut, w);
    CHECK(replay_value(aut.valuefn, res.witness.stem_weights(),
                       res.witness.cycle_weights()) == res.value);
  }
}

TEST_CASE("lasso presentation invariance") {
  Rng rng(78);
  static const std::vector<ValTag> tags{ValTag::Sup, ValTag::LimSup, ValTag::LimInf,
                                        ValTag::LimAvg, ValTag::Disc};
  for (int i = 0; i < 100; ++i) {
    AutomatonSpec spec;
    spec.num_states = 1 + static_cast<int>(rng.below(3));
    spec.deterministic = rng.coin();
    spec.weights = {Rational(0), Rational(1, 2), Rational(1)};
    ValTag tag = tags[i % tags.size()];
    spec.valuefn =
        tag == ValTag::Disc ? ValueFunction::disc(Rational(1, 2)) : ValueFunction{tag, {}};
    auto aut = random_automaton(rng, spec);
    LassoWord w = random_lasso(rng, aut.alphabet, 5);
    Rational base = eval_lasso(aut, w).value;

    LassoWord unrolled{w.prefix, w.period};
    for (const auto& s : w.period) unrolled.prefix.push_back(s);
    CHECK(eval_lasso(aut, unrolled).value == base);

    LassoWord doubled{w.prefix, w.period};
    for (const auto& s : w.period) doubled.period.push_back(s);
    CHECK(eval_lasso(aut, doubled).value == base);
  }
}

TEST_CASE("sup grows when the period cycles through heavier edges") {
  // Deterministic automaton: from the state reached after the prefix,
  // appending another cycle word that visits a weight above the current
  // value can only raise the sup.
  WeightedAutomaton aut;
  aut.alphabet = {"a", "b"};
  aut.num_states = 2;
  aut.initial = 0;
  aut.valuefn = ValueFunction::sup();
  aut.add_transition(0, "a", 0, Rational(1, 4));
  aut.add_transition(0, "b", 1, Rational(1, 2));
  aut.add_transition(1, "a", 0, Rational(1));
  aut.add_transition(1, "b", 1, Rational(0));
  aut.canonicalize();
  LassoWord small{{}, {"a"}};
  LassoWord bigger{{}, {"a", "b", "a"}};  // both label cycles at state 0
  Rational v1 = eval_lasso(aut, small).value;
  Rational v2 = eval_lasso(aut, bigger).value;
  CHECK(v1 == Rational(1, 4));
  CHECK(v2 == Rational(1));
  CHECK(v1 <= v2);
}

TEST_CASE("pointwise lattice identities on witness runs") {
  Rng rng(79);
  for (int i = 0; i < 60; ++i) {
    AutomatonSpec spec;
    spec.num_states = 1 + static_cast<int>(rng.below(3));
    spec.deterministic = rng.coin();
    spec.weights = {Rational(0), Rational(1, 2), Rational(1)};
    spec.valuefn = i % 2 == 0 ? ValueFunction::limsup() : ValueFunction::liminf();
    auto a1 = random_automaton(rng, spec);
    auto a2 = random_automaton(rng, spec);
    LassoWord w = random_lasso(rng, a1.alphabet, 5);
    auto r1 = eval_lasso(a1, w);
    auto r2 = eval_lasso(a2, w);

    // Align the two witness runs on a common stem and period.
    auto s1 = r1.witness.stem_weights(), c1 = r1.witness.cycle_weights();
    auto s2 = r2.witness.stem_weights(), c2 = r2.witness.cycle_weights();
    std::size_t stem = std::max(s1.size(), s2.size());
    std::size_t period = std::lcm(c1.size(), c2.size());
    auto at = [](const std::vector<Rational>& s, const std::vector<Rational>& c,
                 std::size_t i) {
      return i < s.size() ? s[i] : c[(i - s.size()) % c.size()];
    };
    std::vector<Rational> ps, pc;
    for (std::size_t k = 0; k < stem; ++k)
      ps.push_back(i % 2 == 0 ? max(at(s1, c1, k), at(s2, c2, k))
                              : min(at(s1, c1, k), at(s2, c2, k)));
    for (std::size_t k = stem; k < stem + period; ++k)
      pc.push_back(i % 2 == 0 ? max(at(s1, c1, k), at(s2, c2, k))
                              : min(at(s1, c1, k), at(s2, c2, k)));
    if (i % 2 == 0) {
      Rational lhs = replay_value(ValueFunction::limsup(), ps, pc);
      CHECK(lhs == max(r1.value, r2.value));
    } else {
      Rational lhs = replay_value(ValueFunction::liminf(), ps, pc);
      CHECK(lhs == min(r1.value, r2.value));
    }
  }
}

TEST_CASE("finite words: examples and brute force") {
  WeightedAutomaton counter;
  counter.alphabet = {"a", "b"};
  counter.num_states = 1;
  counter.initial = 0;
  counter.valuefn = ValueFunction::sum();
  counter.add_transition(0, "a", 0, Rational(1));
  counter.add_transition(0, "b", 0, Rational(0));
  counter.canonicalize();
  CHECK(eval_finite(counter, FiniteWord{{"a", "a", "b"}}).value == Rational(2));

  WeightedAutomaton chain;
  chain.alphabet = {"x"};
  chain.num_states = 4;
  chain.initial = 0;
  chain.valuefn = ValueFunction::max_fn();
  chain.add_transition(0, "x", 1, Rational(0));
  chain.add_transition(1, "x", 2, Rational(3));
  chain.add_transition(2, "x", 3, Rational(1));
  chain.add_transition(3, "x", 3, Rational(0));
  chain.canonicalize();
  CHECK(eval_finite(chain, FiniteWord{{"x", "x", "x"}}).value == Rational(3));

  CHECK_THROWS_AS(eval_finite(counter, FiniteWord{{}}), PreconditionError);
  CHECK_THROWS_AS(eval_lasso(counter, LassoWord{{}, {"a"}}), PreconditionError);
  CHECK_THROWS_AS(
      eval_finite(one_state(ValueFunction::limsup(), Rational(0), Rational(1)),
                  FiniteWord{{"a"}}),
      PreconditionError);

  Rng rng(80);
  static const std::vector<ValTag> tags{ValTag::Last, ValTag::Max, ValTag::Sum};
  for (int i = 0; i < 120; ++i) {
    AutomatonSpec spec;
    spec.num_states = 1 + static_cast<int>(rng.below(4));
    spec.deterministic = rng.coin();
    spec.weights = {Rational(-1), Rational(0), Rational(1, 2), Rational(1)};
    spec.valuefn = ValueFunction{tags[i % tags.size()], {}};
    auto aut = random_automaton(rng, spec);
    FiniteWord w = random_finite(rng, aut.alphabet, 6);
    auto res = eval_finite(aut, w);
    CHECK(res.value == brute_finite(aut, w));
    CHECK(replay_value(aut.valuefn, res.witness.stem_weights(), {}) == res.value);
  }
}

TEST_CASE("policy iteration basics") {
  Digraph g;
  g.num_nodes = 1;
  g.add_edge(0, 0, Rational(1));
  g.finalize();
  CHECK(disc_policy_iteration(g, Rational(1, 2), 0).value == Rational(2));

  Digraph choice;
  choice.num_nodes = 1;
  choice.add_edge(0, 0, Rational(1));
  choice.add_edge(0, 0, Rational(0));
  choice.finalize();
  auto r = disc_policy_iteration(choice, Rational(1, 2), 0);
  CHECK(r.value == Rational(2));
  CHECK(r.policy[0] == 0);

  CHECK_THROWS_AS(disc_policy_iteration(g, Rational(2), 0), PreconditionError);
}

TEST_CASE("oracle agreement") {
  auto witness = boolean_disc_gap_witness(Rational(2, 3));
  CHECK(oracle_eval(witness.automaton, witness.word_aa) == Rational(5, 2));

  auto counter = a_counter(ValueFunction::limavg());
  CHECK(oracle_eval(counter, LassoWord{{}, {"a", "b"}}) == Rational(1, 2));

  Rng rng(81);
  static const std::vector<ValTag> tags{ValTag::Sup, ValTag::LimSup, ValTag::LimInf,
                                        ValTag::LimAvg, ValTag::Disc};
  for (int i = 0; i < 200; ++i) {
    AutomatonSpec spec;
    spec.num_states = 1 + static_cast<int>(rng.below(4));
    spec.deterministic = rng.coin();
    spec.weights = {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)};
    ValTag tag = tags[i % tags.size()];
    spec.valuefn = tag == ValTag::Disc
                       ? ValueFunction::disc(Rational(1 + static_cast<long>(rng.below(3)), 4))
                       : ValueFunction{tag, {}};
    auto aut = random_automaton(rng, spec);
    LassoWord w = random_lasso(rng, aut.alphabet, 6);
    CHECK(eval_lasso(aut, w).value == oracle_eval(aut, w));
  }

  OracleConfig tiny;
  tiny.max_nodes = 1;
  CHECK_THROWS_AS(oracle_eval(counter, LassoWord{{}, {"a", "b"}}, tiny), CapExceeded);
}

TEST_CASE("discount tail bound holds along the witness") {
  Rng rng(82);
  for (int i = 0; i < 40; ++i) {
    AutomatonSpec spec;
    spec.num_states = 1 + static_cast<int>(rng.below(3));
    spec.deterministic = rng.coin();
    spec.weights = {Rational(0), Rational(1, 2), Rational(1)};
    Rational lambda(1 + static_cast<long>(rng.below(3)), 4);
    spec.valuefn = ValueFunction::disc(lambda);
    auto aut = random_automaton(rng, spec);
    LassoWord w = random_lasso(rng, aut.alphabet, 5);
    auto res = eval_lasso(aut, w);

    Rational v_abs;
    for (const auto& t : aut.transitions) v_abs = max(v_abs, t.weight.abs());
    auto stem = res.witness.stem_weights();
    auto cyc = res.witness.cycle_weights();
    Rational partial, pw(1);
    Rational u = v_abs / (Rational(1) - lambda);
    for (unsigned n = 0; n < 20; ++n) {
      CHECK((res.value - partial).abs() <= u);
      Rational step = n < stem.size() ? stem[n] : cyc[(n - stem.size()) % cyc.size()];
      partial += pw * step;
      pw *= lambda;
      u *= lambda;
    }
  }
}
