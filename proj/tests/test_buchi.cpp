#include <doctest.h>

#include "wqa/buchi.hpp"
#include "wqa/closure.hpp"
#include "wqa/errors.hpp"
#include "wqa/eval.hpp"
#include "wqa/suite.hpp"

using namespace wqa;

namespace {

WeightedAutomaton inf_a() {
  // LimSup counter: value 1 iff infinitely many a's.
  WeightedAutomaton aut;
  aut.name = "infa";
  aut.alphabet = {"a", "b"};
  aut.num_states = 1;
  aut.initial = 0;
  aut.valuefn = ValueFunction::limsup();
  aut.add_transition(0, "a", 0, Rational(1));
  aut.add_transition(0, "b", 0, Rational(0));
  aut.canonicalize();
  return aut;
}

BuchiAutomaton random_nbw(Rng& rng, int states) {
  AutomatonSpec spec;
  spec.num_states = states;
  spec.num_symbols = 2;
  spec.deterministic = false;
  spec.weights = {Rational(0), Rational(1)};
  spec.valuefn = ValueFunction::limsup();
  return BuchiAutomaton(random_automaton(rng, spec));
}

} // namespace

TEST_CASE("buchi view rejects non-boolean weights") {
  WeightedAutomaton bad = inf_a();
  bad.transitions[0].weight = Rational(1, 2);
  CHECK_THROWS_AS(BuchiAutomaton{bad}, PreconditionError);
  WeightedAutomaton wrong_tag = inf_a();
  wrong_tag.valuefn = ValueFunction::liminf();
  CHECK_THROWS_AS(BuchiAutomaton{wrong_tag}, PreconditionError);
}

TEST_CASE("threshold slicing") {
  WeightedAutomaton aut = inf_a();
  aut.transitions[0].weight = Rational(1);  // a: 1, b: 0 already

  auto low = threshold_nbw(aut, Rational(-5));
  auto high = threshold_nbw(aut, Rational(7));
  auto at1 = threshold_nbw(aut, Rational(1));
  Rng rng(1);
  for (int i = 0; i < 40; ++i) {
    LassoWord w = random_lasso(rng, aut.alphabet, 6);
    CHECK(buchi_member(low, w));        // every edge accepting
    CHECK(!buchi_member(high, w));      // no edge accepting
    bool has_a = false;
    for (const auto& s : w.period) has_a |= s == "a";
    CHECK(buchi_member(at1, w) == has_a);
    CHECK(buchi_member(at1, w) == (eval_lasso(aut, w).value >= Rational(1)));
  }
}

TEST_CASE("state-acceptance split preserves the language") {
  Rng rng(2);
  for (int i = 0; i < 30; ++i) {
    auto b = random_nbw(rng, 1 + static_cast<int>(rng.below(4)));
    auto split = split_to_state_acceptance(b);
    require_valid(split.aut);
    for (int k = 0; k < 10; ++k) {
      LassoWord w = random_lasso(rng, b.aut.alphabet, 6);
      // Membership via accepting-state weights: rebuild a transition-based
      // view by marking edges out of accepting states... instead compare
      // against an equivalent weight-1-on-incoming encoding.
      WeightedAutomaton enc = split.aut;
      for (auto& t : enc.transitions)
        t.weight = split.accepting[t.dst] ? Rational(1) : Rational(0);
      enc.canonicalize();
      CHECK(buchi_member(BuchiAutomaton(enc), w) == buchi_member(b, w));
    }
  }
}

TEST_CASE("complement of the all-accepting automaton is empty") {
  WeightedAutomaton all = inf_a();
  for (auto& t : all.transitions) t.weight = Rational(1);
  all.canonicalize();
  auto comp = complement_nbw(BuchiAutomaton(all));
  Rng rng(3);
  for (int i = 0; i < 30; ++i)
    CHECK(!buchi_member(comp, random_lasso(rng, all.alphabet, 6)));
}

TEST_CASE("complement of infinitely-many-a's") {
  auto comp = complement_nbw(threshold_nbw(inf_a(), Rational(1)));
  CHECK(!buchi_member(comp, LassoWord{{}, {"a", "b"}}));
  CHECK(buchi_member(comp, LassoWord{{"a"}, {"b"}}));
  CHECK(buchi_member(comp, LassoWord{{}, {"b"}}));
  CHECK(!buchi_member(comp, LassoWord{{"b", "b", "b"}, {"a"}}));
}

TEST_CASE("membership is complemented exactly") {
  Rng rng(4);
  for (int i = 0; i < 25; ++i) {
    auto b = random_nbw(rng, 1 + static_cast<int>(rng.below(4)));
    auto comp = complement_nbw(b);
    for (int k = 0; k < 20; ++k) {
      LassoWord w = random_lasso(rng, b.aut.alphabet, 6);
      CHECK(buchi_member(b, w) != buchi_member(comp, w));
    }
  }
  // Exhaustive short lassos on a handful of automata.
  auto words = all_lassos({"a", "b"}, 5);
  for (int i = 0; i < 5; ++i) {
    auto b = random_nbw(rng, 1 + static_cast<int>(rng.below(3)));
    auto comp = complement_nbw(b);
    for (const auto& w : words) CHECK(buchi_member(b, w) != buchi_member(comp, w));
  }
}

TEST_CASE("complementation respects its input cap") {
  Rng rng(5);
  auto big = random_nbw(rng, 4);
  BuchiConfig cfg;
  cfg.max_input_states = 3;
  CHECK_THROWS_AS(complement_nbw(big, cfg), CapExceeded);
}

TEST_CASE("limsup complement: identity and De Morgan") {
  Rng rng(6);
  AutomatonSpec spec;
  spec.num_symbols = 2;
  spec.deterministic = false;
  spec.valuefn = ValueFunction::limsup();
  for (int i = 0; i < 6; ++i) {
    spec.num_states = 2 + static_cast<int>(rng.below(2));
    spec.weights = i % 2 == 0
                       ? std::vector<Rational>{Rational(0), Rational(1)}
                       : std::vector<Rational>{Rational(0), Rational(1, 2), Rational(1)};
    auto a = random_automaton(rng, spec);
    auto comp = complement(a);
    for (int k = 0; k < 15; ++k) {
      LassoWord w = random_lasso(rng, a.alphabet, 6);
      CHECK(eval_lasso(a, w).value + eval_lasso(comp, w).value == Rational(1));
    }
  }

  // De Morgan: comp(max(A, B)) agrees with min(comp A, comp B) pointwise.
  spec.num_states = 2;
  spec.weights = {Rational(0), Rational(1)};
  auto a = random_automaton(rng, spec);
  auto b = random_automaton(rng, spec);
  auto lhs = complement(op_max(a, b));
  auto rhs = op_min(complement(a), complement(b));
  for (int k = 0; k < 20; ++k) {
    LassoWord w = random_lasso(rng, a.alphabet, 6);
    CHECK(eval_lasso(lhs, w).value == eval_lasso(rhs, w).value);
  }
}
