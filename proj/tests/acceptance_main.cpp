// Acceptance battery: one line per criterion, exact rational comparisons
// throughout.  Exits nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "wqa/closure.hpp"
#include "wqa/cutpoint.hpp"
#include "wqa/determinize.hpp"
#include "wqa/errors.hpp"
#include "wqa/eval.hpp"
#include "wqa/io.hpp"
#include "wqa/robustness.hpp"
#include "wqa/suite.hpp"

#ifndef WQA_FIXTURE_DIR
#define WQA_FIXTURE_DIR "fixtures"
#endif

using namespace wqa;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<void()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string error;
  try {
    body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream line;
  line << "CRITERION " << number << " " << (error.empty() ? "PASS" : "FAIL") << " ["
       << name << "] (" << secs << " s)";
  if (!error.empty()) {
    line << "\n    " << error;
    ++g_failures;
  }
  std::cout << line.str() << std::endl;
}

void expect(bool ok, const std::string& msg) {
  if (!ok) throw Error(msg);
}

ValueFunction vf_of(ValTag tag, Rng& rng) {
  if (tag != ValTag::Disc) return ValueFunction{tag, {}};
  static const std::vector<Rational> lambdas{Rational(1, 2), Rational(1, 3), Rational(2, 3)};
  return ValueFunction::disc(lambdas[rng.below(lambdas.size())]);
}

std::string fixture(const std::string& name) {
  return std::string(WQA_FIXTURE_DIR) + "/" + name;
}

struct BinaryCell {
  ValTag tag;
  bool det;
  ClosureOp op;
  bool exponential;
};

const std::vector<BinaryCell>& binary_cells() {
  static const std::vector<BinaryCell> cells = [] {
    std::vector<BinaryCell> v;
    auto add = [&](ValTag t, bool d, ClosureOp o, bool e = false) { v.push_back({t, d, o, e}); };
    for (bool det : {true, false}) {
      add(ValTag::Max, det, ClosureOp::Max);
      add(ValTag::Max, det, ClosureOp::Min);
      add(ValTag::Max, det, ClosureOp::Sum);
      add(ValTag::Last, det, ClosureOp::Max);
      add(ValTag::Last, det, ClosureOp::Min);
      add(ValTag::Last, det, ClosureOp::Sum);
      add(ValTag::Sum, det, ClosureOp::Sum);
      add(ValTag::Sup, det, ClosureOp::Max);
      add(ValTag::Sup, det, ClosureOp::Min);
      add(ValTag::Sup, det, ClosureOp::Sum);
      add(ValTag::LimInf, det, ClosureOp::Min);
      add(ValTag::Disc, det, ClosureOp::Sum);
    }
    add(ValTag::Sum, false, ClosureOp::Max);
    add(ValTag::LimSup, true, ClosureOp::Max);
    add(ValTag::LimSup, false, ClosureOp::Max);
    add(ValTag::LimSup, true, ClosureOp::Min, true);
    add(ValTag::LimSup, false, ClosureOp::Min);
    add(ValTag::LimSup, true, ClosureOp::Sum, true);
    add(ValTag::LimSup, false, ClosureOp::Sum);
    add(ValTag::LimInf, true, ClosureOp::Max, true);
    add(ValTag::LimInf, false, ClosureOp::Max);
    add(ValTag::LimInf, true, ClosureOp::Sum, true);
    add(ValTag::LimInf, false, ClosureOp::Sum, true);
    add(ValTag::LimAvg, false, ClosureOp::Max);
    add(ValTag::Disc, false, ClosureOp::Max);
    return v;
  }();
  return cells;
}

void check_cell(const BinaryCell& cell, int pairs, int words_per_pair, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(seed);
  for (int i = 0; i < pairs; ++i) {
    AutomatonSpec spec;
    spec.deterministic = cell.det;
    spec.valuefn = vf_of(cell.tag, rng);
    if (cell.exponential) {
      spec.num_states = 2 + static_cast<int>(rng.below(2));
      spec.num_symbols = 2;
      spec.weights = {Rational(0), Rational(1)};
    } else {
      spec.num_states = 2 + static_cast<int>(rng.below(4));
      spec.num_symbols = 2 + static_cast<int>(rng.below(2));
      spec.weights = {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)};
    }
    auto a1 = random_automaton(rng, spec);
    auto a2 = random_automaton(rng, spec);
    WeightedAutomaton composed;
    switch (cell.op) {
      case ClosureOp::Max: composed = op_max(a1, a2); break;
      case ClosureOp::Min: composed = op_min(a1, a2); break;
      case ClosureOp::Sum: composed = op_sum(a1, a2); break;
      default: throw Error("not a binary cell");
    }
    const bool finite = spec.valuefn.finite_words();
    for (int k = 0; k < words_per_pair; ++k) {
      Rational lhs, r1, r2;
      std::string wstr;
      if (finite) {
        FiniteWord w = random_finite(rng, a1.alphabet, 8);
        wstr = w.str();
        lhs = eval_finite(composed, w).value;
        r1 = eval_finite(a1, w).value;
        r2 = eval_finite(a2, w).value;
      } else {
        LassoWord w = random_lasso(rng, a1.alphabet, 8);
        wstr = w.str();
        lhs = eval_lasso(composed, w).value;
        r1 = eval_lasso(a1, w).value;
        r2 = eval_lasso(a2, w).value;
      }
      Rational rhs = cell.op == ClosureOp::Max   ? max(r1, r2)
                     : cell.op == ClosureOp::Min ? min(r1, r2)
                                                 : r1 + r2;
      expect(lhs == rhs, "pointwise law broken for " +
                             AutomatonClass{cell.tag, cell.det}.name() + " " +
                             to_string(cell.op) + " on word '" + wstr + "': got " +
                             lhs.str() + ", want " + rhs.str());
    }
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  expect(secs < 60.0, "cell " + AutomatonClass{cell.tag, cell.det}.name() + " " +
                          to_string(cell.op) + " exceeded 60 s (" + std::to_string(secs) +
                          ")");
}

void criterion1() {
  std::uint64_t seed = 20240801;
  for (const auto& cell : binary_cells()) check_cell(cell, 200, 20, seed++);
}

void criterion2() {
  Rng rng(20240802);
  // Cheap complements: exact identity plus structural involution.
  struct Cheap { ValTag tag; };
  for (ValTag tag : {ValTag::Disc, ValTag::Sum, ValTag::Last}) {
    int words_checked = 0;
    for (int i = 0; i < 15; ++i) {
      AutomatonSpec spec;
      spec.num_states = 1 + static_cast<int>(rng.below(5));
      spec.num_symbols = 2;
      spec.deterministic = true;
      spec.weights = {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)};
      spec.valuefn = vf_of(tag, rng);
      auto a = random_automaton(rng, spec);
      auto comp = complement(a);
      auto twice = complement(comp);
      for (int k = 0; k < 8; ++k, ++words_checked) {
        if (tag == ValTag::Disc) {
          LassoWord w = random_lasso(rng, a.alphabet, 8);
          Rational v = eval_lasso(a, w).value;
          expect(v + eval_lasso(comp, w).value == Rational(1), "disc complement identity");
          expect(eval_lasso(twice, w).value == v, "disc complement involution");
        } else {
          FiniteWord w = random_finite(rng, a.alphabet, 8);
          Rational v = eval_finite(a, w).value;
          expect(v + eval_finite(comp, w).value == Rational(1),
                 "finite complement identity");
          expect(eval_finite(twice, w).value == v, "finite complement involution");
        }
      }
    }
    expect(words_checked >= 100, "not enough complement samples");
  }
  // Nondeterministic Last routes through the subset construction.
  for (int i = 0; i < 12; ++i) {
    AutomatonSpec spec;
    spec.num_states = 1 + static_cast<int>(rng.below(4));
    spec.num_symbols = 2;
    spec.deterministic = false;
    spec.weights = {Rational(0), Rational(1, 2), Rational(1)};
    spec.valuefn = ValueFunction::last();
    auto a = random_automaton(rng, spec);
    auto comp = complement(a);
    for (int k = 0; k < 10; ++k) {
      FiniteWord w = random_finite(rng, a.alphabet, 8);
      expect(eval_finite(a, w).value + eval_finite(comp, w).value == Rational(1),
             "nondet last complement identity");
    }
  }

  // The Buchi complementation path, and with it the pointwise involution
  // 1 - L^c = L.
  auto t0 = std::chrono::steady_clock::now();
  int words_checked = 0;
  for (int i = 0; i < 12; ++i) {
    AutomatonSpec spec;
    spec.num_states = 2 + static_cast<int>(rng.below(3));  // up to 4
    spec.num_symbols = 2;
    spec.deterministic = false;
    spec.weights = {Rational(0), Rational(1)};
    spec.valuefn = ValueFunction::limsup();
    auto a = random_automaton(rng, spec);
    auto comp = complement(a);
    for (int k = 0; k < 10; ++k, ++words_checked) {
      LassoWord w = random_lasso(rng, a.alphabet, 8);
      expect(eval_lasso(a, w).value + eval_lasso(comp, w).value == Rational(1),
             "limsup complement identity via Buchi complementation");
    }
  }
  expect(words_checked >= 100, "not enough limsup complement samples");
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  expect(secs < 120.0, "limsup complementation path exceeded 2 min");
}

void criterion3() {
  auto witness = load_automaton(fixture("disc_gap_witness.aut"));
  expect(eval_lasso(witness, parse_lasso("a | b")).value == Rational(5, 6),
         "gap witness a.b^w value");
  expect(eval_lasso(witness, parse_lasso("| a")).value == Rational(5, 2),
         "gap witness a^w value");

  auto maxab = load_automaton(fixture("limavg_max_ab.aut"));
  expect(eval_lasso(maxab, parse_lasso("| a b b")).value == Rational(2, 3),
         "max-composition value on (abb)^w");

  auto la = load_automaton(fixture("limavg_a_counter.aut"));
  auto lb = load_automaton(fixture("limavg_b_counter.aut"));
  for (int k = 1; k <= 4; ++k) {
    LassoWord w;
    for (int i = 0; i < k; ++i) w.period.push_back("a");
    for (int i = 0; i < k; ++i) w.period.push_back("b");
    expect(min(eval_lasso(la, w).value, eval_lasso(lb, w).value) == Rational(1, 2),
           "min composition on equal blocks");
  }
  expect(eval_lasso(la, parse_lasso("b b a | a")).value == Rational(1), "counter tail a");
  expect(eval_lasso(la, parse_lasso("a a | b")).value == Rational(0), "counter tail b");
}

void criterion4() {
  Rng rng(20240804);
  static const std::vector<ValTag> tags{ValTag::Sup, ValTag::LimSup, ValTag::LimInf,
                                        ValTag::LimAvg, ValTag::Disc};
  for (ValTag tag : tags) {
    for (int i = 0; i < 200; ++i) {
      AutomatonSpec spec;
      spec.num_states = 1 + static_cast<int>(rng.below(4));
      spec.num_symbols = 2;
      spec.deterministic = rng.coin();
      spec.weights = {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)};
      spec.valuefn = vf_of(tag, rng);
      auto aut = random_automaton(rng, spec);
      LassoWord w = random_lasso(rng, aut.alphabet, 8);
      Rational fast = eval_lasso(aut, w).value;
      Rational slow = oracle_eval(aut, w);
      expect(fast == slow, "oracle disagreement (" + aut.valuefn.name() + "): " +
                               fast.str() + " vs " + slow.str() + " on '" + w.str() + "'");
    }
    // Exhaustive short lassos on small automata.
    auto words = all_lassos({"a", "b"}, 5);
    for (int i = 0; i < 6; ++i) {
      AutomatonSpec spec;
      spec.num_states = 1 + static_cast<int>(rng.below(2));
      spec.num_symbols = 2;
      spec.deterministic = rng.coin();
      spec.weights = {Rational(0), Rational(1, 2), Rational(1)};
      spec.valuefn = vf_of(tag, rng);
      auto aut = random_automaton(rng, spec);
      for (const auto& w : words)
        expect(eval_lasso(aut, w).value == oracle_eval(aut, w),
               "exhaustive oracle disagreement (" + aut.valuefn.name() + ")");
    }
  }
}

void criterion5() {
  Rng rng(20240805);
  static const std::vector<Rational> pool{Rational(0),    Rational(1, 4), Rational(1, 3),
                                          Rational(1, 2), Rational(2, 3), Rational(3, 4),
                                          Rational(1)};
  for (int i = 0; i < 100; ++i) {
    AutomatonSpec spec;
    spec.num_states = 1 + static_cast<int>(rng.below(3));
    spec.num_symbols = 2;
    spec.deterministic = rng.coin();
    spec.weights = pool;
    spec.valuefn = ValueFunction::limavg();
    auto aut = random_automaton(rng, spec);
    auto res = booleanize_limavg(aut);
    expect(res.automaton.num_states == aut.num_states * res.certificate.n_a,
           "state count must be n * n_A");
    if (is_deterministic(aut))
      expect(is_deterministic(res.automaton), "determinism must be preserved");
    for (int k = 0; k < 20; ++k) {
      LassoWord w = random_lasso(rng, aut.alphabet, 8);
      expect(eval_lasso(aut, w).value == eval_lasso(res.automaton, w).value,
             "booleanization changed the value on '" + w.str() + "'");
    }
  }
}

void criterion6() {
  Rng rng(20240806);
  // Deterministic limit average.
  int instances = 0;
  while (instances < 50) {
    AutomatonSpec spec;
    spec.num_states = 1 + static_cast<int>(rng.below(5));
    spec.num_symbols = 2;
    spec.deterministic = true;
    spec.weights = {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)};
    spec.valuefn = ValueFunction::limavg();
    auto aut = random_automaton(rng, spec);
    auto ivs = limavg_scc_intervals(aut);
    Rational top(0);
    for (const auto& iv : ivs)
      if (iv.reachable) top = max(top, iv.max_mean);
    std::vector<Rational> candidates{top + Rational(1, 7), Rational(-1, 7), Rational(5, 12)};
    Rational eta = candidates[instances % candidates.size()];
    if (!limavg_isolation_check(aut, eta).isolated) continue;
    ++instances;
    auto dbw = extract_dbw_limavg(aut, eta);
    for (int k = 0; k < 100; ++k) {
      LassoWord w = random_lasso(rng, aut.alphabet, 8);
      expect(buchi_member(dbw, w) == cutpoint_member(aut, w, eta),
             "limavg cut-point membership mismatch at eta " + eta.str());
    }
  }

  // Discounted sum with a certified margin.
  auto words = all_lassos({"a", "b"}, 4);
  for (int i = 0; i < 12; ++i) {
    AutomatonSpec spec;
    spec.num_states = 1 + static_cast<int>(rng.below(3));
    spec.num_symbols = 2;
    spec.deterministic = rng.coin();
    spec.weights = {Rational(0), Rational(1)};
    spec.valuefn = ValueFunction::disc(Rational(1, 10));
    auto aut = random_automaton(rng, spec);
    Rational eta(1, 2), eps(1, 3);
    auto plan = plan_disc_unfolding(aut, eps);
    expect(plan.tail_bound < eps, "tail bound must be below epsilon");
    if (plan.depth > 0) {
      Rational prev = plan.tail_bound / aut.valuefn.lambda;
      expect(prev >= eps, "unfolding depth must be minimal");
    }
    auto nbw = extract_nbw_disc(aut, eta, eps);
    for (const auto& w : words)
      expect(buchi_member(nbw, w) == cutpoint_member(aut, w, eta),
             "disc cut-point membership mismatch");
  }
}

void criterion7() {
  Rng rng(20240807);
  static const std::vector<ValTag> tags{ValTag::Sup, ValTag::LimSup, ValTag::LimInf,
                                        ValTag::LimAvg, ValTag::Disc};
  for (ValTag tag : tags) {
    for (int i = 0; i < 100; ++i) {
      AutomatonSpec spec;
      spec.num_states = 1 + static_cast<int>(rng.below(4));
      spec.num_symbols = 2;
      spec.deterministic = rng.coin();
      spec.weights = {Rational(0), Rational(1, 2), Rational(1)};
      spec.valuefn = vf_of(tag, rng);
      auto aut = random_automaton(rng, spec);
      Rational eps(1, 1 + static_cast<long>(rng.below(10)));
      std::uint64_t seed = rng.next();
      auto pert = perturb(aut, eps, seed);
      std::vector<LassoWord> words;
      for (int k = 0; k < 10; ++k) words.push_back(random_lasso(rng, aut.alphabet, 8));
      Rational dev = check_robustness(aut, pert, words);
      Rational bound = robustness_bound(aut.valuefn, eps);
      expect(dev <= bound, "deviation " + dev.str() + " above bound " + bound.str());
    }
  }

  // The single-loop disc instance attains the bound exactly.
  Rational lambda(1, 2), eps(1, 8);
  WeightedAutomaton loop;
  loop.alphabet = {"a", "b"};
  loop.num_states = 1;
  loop.initial = 0;
  loop.valuefn = ValueFunction::disc(lambda);
  loop.add_transition(0, "a", 0, Rational(1));
  loop.add_transition(0, "b", 0, Rational(0));
  loop.canonicalize();
  WeightedAutomaton bumped = loop;
  for (auto& t : bumped.transitions)
    if (t.weight == Rational(1)) t.weight += eps;
  bumped.canonicalize();
  std::vector<LassoWord> aw{parse_lasso("| a")};
  expect(check_robustness(loop, bumped, aw) == eps / (Rational(1) - lambda),
         "single-loop deviation must attain epsilon/(1-lambda)");

  // Cut-point stability whenever the margin beats the bound.
  int checked = 0;
  while (checked < 40) {
    AutomatonSpec spec;
    spec.num_states = 1 + static_cast<int>(rng.below(4));
    spec.num_symbols = 2;
    spec.deterministic = true;
    spec.weights = {Rational(0), Rational(1, 2), Rational(1)};
    spec.valuefn = ValueFunction::limavg();
    auto aut = random_automaton(rng, spec);
    auto ivs = limavg_scc_intervals(aut);
    Rational top(0);
    for (const auto& iv : ivs)
      if (iv.reachable) top = max(top, iv.max_mean);
    Rational eta = top + Rational(1, 4);
    auto iso = limavg_isolation_check(aut, eta);
    if (!iso.isolated) continue;
    Rational margin = *iso.margin;
    Rational pe = margin / Rational(2);  // bound(limavg, pe) = pe < margin
    ++checked;
    std::vector<LassoWord> words;
    for (int k = 0; k < 25; ++k) words.push_back(random_lasso(rng, aut.alphabet, 8));
    expect(check_cutpoint_stability(aut, eta, pe, rng.next(), words),
           "cut-point flipped although the margin dominates the bound");
  }
}

void criterion8() {
  struct Cell { ValTag tag; bool det; ClosureOp op; std::string cite; };
  const std::vector<Cell> cells{
      {ValTag::Max, true, ClosureOp::Complement, "Thm 10"},
      {ValTag::Max, false, ClosureOp::Complement, "Thm 10"},
      {ValTag::Sum, true, ClosureOp::Max, "Thm 8"},
      {ValTag::Sum, true, ClosureOp::Min, "Thm 9"},
      {ValTag::Sum, false, ClosureOp::Min, "Thm 9"},
      {ValTag::Sum, false, ClosureOp::Complement, "Thm 10"},
      {ValTag::Sup, true, ClosureOp::Complement, "Thm 19"},
      {ValTag::Sup, false, ClosureOp::Complement, "Thm 19"},
      {ValTag::LimInf, true, ClosureOp::Complement, "Thm 19"},
      {ValTag::LimInf, false, ClosureOp::Complement, "Thm 19"},
      {ValTag::LimSup, true, ClosureOp::Complement, "Thm 19"},
      {ValTag::LimAvg, true, ClosureOp::Max, "Thm 13"},
      {ValTag::LimAvg, true, ClosureOp::Min, "Thm 17"},
      {ValTag::LimAvg, false, ClosureOp::Min, "Thm 17"},
      {ValTag::LimAvg, true, ClosureOp::Complement, "Thm 22"},
      {ValTag::LimAvg, false, ClosureOp::Complement, "Thm 23"},
      {ValTag::LimAvg, true, ClosureOp::Sum, "Thm 29"},
      {ValTag::LimAvg, false, ClosureOp::Sum, "Thm 29"},
      {ValTag::Disc, true, ClosureOp::Max, "Thm 13"},
      {ValTag::Disc, true, ClosureOp::Min, "Thm 18"},
      {ValTag::Disc, false, ClosureOp::Min, "Thm 18"},
      {ValTag::Disc, false, ClosureOp::Complement, "Thm 23"},
  };
  Rng rng(20240808);
  for (const auto& cell : cells) {
    AutomatonSpec spec;
    spec.num_states = 2;
    spec.num_symbols = 2;
    spec.deterministic = cell.det;
    spec.weights = {Rational(0), Rational(1)};
    spec.valuefn = vf_of(cell.tag, rng);
    auto a1 = random_automaton(rng, spec);
    auto a2 = random_automaton(rng, spec);
    bool threw = false;
    try {
      switch (cell.op) {
        case ClosureOp::Max: op_max(a1, a2); break;
        case ClosureOp::Min: op_min(a1, a2); break;
        case ClosureOp::Sum: op_sum(a1, a2); break;
        case ClosureOp::Complement: complement(a1); break;
      }
    } catch (const ClosedUnderOpViolation& e) {
      threw = true;
      expect(e.citation == cell.cite,
             "wrong citation for " + AutomatonClass{cell.tag, cell.det}.name() + " " +
                 to_string(cell.op) + ": " + e.citation + " instead of " + cell.cite);
    }
    expect(threw, "no violation raised for " + AutomatonClass{cell.tag, cell.det}.name() +
                      " " + to_string(cell.op));
  }
}

void criterion9() {
  // Library-level part of the CLI contract: canonical byte-identity of
  // every shipped fixture.  Exit codes and the end-to-end flow are
  // exercised by the cli_e2e script.
  for (const std::string name :
       {"disc_gap_witness.aut", "limavg_a_counter.aut", "limavg_b_counter.aut",
        "limavg_max_ab.aut", "sum_a_counter.aut", "bank_a.aut", "bank_b.aut"}) {
    auto aut = load_automaton(fixture(name));
    expect(validate(aut).ok(), name + " must validate");
    std::string canon = serialize_automaton(aut);
    expect(serialize_automaton(parse_automaton(canon)) == canon,
           name + " canonical round trip must be byte-identical");
  }
  // The check battery itself at a quick scale.
  for (const std::string suite : {"closure", "oracle", "robustness", "cutpoint"}) {
    auto rep = run_suite(suite, 50, 11);
    expect(rep.ok(), "suite " + suite + " reported failures:\n" + rep.render());
  }
}

} // namespace

int main() {
  criterion(1, "closure pointwise laws, 200 pairs x 20 words per closed cell", criterion1);
  criterion(2, "complement identities and involution", criterion2);
  criterion(3, "fixture values reproduced exactly", criterion3);
  criterion(4, "independent oracle equivalence", criterion4);
  criterion(5, "booleanization exactness and shape", criterion5);
  criterion(6, "cut-point extractions match membership", criterion6);
  criterion(7, "robustness bounds and cut-point stability", criterion7);
  criterion(8, "non-closure cells raise with correct citations", criterion8);
  criterion(9, "CLI fixtures round-trip and suites pass", criterion9);

  if (g_failures == 0) {
    std::cout << "ACCEPTANCE: all criteria passed" << std::endl;
    return 0;
  }
  std::cout << "ACCEPTANCE: " << g_failures << " criterion(s) failed" << std::endl;
  return 1;
}
