#include "wqa/suite.hpp"

#include <chrono>
#include <sstream>

#include "wqa/closure.hpp"
#include "wqa/cutpoint.hpp"
#include "wqa/errors.hpp"
#include "wqa/eval.hpp"
#include "wqa/io.hpp"
#include "wqa/robustness.hpp"

namespace wqa {

namespace {

std::vector<std::string> make_alphabet(int n) {
  static const std::vector<std::string> pool{"a", "b", "c", "d", "e", "f"};
  return {pool.begin(), pool.begin() + n};
}

} // namespace

WeightedAutomaton random_automaton(Rng& rng, const AutomatonSpec& spec) {
  WeightedAutomaton aut;
  aut.name = "rand";
  aut.alphabet = make_alphabet(spec.num_symbols);
  aut.num_states = spec.num_states;
  aut.initial = 0;
  aut.valuefn = spec.valuefn;
  for (int q = 0; q < spec.num_states; ++q)
    for (int s = 0; s < spec.num_symbols; ++s) {
      int copies = spec.deterministic ? 1 : 1 + static_cast<int>(rng.below(2));
      for (int c = 0; c < copies; ++c)
        aut.add_transition(q, s, static_cast<int>(rng.below(spec.num_states)),
                           rng.pick(spec.weights));
    }
  aut.canonicalize();
  if (!spec.deterministic && is_deterministic(aut)) {
    // Force a genuine fork on some letter.
    int q = static_cast<int>(rng.below(spec.num_states));
    int s = static_cast<int>(rng.below(spec.num_symbols));
    int have = aut.transitions_from(q, s).front();
    int other_dst = (aut.transitions[have].dst + 1) % spec.num_states;
    aut.add_transition(q, s, other_dst, rng.pick(spec.weights));
    aut.canonicalize();
    if (is_deterministic(aut)) {
      // Same target drawn: fork on the weight instead.
      Rational w = aut.transitions[have].weight;
      for (const auto& cand : spec.weights)
        if (cand != w) {
          aut.add_transition(q, s, other_dst, cand);
          break;
        }
      aut.canonicalize();
    }
  }
  return aut;
}

LassoWord random_lasso(Rng& rng, const std::vector<std::string>& alphabet, int max_len) {
  LassoWord w;
  int total = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len)));
  int period = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(total)));
  for (int i = 0; i < total - period; ++i) w.prefix.push_back(rng.pick(alphabet));
  for (int i = 0; i < period; ++i) w.period.push_back(rng.pick(alphabet));
  return w;
}

FiniteWord random_finite(Rng& rng, const std::vector<std::string>& alphabet, int max_len) {
  FiniteWord w;
  int total = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len)));
  for (int i = 0; i < total; ++i) w.symbols.push_back(rng.pick(alphabet));
  return w;
}

std::vector<LassoWord> all_lassos(const std::vector<std::string>& alphabet, int max_len) {
  std::vector<LassoWord> out;
  std::vector<std::string> buf;
  std::function<void(int, std::function<void()>)> fill = [&](int len,
                                                             std::function<void()> done) {
    if (len == 0) {
      done();
      return;
    }
    for (const auto& s : alphabet) {
      buf.push_back(s);
      fill(len - 1, done);
      buf.pop_back();
    }
  };
  for (int total = 1; total <= max_len; ++total)
    for (int period = 1; period <= total; ++period) {
      int prefix = total - period;
      fill(prefix, [&] {
        std::vector<std::string> pre = buf;
        std::vector<std::string> saved = buf;
        buf.clear();
        fill(period, [&] {
          out.push_back(LassoWord{pre, buf});
        });
        buf = saved;
      });
    }
  return out;
}

std::string SuiteReport::render() const {
  std::ostringstream out;
  out << "suite " << suite << ": " << (trials - failures.size()) << "/" << trials
      << " trials passed, seed " << seed << ", " << wall_seconds << " s\n";
  for (const auto& f : failures)
    out << "FAILURE at trial " << f.trial << " (replay: suite " << suite << ", seed "
        << seed << ", trial " << f.trial << ")\n"
        << f.message << "\n";
  return out.str();
}

namespace {

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  return seed * 0x9e3779b97f4a7c15ULL + trial * 0xbf58476d1ce4e5b9ULL + 1;
}

struct ClosureCell {
  ValTag tag;
  bool deterministic;
  ClosureOp op;
  bool exponential;  // shrink sizes for the bit-product constructions
};

const std::vector<ClosureCell>& closure_cells() {
  static const std::vector<ClosureCell> cells = [] {
    std::vector<ClosureCell> v;
    auto add = [&](ValTag t, bool det, ClosureOp op, bool e = false) {
      v.push_back({t, det, op, e});
    };
    // Finite words.
    for (bool det : {true, false}) {
      add(ValTag::Max, det, ClosureOp::Max);
      add(ValTag::Max, det, ClosureOp::Min);
      add(ValTag::Max, det, ClosureOp::Sum);
      add(ValTag::Last, det, ClosureOp::Max);
      add(ValTag::Last, det, ClosureOp::Min);
      add(ValTag::Last, det, ClosureOp::Complement);
      add(ValTag::Last, det, ClosureOp::Sum);
      add(ValTag::Sum, det, ClosureOp::Sum);
    }
    add(ValTag::Sum, false, ClosureOp::Max);
    add(ValTag::Sum, true, ClosureOp::Complement);
    // Infinite words.
    for (bool det : {true, false}) {
      add(ValTag::Sup, det, ClosureOp::Max);
      add(ValTag::Sup, det, ClosureOp::Min);
      add(ValTag::Sup, det, ClosureOp::Sum);
      add(ValTag::LimInf, det, ClosureOp::Min);
      add(ValTag::LimInf, det, ClosureOp::Sum, true);
      add(ValTag::Disc, det, ClosureOp::Sum);
    }
    add(ValTag::LimInf, true, ClosureOp::Max, true);
    add(ValTag::LimInf, false, ClosureOp::Max);
    add(ValTag::LimSup, true, ClosureOp::Max);
    add(ValTag::LimSup, false, ClosureOp::Max);
    add(ValTag::LimSup, true, ClosureOp::Min, true);
    add(ValTag::LimSup, false, ClosureOp::Min);
    add(ValTag::LimSup, true, ClosureOp::Sum, true);
    add(ValTag::LimSup, false, ClosureOp::Sum);
    add(ValTag::LimSup, false, ClosureOp::Complement, true);
    add(ValTag::LimAvg, false, ClosureOp::Max);
    add(ValTag::Disc, true, ClosureOp::Complement);
    return v;
  }();
  return cells;
}

std::string describe_pair(const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                          const std::string& word, const std::string& expected,
                          const std::string& actual) {
  std::ostringstream out;
  out << "word: " << word << "\nexpected " << expected << ", got " << actual
      << "\n--- input 1 ---\n"
      << serialize_automaton(a1);
  if (!a2.alphabet.empty()) out << "--- input 2 ---\n" << serialize_automaton(a2);
  return out.str();
}

std::string closure_trial(std::uint64_t seed, std::size_t trial) {
  const auto& cells = closure_cells();
  const ClosureCell& cell = cells[trial % cells.size()];
  Rng rng(trial_seed(seed, trial));

  AutomatonSpec spec;
  spec.deterministic = cell.deterministic;
  ValueFunction vf;
  switch (cell.tag) {
    case ValTag::Max: vf = ValueFunction::max_fn(); break;
    case ValTag::Last: vf = ValueFunction::last(); break;
    case ValTag::Sum: vf = ValueFunction::sum(); break;
    case ValTag::Sup: vf = ValueFunction::sup(); break;
    case ValTag::LimSup: vf = ValueFunction::limsup(); break;
    case ValTag::LimInf: vf = ValueFunction::liminf(); break;
    case ValTag::LimAvg: vf = ValueFunction::limavg(); break;
    case ValTag::Disc: {
      static const std::vector<Rational> lambdas{Rational(1, 2), Rational(1, 3),
                                                 Rational(2, 3)};
      vf = ValueFunction::disc(rng.pick(lambdas));
      break;
    }
  }
  spec.valuefn = vf;
  if (cell.exponential) {
    spec.num_states = 2 + static_cast<int>(rng.below(2));
    spec.num_symbols = 2;
    spec.weights = {Rational(0), Rational(1)};
  } else {
    spec.num_states = 2 + static_cast<int>(rng.below(4));
    spec.num_symbols = 2 + static_cast<int>(rng.below(2));
    spec.weights = {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)};
  }
  if (cell.op == ClosureOp::Complement && cell.tag == ValTag::LimSup)
    spec.num_states = 2 + static_cast<int>(rng.below(2));

  WeightedAutomaton a1 = random_automaton(rng, spec);
  a1.name = "a1";
  WeightedAutomaton a2 = random_automaton(rng, spec);
  a2.name = "a2";

  const bool finite = vf.finite_words();
  try {
    WeightedAutomaton composed;
    if (cell.op == ClosureOp::Complement)
      composed = complement(a1);
    else if (cell.op == ClosureOp::Max)
      composed = op_max(a1, a2);
    else if (cell.op == ClosureOp::Min)
      composed = op_min(a1, a2);
    else
      composed = op_sum(a1, a2);

    for (int i = 0; i < 20; ++i) {
      std::string wstr;
      Rational lhs, r1, r2;
      if (finite) {
        FiniteWord w = random_finite(rng, a1.alphabet, 8);
        wstr = w.str();
        lhs = eval_finite(composed, w).value;
        r1 = eval_finite(a1, w).value;
        if (cell.op != ClosureOp::Complement) r2 = eval_finite(a2, w).value;
      } else {
        LassoWord w = random_lasso(rng, a1.alphabet, 8);
        wstr = w.str();
        lhs = eval_lasso(composed, w).value;
        r1 = eval_lasso(a1, w).value;
        if (cell.op != ClosureOp::Complement) r2 = eval_lasso(a2, w).value;
      }
      Rational rhs;
      switch (cell.op) {
        case ClosureOp::Max: rhs = max(r1, r2); break;
        case ClosureOp::Min: rhs = min(r1, r2); break;
        case ClosureOp::Sum: rhs = r1 + r2; break;
        case ClosureOp::Complement: rhs = Rational(1) - r1; break;
      }
      if (lhs != rhs)
        return "closure cell " + AutomatonClass{cell.tag, cell.deterministic}.name() +
               " / " + to_string(cell.op) + " pointwise law broken\n" +
               describe_pair(a1, cell.op == ClosureOp::Complement ? WeightedAutomaton{} : a2,
                             wstr, rhs.str(), lhs.str());
    }
  } catch (const Error& e) {
    return "closure cell " + AutomatonClass{cell.tag, cell.deterministic}.name() + " / " +
           to_string(cell.op) + " raised: " + e.what() + "\n--- input 1 ---\n" +
           serialize_automaton(a1) + "--- input 2 ---\n" + serialize_automaton(a2);
  }
  return {};
}

std::string oracle_trial(std::uint64_t seed, std::size_t trial) {
  Rng rng(trial_seed(seed, trial));
  static const std::vector<ValTag> tags{ValTag::Sup, ValTag::LimSup, ValTag::LimInf,
                                        ValTag::LimAvg, ValTag::Disc};
  ValTag tag = tags[trial % tags.size()];

  AutomatonSpec spec;
  spec.num_states = 1 + static_cast<int>(rng.below(4));
  spec.num_symbols = 2;
  spec.deterministic = rng.coin();
  spec.weights = {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)};
  spec.valuefn = tag == ValTag::Disc
                     ? ValueFunction::disc(Rational(1 + static_cast<long>(rng.below(3)), 4))
                     : ValueFunction{tag, {}};
  WeightedAutomaton aut = random_automaton(rng, spec);

  LassoWord w = random_lasso(rng, aut.alphabet, 6);
  Rational fast = eval_lasso(aut, w).value;
  Rational slow = oracle_eval(aut, w);
  if (fast != slow)
    return "oracle disagreement for " + aut.valuefn.name() + "\n" +
           describe_pair(aut, {}, w.str(), slow.str(), fast.str());
  return {};
}

std::string robustness_trial(std::uint64_t seed, std::size_t trial) {
  Rng rng(trial_seed(seed, trial));
  if (trial % 3 == 2) {
    // Booleanization slice of the robustness properties.
    AutomatonSpec spec;
    spec.num_states = 1 + static_cast<int>(rng.below(3));
    spec.num_symbols = 2;
    spec.deterministic = rng.coin();
    spec.weights = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
    spec.valuefn = ValueFunction::limavg();
    WeightedAutomaton aut = random_automaton(rng, spec);
    auto res = booleanize_limavg(aut);
    if (res.automaton.num_states != aut.num_states * res.certificate.n_a)
      return "booleanization state count off\n" + serialize_automaton(aut);
    if (is_deterministic(aut) && !is_deterministic(res.automaton))
      return "booleanization lost determinism\n" + serialize_automaton(aut);
    for (int i = 0; i < 10; ++i) {
      LassoWord w = random_lasso(rng, aut.alphabet, 6);
      Rational before = eval_lasso(aut, w).value;
      Rational after = eval_lasso(res.automaton, w).value;
      if (before != after)
        return "booleanization changed a value\n" +
               describe_pair(aut, {}, w.str(), before.str(), after.str());
    }
    return {};
  }

  static const std::vector<ValTag> tags{ValTag::Sup, ValTag::LimSup, ValTag::LimInf,
                                        ValTag::LimAvg, ValTag::Disc};
  ValTag tag = tags[trial % tags.size()];
  AutomatonSpec spec;
  spec.num_states = 1 + static_cast<int>(rng.below(4));
  spec.num_symbols = 2;
  spec.deterministic = rng.coin();
  spec.weights = {Rational(0), Rational(1, 2), Rational(1)};
  spec.valuefn = tag == ValTag::Disc ? ValueFunction::disc(Rational(1, 2))
                                     : ValueFunction{tag, {}};
  WeightedAutomaton aut = random_automaton(rng, spec);

  static const std::vector<Rational> epsilons{Rational(0), Rational(1, 10), Rational(1, 4)};
  Rational eps = rng.pick(epsilons);
  std::uint64_t pseed = rng.next();
  WeightedAutomaton pert = perturb(aut, eps, pseed);

  std::vector<LassoWord> words;
  for (int i = 0; i < 10; ++i) words.push_back(random_lasso(rng, aut.alphabet, 6));
  Rational dev = check_robustness(aut, pert, words);
  Rational bound = robustness_bound(aut.valuefn, eps);
  if (dev > bound)
    return "robustness bound exceeded: deviation " + dev.str() + " > bound " + bound.str() +
           " (epsilon " + eps.str() + ", seed " + std::to_string(pseed) + ")\n" +
           serialize_automaton(aut);
  return {};
}

std::string cutpoint_trial(std::uint64_t seed, std::size_t trial) {
  Rng rng(trial_seed(seed, trial));
  if (trial % 2 == 0) {
    // Deterministic limit-average extraction.
    AutomatonSpec spec;
    spec.num_states = 1 + static_cast<int>(rng.below(4));
    spec.num_symbols = 2;
    spec.deterministic = true;
    spec.weights = {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)};
    spec.valuefn = ValueFunction::limavg();
    WeightedAutomaton aut = random_automaton(rng, spec);

    auto intervals = limavg_scc_intervals(aut);
    Rational top(-1000);
    for (const auto& iv : intervals)
      if (iv.reachable) top = max(top, iv.max_mean);
    std::vector<Rational> candidates{top + Rational(1, 7), Rational(-1, 7)};
    Rational eta = candidates[rng.below(candidates.size())];
    auto check = limavg_isolation_check(aut, eta);
    if (!check.isolated) return {};  // below-min candidate may hit an interval; skip
    auto dbw = extract_dbw_limavg(aut, eta);
    for (int i = 0; i < 20; ++i) {
      LassoWord w = random_lasso(rng, aut.alphabet, 6);
      bool member = buchi_member(dbw, w);
      bool expect = cutpoint_member(aut, w, eta);
      if (member != expect)
        return "limavg cut-point DBW disagrees at eta " + eta.str() + "\n" +
               describe_pair(aut, {}, w.str(), expect ? "member" : "non-member",
                             member ? "member" : "non-member");
    }
    return {};
  }

  // Discounted-sum extraction with a certified margin: with weights in
  // {0, 1} and lambda = 1/10, every value is >= 1 or <= 1/9, so eta = 1/2
  // is isolated with margin 1/3.
  AutomatonSpec spec;
  spec.num_states = 1 + static_cast<int>(rng.below(3));
  spec.num_symbols = 2;
  spec.deterministic = rng.coin();
  spec.weights = {Rational(0), Rational(1)};
  spec.valuefn = ValueFunction::disc(Rational(1, 10));
  WeightedAutomaton aut = random_automaton(rng, spec);

  Rational eta(1, 2), eps(1, 3);
  BuchiAutomaton nbw = extract_nbw_disc(aut, eta, eps);
  for (const auto& w : all_lassos(aut.alphabet, 4)) {
    bool member = buchi_member(nbw, w);
    bool expect = cutpoint_member(aut, w, eta);
    if (member != expect)
      return "disc cut-point NBW disagrees at eta " + eta.str() + "\n" +
             describe_pair(aut, {}, w.str(), expect ? "member" : "non-member",
                           member ? "member" : "non-member");
  }
  return {};
}

} // namespace

std::string run_trial(const std::string& suite, std::uint64_t seed, std::size_t trial) {
  if (suite == "closure") return closure_trial(seed, trial);
  if (suite == "oracle") return oracle_trial(seed, trial);
  if (suite == "robustness") return robustness_trial(seed, trial);
  if (suite == "cutpoint") return cutpoint_trial(seed, trial);
  throw PreconditionError("unknown suite '" + suite + "'");
}

SuiteReport run_suite(const std::string& name, std::size_t trials, std::uint64_t seed,
                      const TrialLogger& log) {
  SuiteReport report;
  report.suite = name;
  report.seed = seed;
  report.trials = trials;
  auto t0 = std::chrono::steady_clock::now();
  for (std::size_t k = 0; k < trials; ++k) {
    std::string failure = run_trial(name, seed, k);
    if (!failure.empty()) report.failures.push_back({k, failure});
    if (log) log(k, failure.empty());
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

} // namespace wqa
