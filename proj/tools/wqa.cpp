// wqa: evaluate, compose and analyze weighted automata from the command line.

#include <CLI11.hpp>

#include <iostream>

#include "wqa/closure.hpp"
#include "wqa/cutpoint.hpp"
#include "wqa/determinize.hpp"
#include "wqa/errors.hpp"
#include "wqa/eval.hpp"
#include "wqa/io.hpp"
#include "wqa/robustness.hpp"
#include "wqa/suite.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotClosed = 2;
constexpr int kExitParse = 3;
constexpr int kExitPrecondition = 4;

std::string format_steps(const std::vector<wqa::WitnessStep>& steps,
                         const wqa::WeightedAutomaton& aut) {
  std::string out;
  for (const auto& s : steps) {
    if (!out.empty()) out += "  ";
    out += "q" + std::to_string(s.state) + " -" + aut.alphabet[s.sym] + ":" +
           s.weight.str() + "->";
  }
  return out;
}

wqa::WeightedAutomaton load_valid(const std::string& path) {
  wqa::WeightedAutomaton aut = wqa::load_automaton(path);
  wqa::require_valid(aut);
  return aut;
}

int run(int argc, char** argv) {
  CLI::App app{"exact toolkit for weighted automata over finite and infinite words"};
  app.require_subcommand(1);

  std::string aut_path, aut2_path, out_path, word, op, by, eta, epsilon, suite;
  std::size_t trials = 100;
  std::uint64_t seed = 1;

  auto* c_eval = app.add_subcommand("eval", "evaluate an automaton on a word");
  c_eval->add_option("automaton", aut_path)->required();
  c_eval->add_option("--word", word, "word literal; '|' separates prefix from period")
      ->required();

  auto* c_compose = app.add_subcommand("compose", "combine two automata");
  c_compose->add_option("--op", op, "max, min or sum")->required();
  c_compose->add_option("automaton1", aut_path)->required();
  c_compose->add_option("automaton2", aut2_path)->required();
  c_compose->add_option("-o,--output", out_path)->required();

  auto* c_comp = app.add_subcommand("complement", "complement (1 - L)");
  c_comp->add_option("automaton", aut_path)->required();
  c_comp->add_option("-o,--output", out_path)->required();

  auto* c_shift = app.add_subcommand("shift", "shift the language by a constant");
  c_shift->add_option("--by", by)->required();
  c_shift->add_option("automaton", aut_path)->required();
  c_shift->add_option("-o,--output", out_path)->required();

  auto* c_scale = app.add_subcommand("scale", "scale the language by a constant >= 0");
  c_scale->add_option("--by", by)->required();
  c_scale->add_option("automaton", aut_path)->required();
  c_scale->add_option("-o,--output", out_path)->required();

  auto* c_det = app.add_subcommand("determinize", "determinize (liminf, last, max, sup)");
  c_det->add_option("automaton", aut_path)->required();
  c_det->add_option("-o,--output", out_path)->required();

  auto* c_bool = app.add_subcommand("booleanize", "reduce [0,1] limavg weights to {0,1}");
  c_bool->add_option("automaton", aut_path)->required();
  c_bool->add_option("-o,--output", out_path)->required();

  auto* c_cut = app.add_subcommand("cutpoint", "extract the cut-point Buchi automaton");
  c_cut->add_option("automaton", aut_path)->required();
  c_cut->add_option("--eta", eta)->required();
  c_cut->add_option("--epsilon", epsilon, "isolation margin (discounted sum only)");
  c_cut->add_option("-o,--output", out_path)->required();

  auto* c_member = app.add_subcommand("member", "Buchi membership of a lasso word");
  c_member->add_option("automaton", aut_path)->required();
  c_member->add_option("--word", word)->required();

  auto* c_check = app.add_subcommand("check", "run a seeded property suite");
  c_check->add_option("--suite", suite, "closure, robustness, oracle, cutpoint")->required();
  c_check->add_option("--trials", trials);
  c_check->add_option("--seed", seed);

  auto* c_dot = app.add_subcommand("dot", "print the automaton as a DOT digraph");
  c_dot->add_option("automaton", aut_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (c_eval->parsed()) {
    wqa::WeightedAutomaton aut = load_valid(aut_path);
    auto parsed = wqa::parse_word(word);
    wqa::EvalResult res;
    if (auto* lasso = std::get_if<wqa::LassoWord>(&parsed))
      res = wqa::eval_lasso(aut, *lasso);
    else
      res = wqa::eval_finite(aut, std::get<wqa::FiniteWord>(parsed));
    std::cout << res.value.str() << "\n";
    std::cout << "stem:  " << format_steps(res.witness.stem, aut) << "\n";
    if (!res.witness.cycle.empty())
      std::cout << "cycle: " << format_steps(res.witness.cycle, aut) << "\n";
    return kExitOk;
  }

  if (c_compose->parsed()) {
    wqa::WeightedAutomaton a1 = load_valid(aut_path);
    wqa::WeightedAutomaton a2 = load_valid(aut2_path);
    wqa::WeightedAutomaton out;
    if (op == "max")
      out = wqa::op_max(a1, a2);
    else if (op == "min")
      out = wqa::op_min(a1, a2);
    else if (op == "sum")
      out = wqa::op_sum(a1, a2);
    else
      throw wqa::PreconditionError("unknown --op '" + op + "', expected max, min or sum");
    std::cout << out.provenance << "\n";
    wqa::save_automaton(out, out_path);
    return kExitOk;
  }

  if (c_comp->parsed()) {
    wqa::WeightedAutomaton out = wqa::complement(load_valid(aut_path));
    std::cout << out.provenance << "\n";
    wqa::save_automaton(out, out_path);
    return kExitOk;
  }

  if (c_shift->parsed() || c_scale->parsed()) {
    wqa::WeightedAutomaton aut = load_valid(aut_path);
    wqa::Rational c = wqa::Rational::parse(by);
    wqa::WeightedAutomaton out = c_shift->parsed() ? wqa::shift(aut, c) : wqa::scale(aut, c);
    std::cout << out.provenance << "\n";
    wqa::save_automaton(out, out_path);
    return kExitOk;
  }

  if (c_det->parsed()) {
    wqa::WeightedAutomaton aut = load_valid(aut_path);
    wqa::WeightedAutomaton out;
    switch (aut.valuefn.tag) {
      case wqa::ValTag::LimInf: out = wqa::determinize_liminf(aut); break;
      case wqa::ValTag::Last:
      case wqa::ValTag::Max:
      case wqa::ValTag::Sup: out = wqa::determinize_subset_max(aut); break;
      default:
        throw wqa::PreconditionError("determinization not available for " +
                                     aut.valuefn.name());
    }
    std::cout << out.provenance << "\n";
    wqa::save_automaton(out, out_path);
    return kExitOk;
  }

  if (c_bool->parsed()) {
    auto res = wqa::booleanize_limavg(load_valid(aut_path));
    std::cout << res.automaton.provenance << "\n";
    wqa::save_automaton(res.automaton, out_path);
    return kExitOk;
  }

  if (c_cut->parsed()) {
    wqa::WeightedAutomaton aut = load_valid(aut_path);
    wqa::Rational e = wqa::Rational::parse(eta);
    wqa::BuchiAutomaton buchi;
    if (aut.valuefn.tag == wqa::ValTag::LimAvg) {
      buchi = wqa::extract_dbw_limavg(aut, e);
    } else if (aut.valuefn.tag == wqa::ValTag::Disc) {
      if (epsilon.empty())
        throw wqa::PreconditionError("discounted-sum extraction needs --epsilon");
      buchi = wqa::extract_nbw_disc(aut, e, wqa::Rational::parse(epsilon));
    } else {
      throw wqa::PreconditionError("cut-point extraction covers limavg and disc automata");
    }
    std::cout << buchi.aut.provenance << "\n";
    wqa::save_automaton(buchi.aut, out_path);
    return kExitOk;
  }

  if (c_member->parsed()) {
    wqa::BuchiAutomaton buchi(load_valid(aut_path));
    std::cout << (wqa::buchi_member(buchi, wqa::parse_lasso(word)) ? "true" : "false")
              << "\n";
    return kExitOk;
  }

  if (c_check->parsed()) {
    wqa::SuiteReport report;
    try {
      report = wqa::run_suite(suite, trials, seed, [](std::size_t k, bool pass) {
        std::cout << "TRIAL " << k << " " << (pass ? "PASS" : "FAIL") << "\n";
      });
    } catch (const wqa::PreconditionError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    std::cout << report.render();
    return report.ok() ? kExitOk : kExitPrecondition;
  }

  if (c_dot->parsed()) {
    std::cout << wqa::to_dot(wqa::load_automaton(aut_path));
    return kExitOk;
  }

  return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const wqa::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const wqa::ClosedUnderOpViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotClosed;
  } catch (const wqa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
