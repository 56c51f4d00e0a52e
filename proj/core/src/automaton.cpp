#include "wqa/automaton.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "wqa/errors.hpp"

namespace wqa {

std::string ValueFunction::name() const {
  switch (tag) {
    case ValTag::Last: return "last";
    case ValTag::Max: return "max";
    case ValTag::Sum: return "sum";
    case ValTag::Sup: return "sup";
    case ValTag::LimSup: return "limsup";
    case ValTag::LimInf: return "liminf";
    case ValTag::LimAvg: return "limavg";
    case ValTag::Disc: return "disc " + lambda.str();
  }
  return "?";
}

int WeightedAutomaton::symbol_index(std::string_view sym) const {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == sym) return static_cast<int>(i);
  return -1;
}

void WeightedAutomaton::add_transition(int src, std::string_view sym, int dst, Rational w) {
  int s = symbol_index(sym);
  if (s < 0) throw PreconditionError("unknown symbol '" + std::string(sym) + "'");
  transitions.push_back({src, s, dst, std::move(w)});
}

void WeightedAutomaton::add_transition(int src, int sym, int dst, Rational w) {
  transitions.push_back({src, sym, dst, std::move(w)});
}

void WeightedAutomaton::canonicalize() {
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
}

std::vector<int> WeightedAutomaton::transitions_from(int state, int sym) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < transitions.size(); ++i)
    if (transitions[i].src == state && transitions[i].sym == sym)
      out.push_back(static_cast<int>(i));
  return out;
}

std::string LassoWord::str() const {
  std::string s;
  for (const auto& x : prefix) { if (!s.empty()) s += ' '; s += x; }
  s += s.empty() ? "|" : " |";
  for (const auto& x : period) { s += ' '; s += x; }
  return s;
}

std::string FiniteWord::str() const {
  std::string s;
  for (const auto& x : symbols) { if (!s.empty()) s += ' '; s += x; }
  return s;
}

std::vector<std::string> ValidationReport::problems() const {
  std::vector<std::string> out = structural;
  for (auto [q, s] : missing)
    out.push_back("no transition from state " + std::to_string(q) +
                  " on symbol #" + std::to_string(s));
  if (!lambda_ok) out.push_back("discount factor outside (0, 1)");
  return out;
}

ValidationReport validate(const WeightedAutomaton& aut) {
  ValidationReport rep;
  if (aut.num_states <= 0) rep.structural.push_back("automaton has no states");
  if (aut.alphabet.empty()) rep.structural.push_back("empty alphabet");
  {
    std::set<std::string> seen;
    for (const auto& s : aut.alphabet)
      if (!seen.insert(s).second)
        rep.structural.push_back("duplicate alphabet symbol '" + s + "'");
  }
  if (aut.initial < 0 || aut.initial >= aut.num_states)
    rep.structural.push_back("initial state out of range");
  for (const auto& t : aut.transitions) {
    if (t.src < 0 || t.src >= aut.num_states || t.dst < 0 || t.dst >= aut.num_states)
      rep.structural.push_back("transition state index out of range");
    if (t.sym < 0 || t.sym >= static_cast<int>(aut.alphabet.size()))
      rep.structural.push_back("transition symbol index out of range");
  }
  if (!rep.structural.empty()) return rep;

  // Totality and determinism: count (q, sym) successors.
  std::vector<int> fanout(static_cast<std::size_t>(aut.num_states) * aut.alphabet.size(), 0);
  for (const auto& t : aut.transitions)
    ++fanout[static_cast<std::size_t>(t.src) * aut.alphabet.size() + t.sym];
  rep.deterministic = true;
  for (int q = 0; q < aut.num_states; ++q)
    for (std::size_t s = 0; s < aut.alphabet.size(); ++s) {
      int n = fanout[static_cast<std::size_t>(q) * aut.alphabet.size() + s];
      if (n == 0) rep.missing.emplace_back(q, static_cast<int>(s));
      if (n > 1) rep.deterministic = false;
    }

  rep.lambda_ok = aut.valuefn.lambda_in_range();

  // Reachability (informational).
  std::vector<char> seen(aut.num_states, 0);
  std::vector<int> stack{aut.initial};
  seen[aut.initial] = 1;
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (const auto& t : aut.transitions)
      if (t.src == q && !seen[t.dst]) {
        seen[t.dst] = 1;
        stack.push_back(t.dst);
      }
  }
  for (int q = 0; q < aut.num_states; ++q)
    if (!seen[q]) rep.unreachable.push_back(q);
  return rep;
}

void require_valid(const WeightedAutomaton& aut) {
  auto rep = validate(aut);
  if (!rep.ok()) {
    std::string msg = "invalid automaton '" + aut.name + "':";
    for (const auto& p : rep.problems()) msg += " " + p + ";";
    throw PreconditionError(msg);
  }
}

bool is_deterministic(const WeightedAutomaton& aut) {
  auto rep = validate(aut);
  if (!rep.ok()) throw PreconditionError("automaton '" + aut.name + "' is invalid");
  return rep.deterministic;
}

std::vector<Rational> weight_set(const WeightedAutomaton& aut) {
  std::set<Rational> seen;
  for (const auto& t : aut.transitions) seen.insert(t.weight);
  return {seen.begin(), seen.end()};
}

WeightedAutomaton shift(const WeightedAutomaton& aut, const Rational& c) {
  require_valid(aut);
  WeightedAutomaton out = aut;
  out.provenance = "shift by " + c.str();
  if (aut.valuefn.tag == ValTag::Sum || aut.valuefn.tag == ValTag::Disc) {
    // The shift must be counted once, on the first transition only: the
    // fresh copy of the initial state carries it and is never re-entered.
    int copy = out.num_states++;
    for (const auto& t : aut.transitions)
      if (t.src == aut.initial)
        out.transitions.push_back({copy, t.sym, t.dst, t.weight + c});
    out.initial = copy;
  } else {
    for (auto& t : out.transitions) t.weight += c;
  }
  out.canonicalize();
  return out;
}

WeightedAutomaton scale(const WeightedAutomaton& aut, const Rational& c) {
  require_valid(aut);
  if (c < Rational(0)) throw PreconditionError("scale factor must be nonnegative");
  WeightedAutomaton out = aut;
  out.provenance = "scale by " + c.str();
  for (auto& t : out.transitions) t.weight *= c;
  out.canonicalize();
  return out;
}

WeightedAutomaton normalize_parallel(const WeightedAutomaton& aut) {
  WeightedAutomaton out = aut;
  out.transitions.clear();
  std::map<std::tuple<int, int, int>, Rational> best;
  for (const auto& t : aut.transitions) {
    auto key = std::make_tuple(t.src, t.sym, t.dst);
    auto it = best.find(key);
    if (it == best.end() || it->second < t.weight)
      best.insert_or_assign(key, t.weight);
  }
  for (const auto& [key, w] : best)
    out.transitions.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), w});
  out.canonicalize();
  return out;
}

} // namespace wqa
