#include "wqa/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "wqa/errors.hpp"

namespace wqa {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  for (char c : line) {
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      if (!cur.empty()) toks.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) toks.push_back(std::move(cur));
  return toks;
}

ValueFunction parse_semantics(const std::vector<std::string>& toks, int lineno) {
  if (toks.size() < 2) throw ParseError("semantics needs a tag", lineno);
  const std::string& tag = toks[1];
  if (tag == "disc") {
    if (toks.size() != 3) throw ParseError("disc needs a discount factor", lineno);
    return ValueFunction::disc(Rational::parse(toks[2]));
  }
  if (toks.size() != 2) throw ParseError("unexpected token after semantics tag", lineno);
  if (tag == "last") return ValueFunction::last();
  if (tag == "max") return ValueFunction::max_fn();
  if (tag == "sum") return ValueFunction::sum();
  if (tag == "sup") return ValueFunction::sup();
  if (tag == "limsup") return ValueFunction::limsup();
  if (tag == "liminf") return ValueFunction::liminf();
  if (tag == "limavg") return ValueFunction::limavg();
  throw ParseError("unknown semantics '" + tag + "'", lineno);
}

int parse_int(const std::string& tok, int lineno) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw ParseError("", 0);
    return v;
  } catch (...) {
    throw ParseError("malformed integer '" + tok + "'", lineno);
  }
}

} // namespace

WeightedAutomaton parse_automaton(const std::string& text) {
  WeightedAutomaton aut;
  bool saw_name = false, saw_sem = false, saw_alpha = false, saw_states = false,
       saw_init = false;
  struct RawTrans { int src; std::string sym; int dst; Rational w; int line; };
  std::vector<RawTrans> raw;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0];
    try {
      if (head == "automaton") {
        if (toks.size() != 2) throw ParseError("automaton needs exactly a name", lineno);
        aut.name = toks[1];
        saw_name = true;
      } else if (head == "semantics") {
        aut.valuefn = parse_semantics(toks, lineno);
        saw_sem = true;
      } else if (head == "alphabet") {
        if (toks.size() < 2) throw ParseError("alphabet needs at least one symbol", lineno);
        aut.alphabet.assign(toks.begin() + 1, toks.end());
        for (const auto& s : aut.alphabet)
          if (s.find('|') != std::string::npos)
            throw ParseError("symbol '" + s + "' may not contain '|'", lineno);
        saw_alpha = true;
      } else if (head == "states") {
        if (toks.size() != 2) throw ParseError("states needs a count", lineno);
        aut.num_states = parse_int(toks[1], lineno);
        saw_states = true;
      } else if (head == "initial") {
        if (toks.size() != 2) throw ParseError("initial needs a state index", lineno);
        aut.initial = parse_int(toks[1], lineno);
        saw_init = true;
      } else if (head == "trans") {
        if (toks.size() != 5)
          throw ParseError("trans needs: src sym dst weight", lineno);
        raw.push_back({parse_int(toks[1], lineno), toks[2], parse_int(toks[3], lineno),
                       Rational::parse(toks[4]), lineno});
      } else {
        throw ParseError("unknown directive '" + head + "'", lineno);
      }
    } catch (ParseError&) {
      throw;
    } catch (Error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (!saw_name) throw ParseError("missing 'automaton' line");
  if (!saw_sem) throw ParseError("missing 'semantics' line");
  if (!saw_alpha) throw ParseError("missing 'alphabet' line");
  if (!saw_states) throw ParseError("missing 'states' line");
  if (!saw_init) throw ParseError("missing 'initial' line");
  for (const auto& r : raw) {
    int sym = aut.symbol_index(r.sym);
    if (sym < 0) throw ParseError("unknown symbol '" + r.sym + "'", r.line);
    aut.add_transition(r.src, sym, r.dst, r.w);
  }
  aut.canonicalize();
  return aut;
}

WeightedAutomaton load_automaton(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_automaton(buf.str());
}

std::string serialize_automaton(const WeightedAutomaton& aut) {
  WeightedAutomaton canon = aut;
  canon.canonicalize();
  std::ostringstream out;
  out << "automaton " << canon.name << "\n";
  out << "semantics " << canon.valuefn.name() << "\n";
  out << "alphabet";
  for (const auto& s : canon.alphabet) out << " " << s;
  out << "\n";
  out << "states " << canon.num_states << "\n";
  out << "initial " << canon.initial << "\n";
  for (const auto& t : canon.transitions)
    out << "trans " << t.src << " " << canon.alphabet[t.sym] << " " << t.dst << " "
        << t.weight.str() << "\n";
  return out.str();
}

void save_automaton(const WeightedAutomaton& aut, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << serialize_automaton(aut);
}

std::variant<FiniteWord, LassoWord> parse_word(const std::string& text) {
  auto toks = tokenize(text);
  auto bar = std::find(toks.begin(), toks.end(), "|");
  if (bar == toks.end()) {
    if (toks.empty()) throw ParseError("empty word literal");
    return FiniteWord{toks};
  }
  LassoWord w;
  w.prefix.assign(toks.begin(), bar);
  w.period.assign(bar + 1, toks.end());
  if (w.period.empty()) throw ParseError("lasso word needs a nonempty period");
  for (const auto& part : {w.prefix, w.period})
    for (const auto& s : part)
      if (s == "|") throw ParseError("more than one '|' in word literal");
  return w;
}

LassoWord parse_lasso(const std::string& text) {
  auto w = parse_word(text);
  if (auto* l = std::get_if<LassoWord>(&w)) return *l;
  throw ParseError("expected a lasso word (use '|' to mark the period)");
}

std::string to_dot(const WeightedAutomaton& aut) {
  bool buchi_view = aut.valuefn.tag == ValTag::LimSup;
  if (buchi_view)
    for (const auto& t : aut.transitions)
      if (t.weight != Rational(0) && t.weight != Rational(1)) {
        buchi_view = false;
        break;
      }

  std::ostringstream out;
  out << "digraph \"" << aut.name << "\" {\n";
  out << "  rankdir=LR;\n";
  out << "  __init [shape=point, label=\"\"];\n";
  for (int q = 0; q < aut.num_states; ++q)
    out << "  q" << q << " [shape=circle, label=\"" << q << "\"];\n";
  out << "  __init -> q" << aut.initial << ";\n";
  for (const auto& t : aut.transitions) {
    out << "  q" << t.src << " -> q" << t.dst << " [label=\"" << aut.alphabet[t.sym]
        << " / " << t.weight.str() << "\"";
    if (buchi_view && t.weight == Rational(1))
      out << ", color=\"black:invis:black\"";  // doubled line
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

} // namespace wqa
