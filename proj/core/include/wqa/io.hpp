#ifndef WQA_IO_HPP
#define WQA_IO_HPP

#include <iosfwd>
#include <string>
#include <variant>

#include "wqa/automaton.hpp"

namespace wqa {

/// Parse the line-oriented automaton format:
///
///   automaton <name>
///   semantics <tag> [<p/q>]
///   alphabet <sym> ...
///   states <n>
///   initial <i>
///   trans <src> <sym> <dst> <p/q>
///
/// '#' starts a comment; blank lines are ignored; sections may appear in
/// any order but every section except trans is mandatory.
WeightedAutomaton parse_automaton(const std::string& text);
WeightedAutomaton load_automaton(const std::string& path);

/// Canonical rendering: fixed section order, transitions sorted by
/// (src, sym, dst, weight), rationals as p/q.  parse . serialize is the
/// identity on parsed automata; serialize . parse is byte-identity on
/// canonical files.
std::string serialize_automaton(const WeightedAutomaton& aut);
void save_automaton(const WeightedAutomaton& aut, const std::string& path);

/// Word literal: space-separated symbols; '|' splits prefix from period.
/// Without '|' the literal is a finite word.
std::variant<FiniteWord, LassoWord> parse_word(const std::string& text);
LassoWord parse_lasso(const std::string& text);  // requires a '|'

/// DOT digraph; weight-1 edges of a boolean-weight limsup automaton are
/// drawn with a doubled line.
std::string to_dot(const WeightedAutomaton& aut);

} // namespace wqa

#endif
