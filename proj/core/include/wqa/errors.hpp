#ifndef WQA_ERRORS_HPP
#define WQA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wqa {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An operation was invoked on inputs that violate its preconditions
/// (wrong value-function arity, non-total automaton, bad range, ...).
class PreconditionError : public Error {
public:
  explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

/// A composition operator was requested for an automaton class that is
/// not closed under it.  Carries the citation used in diagnostics.
class ClosedUnderOpViolation : public Error {
public:
  ClosedUnderOpViolation(std::string klass, std::string op, std::string citation)
      : Error(klass + " not closed under " + op + " — " + citation),
        automaton_class(std::move(klass)), operation(std::move(op)),
        citation(std::move(citation)) {}

  std::string automaton_class;
  std::string operation;
  std::string citation;
};

/// Cut-point extraction requires an isolated threshold.
class NotIsolated : public PreconditionError {
public:
  explicit NotIsolated(const std::string& msg) : PreconditionError(msg) {}
};

/// A claimed isolation margin was refuted constructively; the message
/// carries the offending finite path.
class IsolationViolated : public Error {
public:
  explicit IsolationViolated(const std::string& msg) : Error(msg) {}
};

/// A construction or oracle exceeded its configured size cap.
class CapExceeded : public Error {
public:
  explicit CapExceeded(const std::string& msg) : Error(msg) {}
};

/// Malformed textual input (automaton files, word literals, rationals).
class ParseError : public Error {
public:
  explicit ParseError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line(line) {}
  int line;
};

} // namespace wqa

#endif
