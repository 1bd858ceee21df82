#ifndef JANUS_ERRORS_HPP
#define JANUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace janus {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class IterationFailure : public Error {
 public:
  using Error::Error;
};

class UnknownOutcome : public Error {
 public:
  using Error::Error;
};

// Conditioning on a null event. Unifies the classical P(A=x) > 0 precondition
// and the quantum division by a vanishing projected norm.
class ZeroProbabilityOutcome : public Error {
 public:
  using Error::Error;
};

class SiteMismatch : public Error {
 public:
  using Error::Error;
};

class NotPure : public Error {
 public:
  using Error::Error;
};

class NotCompatible : public Error {
 public:
  using Error::Error;
};

class NotSiteStructured : public Error {
 public:
  using Error::Error;
};

class EmptySubensemble : public Error {
 public:
  using Error::Error;
};

class SignalingBehavior : public Error {
 public:
  using Error::Error;
};

class OutcomeArity : public Error {
 public:
  using Error::Error;
};

// Scenario / behavior / record text that does not parse. Positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace janus

#endif  // JANUS_ERRORS_HPP
