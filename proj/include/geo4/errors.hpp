#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace geo4 {

/// Base of every error raised by the library. `kind()` is the stable name used
/// by the CLI and tests.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string &what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  [[nodiscard]] const std::string &kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define GEO4_ERROR(Name)                                                       \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string &what) : Error(#Name, what) {}             \
  }

GEO4_ERROR(ParityMismatch);
GEO4_ERROR(NegativeBetti);
GEO4_ERROR(IndivisibleQuotient);
GEO4_ERROR(InsufficientCertificates);
GEO4_ERROR(RuleNotApplicable);
GEO4_ERROR(UnknownCurve);
GEO4_ERROR(NoReflectionRegistered);
GEO4_ERROR(InconsistentAssignment);
GEO4_ERROR(NonPositiveInput);
GEO4_ERROR(IndexOutOfRange);
GEO4_ERROR(PatternMismatch);
GEO4_ERROR(NonIntegerSignature);
GEO4_ERROR(SignatureUnavailable);
GEO4_ERROR(MissingPi1Words);
GEO4_ERROR(GenusMismatch);
GEO4_ERROR(CommutationFails);
GEO4_ERROR(ParamOutOfRange);
GEO4_ERROR(InvalidWord);
GEO4_ERROR(NoApplicableEdge);
GEO4_ERROR(NoSolution);
GEO4_ERROR(OutOfRegion);
GEO4_ERROR(InvariantMismatch);
GEO4_ERROR(Overflow);
GEO4_ERROR(RejectedDescriptor);
GEO4_ERROR(UnanchoredCertificate);

#undef GEO4_ERROR

/// Parse failure with a 1-based source position.
class ParseError : public Error {
public:
  ParseError(const std::string &what, int line, int column)
      : Error("ParseError", std::to_string(line) + ":" +
                                std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

namespace diag {

using Sink = std::function<void(const std::string &)>;

inline Sink &sink() {
  static thread_local Sink s;
  return s;
}

/// Install a warning sink for the current thread; returns the previous one.
inline Sink set_sink(Sink s) {
  Sink old = std::move(sink());
  sink() = std::move(s);
  return old;
}

inline void warn(const std::string &msg) {
  if (auto &s = sink())
    s(msg);
}

} // namespace diag
} // namespace geo4
