#pragma once

#include <stdexcept>
#include <string>

namespace workbench {

// Every failure mode the library reports. The names printed by
// errc_name() are stable and grep-friendly; the CLI maps them to
// exit codes.
enum class Errc {
  EmptyMatrix,
  Singular,
  NotUnitriangular,
  DimensionMismatch,
  ShapeMismatch,
  NotSquare,
  NonPrimeModulus,
  FieldMismatch,
  DivisionByZero,
  ParseError,
  DuplicateLemma,
  EmptySymbolTable,
  CsvFormatError,
  JsonFormatError,
  BadGranularity,
  TooFewPoints,
  DegenerateComponent,
  UnknownLemma,
  BadFixtureSpec,
  IoError,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace workbench
