#include "workbench/error.hpp"

namespace workbench {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyMatrix: return "EmptyMatrix";
    case Errc::Singular: return "Singular";
    case Errc::NotUnitriangular: return "NotUnitriangular";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NotSquare: return "NotSquare";
    case Errc::NonPrimeModulus: return "NonPrimeModulus";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ParseError: return "ParseError";
    case Errc::DuplicateLemma: return "DuplicateLemma";
    case Errc::EmptySymbolTable: return "EmptySymbolTable";
    case Errc::CsvFormatError: return "CsvFormatError";
    case Errc::JsonFormatError: return "JsonFormatError";
    case Errc::BadGranularity: return "BadGranularity";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::DegenerateComponent: return "DegenerateComponent";
    case Errc::UnknownLemma: return "UnknownLemma";
    case Errc::BadFixtureSpec: return "BadFixtureSpec";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace workbench
