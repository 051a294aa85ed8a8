#pragma once

#include <cstddef>
#include <string>

#include "workbench/matrix.hpp"

namespace workbench {

// Interchange format for the CLI matrix subcommands:
//   {"field": "q" | {"gfp": p}, "n": int, "rows": [[scalar, ...], ...]}
// Q scalars are strings like "-3/4" or "5"; GF(p) scalars are integers
// in [0, p). Parsing reports JsonFormatError / ShapeMismatch /
// NonPrimeModulus as appropriate.
std::string matrix_to_json(const AbstractMatrix& m);
AbstractMatrix matrix_from_json(const std::string& text);

}  // namespace workbench
