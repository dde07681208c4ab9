#pragma once

#include <string>
#include <string_view>

#include "mixmean/matrix.hpp"

namespace mixmean {

// CSV: one row per line, comma separated, optional trailing newline.
// JSON: {"rows": [[...], ...]} and nothing else.
enum class MatrixFormat { Csv, Json };

// Float parsing is correctly rounded (tokens are read exactly and rounded
// once).  Exact parsing keeps decimal literals and "p/q" fractions exact.
NonnegMatrix parse_matrix(std::string_view text, MatrixFormat format);
RationalMatrix parse_matrix_exact(std::string_view text, MatrixFormat format);

// Serialization round-trips: doubles via 17 significant digits, rationals via
// exact decimal or "p/q" text.
std::string serialize_matrix(const NonnegMatrix& B, MatrixFormat format);
std::string serialize_matrix(const RationalMatrix& B, MatrixFormat format);

} // namespace mixmean
