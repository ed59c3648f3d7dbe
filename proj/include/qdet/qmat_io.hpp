#pragma once

// Text format for quaternion matrices:
//
//   % comment lines start with '%'; blank lines are skipped
//   m n
//   <n literals>      (m lines, whitespace separated)
//
// A file containing any decimal literal is a float file; mixing decimals
// with p/q fractions in one file is rejected.

#include <string>
#include <string_view>

#include "qdet/matrix.hpp"

namespace qdet {

struct QmatFile {
  Mode mode = Mode::exact;
  QMatrixQ exact;   ///< exact-mode files only
  QMatrixD approx;  ///< always filled (converted from exact in exact mode)
};

/// Throws ParseError with 1-based line (and column where meaningful).
QmatFile parse_qmat(std::string_view text);

/// Reads and parses a file; ParseError messages are prefixed with the path.
QmatFile read_qmat_file(const std::string& path);

/// Header plus one row per line; parse_qmat(format_qmat(a)) == a.
template <Scalar T>
std::string format_qmat(const QMatrix<T>& a);

}  // namespace qdet
