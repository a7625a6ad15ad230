#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace maxcurves::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInternalError = 1;
inline constexpr int kUsageError = 2;

// Runs one command line (args excludes the program name). Tabular output
// goes to `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "0.119", "119/1000" or "1e-3" style decimal to an exact rational.
// Throws std::invalid_argument on malformed input.
mpq_class parse_rational(const std::string& text);

}  // namespace maxcurves::cli
