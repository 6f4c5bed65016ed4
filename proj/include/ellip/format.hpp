#pragma once

#include <string>

namespace ellip {

/// Shortest-round-trip-safe decimal text: 17 significant digits, '.' decimal
/// separator regardless of locale.
std::string format_double(double value);

/// Parses text written by format_double (also "nan", "inf"). Throws
/// InvalidArgument on trailing garbage.
double parse_double(const std::string& text);

}  // namespace ellip
