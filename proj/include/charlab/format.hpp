#pragma once

#include <string>

namespace charlab {

/// Shortest decimal form of x rounded to `digits` significant digits.
/// Exact binary ties round half to even. Non-finite values render as
/// "nan", "inf" and "-inf".
std::string format_real(double x, int digits = 12);

/// x rounded to `digits` significant digits, as a double.
double round_significant(double x, int digits = 12);

/// Strict parse of a decimal produced by format_real; throws on trailing junk.
double parse_real(const std::string& text);

}  // namespace charlab
