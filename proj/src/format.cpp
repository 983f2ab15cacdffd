#include "charlab/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace charlab {

std::string format_real(double x, int digits) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";  // also folds -0
    char buf[64];
    // to_chars with a precision rounds the exact binary value correctly;
    // exact ties resolve half to even.
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, digits);
    if (res.ec != std::errc{}) throw std::runtime_error("format_real: buffer too small");
    return std::string(buf, res.ptr);
}

double round_significant(double x, int digits) {
    if (!std::isfinite(x)) return x;
    return parse_real(format_real(x, digits));
}

double parse_real(const std::string& text) {
    if (text == "nan") return std::nan("");
    if (text == "inf") return INFINITY;
    if (text == "-inf") return -INFINITY;
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end) throw std::invalid_argument("not a number: '" + text + "'");
    return v;
}

}  // namespace charlab
