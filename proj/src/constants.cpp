#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "charlab/harness.hpp"

namespace charlab {

namespace {

std::string fixed(double v, int decimals) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, decimals);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string NamedConstant::at_quoted_precision() const {
    const auto dot = quoted.find('.');
    const int decimals = dot == std::string::npos ? 0 : static_cast<int>(quoted.size() - dot - 1);
    if (!quoted_truncated) return fixed(value, decimals);
    // Render a few extra digits, then cut.
    std::string wide = fixed(value, decimals + 6);
    return wide.substr(0, wide.size() - 6);
}

double twisted_bound_coefficient() {
    return std::numbers::pi / (2.0 * (std::exp(0.5) - 1.0));
}

double nonresidue_exponent_coefficient() {
    return std::numbers::pi * std::numbers::sqrt3 / (2.0 * (std::exp(0.5) - 1.0));
}

std::vector<NamedConstant> constants_table() {
    using std::numbers::pi;
    using std::numbers::sqrt3;
    const double gamma = std::numbers::egamma;
    const double e_gamma = std::exp(gamma);
    const double sqrt_e = std::exp(0.5);

    return {
        {"euler_gamma", "gamma", gamma, "0.5772156649", false, "Euler-Mascheroni constant"},
        {"exp_gamma", "e^gamma", e_gamma, "1.7810724", false, "integral of the Dickman function over [0, inf)"},
        {"sqrt_e", "sqrt(e)", sqrt_e, "1.6487", false, "optimal alpha in Vinogradov's trick"},
        {"hildebrand_constant", "(sqrt(e)-1)/(2 pi sqrt(3e))", (sqrt_e - 1.0) / (2.0 * pi * std::sqrt(3.0 * std::numbers::e)),
         "0.036", false, "Polya-Vinogradov constant for even quadratic characters that reproduces the Burgess exponent"},
        {"improved_pv_constant", "1/(9 pi)", 1.0 / (9.0 * pi), "0.035", false,
         "a Polya-Vinogradov constant just below the Hildebrand constant"},
        {"conditional_exponent", "e^gamma/(2(sqrt(e)-1))", e_gamma / (2.0 * (sqrt_e - 1.0)), "1.37", false,
         "exponent of log k in the nonresidue bound under the conjectured sharp Polya-Vinogradov bound"},
        {"gs_conjectured_coefficient", "e^gamma/(pi sqrt(3))", e_gamma / (pi * sqrt3), "", false,
         "conjectured sqrt(q) log log q coefficient for even primitive characters"},
        {"gs_grh_coefficient", "2 e^gamma/(pi sqrt(3))", 2.0 * e_gamma / (pi * sqrt3), "", false,
         "sqrt(q) log log q coefficient for even primitive characters under GRH"},
        {"burgess_vinogradov_exponent", "1/(4 sqrt(e))", 1.0 / (4.0 * sqrt_e), "0.151632", true,
         "exponent of p in the best unconditional least-nonresidue bound"},
        {"nonresidue_exponent_coefficient", "pi sqrt(3)/(2(sqrt(e)-1))", nonresidue_exponent_coefficient(), "4.19394",
         false, "coefficient of log k / f(k) in the nonresidue bound from a Polya-Vinogradov improvement"},
        {"twisted_bound_coefficient", "pi/(2(sqrt(e)-1))", twisted_bound_coefficient(), "2.42137", false,
         "coefficient of M(xi psi)/sqrt(k) bounding log n_xi"},
        {"conjectured_ratio", "pi/e^gamma", pi / e_gamma, "1.7639", false,
         "conjectured sharp coefficient of M(chi)/sqrt(k) bounding log n_xi"},
        {"vinogradov_maximum", "2(sqrt(e)-1)", 2.0 * (sqrt_e - 1.0), "1.29744", false,
         "maximum of -2a log a + 3a - 2 on [1, 2]"},
        {"one_minus_log2", "1 - log 2", 1.0 - std::log(2.0), "0.30685", false,
         "rho(2), and the limiting density Psi(y^2, y)/y^2"},
    };
}

double named_constant(const std::string& name) {
    for (const auto& c : constants_table()) {
        if (c.name == name) return c.value;
    }
    throw std::invalid_argument("unknown constant '" + name + "'");
}

}  // namespace charlab
