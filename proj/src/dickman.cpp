#include "charlab/dickman.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "charlab/format.hpp"

namespace charlab {

DickmanTable DickmanTable::build(double u_max, double step) {
    if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("Dickman step must lie in (0, 1]");
    if (!(u_max >= 0.0)) throw std::invalid_argument("Dickman u_max must be nonnegative");

    DickmanTable t;
    t.per_unit_ = static_cast<std::size_t>(std::ceil(1.0 / step - 1e-12));
    const long double h = 1.0L / static_cast<long double>(t.per_unit_);
    t.step_ = static_cast<double>(h);
    const std::size_t n = static_cast<std::size_t>(std::ceil(static_cast<long double>(u_max) / h - 1e-9L));
    t.u_max_ = static_cast<double>(h * static_cast<long double>(n));

    // March u rho(u) = int_{u-1}^{u} rho(t) dt with the trapezoidal rule. Every
    // term is positive, so the table keeps its relative accuracy far into the
    // tail where rho is many orders of magnitude below the step error.
    const std::size_t per = t.per_unit_;
    std::vector<long double> rho(n + 1, 1.0L);
    std::vector<long double> cum(n + 1, 0.0L);
    long double inner = 0.0L;  // rho[i-per+1] + ... + rho[i-1]
    for (std::size_t i = 1; i <= n; ++i) {
        if (i > per) {
            if ((i - per) % per == 1 || per == 1) {
                inner = 0.0L;
                for (std::size_t j = i - per + 1; j < i; ++j) inner += rho[j];
            }
            const long double u = h * static_cast<long double>(i);
            rho[i] = h * (0.5L * rho[i - per] + inner) / (u - 0.5L * h);
            if (per > 1) inner += rho[i] - rho[i - per + 1];
        }
        cum[i] = cum[i - 1] + 0.5L * h * (rho[i - 1] + rho[i]);
    }
    t.rho_.assign(rho.begin(), rho.end());
    t.integral_.assign(cum.begin(), cum.end());
    return t;
}

double DickmanTable::rho(double u) const {
    if (!(u >= 0.0)) throw std::invalid_argument("Dickman rho: u must be nonnegative");
    if (u <= 1.0) return 1.0;
    if (u > u_max_ * (1.0 + 1e-12)) throw std::invalid_argument("Dickman rho: u beyond the table");
    const double pos = u / step_;
    const std::size_t i = std::min(rho_.size() - 1, static_cast<std::size_t>(std::floor(pos)));
    if (i + 1 >= rho_.size()) return rho_.back();
    const double frac = pos - static_cast<double>(i);
    return rho_[i] + frac * (rho_[i + 1] - rho_[i]);
}

double DickmanTable::integral(double u) const {
    if (!(u >= 0.0)) throw std::invalid_argument("Dickman integral: u must be nonnegative");
    if (u <= 1.0) return u;
    if (u > u_max_ * (1.0 + 1e-12)) throw std::invalid_argument("Dickman integral: u beyond the table");
    const double pos = u / step_;
    const std::size_t i = std::min(rho_.size() - 1, static_cast<std::size_t>(std::floor(pos)));
    if (i + 1 >= rho_.size()) return integral_.back();
    const double du = u - static_cast<double>(i) * step_;
    return integral_[i] + 0.5 * du * (rho_[i] + rho(u));
}

void DickmanTable::write_csv(std::ostream& out) const {
    out << "u,rho,integral\n";
    for (std::size_t i = 0; i < rho_.size(); ++i) {
        out << format_real(static_cast<double>(i) * step_) << ',' << format_real(rho_[i]) << ','
            << format_real(integral_[i]) << '\n';
    }
}

double dickman_rho(double u, double step) {
    if (!(u >= 0.0)) throw std::invalid_argument("Dickman rho: u must be nonnegative");
    if (u <= 1.0) return 1.0;
    return DickmanTable::build(u, step).rho(u);
}

double dickman_integral(double u_max, double step) {
    if (!(u_max >= 0.0)) throw std::invalid_argument("Dickman integral: u_max must be nonnegative");
    return DickmanTable::build(u_max, step).integral(u_max);
}

}  // namespace charlab
