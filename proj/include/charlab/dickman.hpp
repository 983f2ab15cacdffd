#pragma once

/**
 * @file dickman.hpp
 * @brief The Dickman-de Bruijn function rho.
 *
 * rho = 1 on [0, 1] and u rho'(u) = -rho(u - 1) for u > 1. Integrating the
 * delay equation gives the equivalent integral form
 *
 *     u rho(u) = int_{u-1}^{u} rho(t) dt
 *
 * which the table marches with the trapezoidal rule on a grid whose step
 * divides 1. The update only adds positive terms, so values stay positive
 * and accurate in relative terms deep into the tail (rho(20) ~ 1e-29).
 * The running integral int_0^u rho is kept alongside.
 */

#include <iosfwd>
#include <span>
#include <vector>

namespace charlab {

class DickmanTable {
public:
    /// The effective step is 1 / ceil(1 / step). Requires 0 < step <= 1, u_max >= 0.
    static DickmanTable build(double u_max, double step);

    double step() const { return step_; }
    double u_max() const { return u_max_; }
    std::span<const double> values() const { return rho_; }
    std::span<const double> cumulative() const { return integral_; }

    /// rho(u) by linear interpolation; throws for u < 0 or u > u_max().
    double rho(double u) const;
    /// int_0^u rho, interpolated consistently with rho().
    double integral(double u) const;

    /// CSV with header "u,rho,integral", one row per grid point.
    void write_csv(std::ostream& out) const;

private:
    double step_ = 1.0;
    double u_max_ = 0.0;
    std::size_t per_unit_ = 1;
    std::vector<double> rho_;
    std::vector<double> integral_;
};

/// rho(u) from a fresh table. Throws for u < 0.
double dickman_rho(double u, double step);

/// int_0^{u_max} rho from a fresh table.
double dickman_integral(double u_max, double step);

}  // namespace charlab
