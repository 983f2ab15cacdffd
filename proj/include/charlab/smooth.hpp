#pragma once

/**
 * @file smooth.hpp
 * @brief Smooth and rough numbers: P+(n), Psi(x, y), harmonic sums over
 * rough and smooth ranges, and the objective optimised by Vinogradov's trick.
 *
 * Largest prime factors are produced by a segmented sieve: within a segment
 * every n is stripped of its prime factors up to sqrt(hi); what remains is 1
 * or a single prime, which is then P+(n). Memory stays O(segment) for any
 * range up to kSieveCap.
 */

#include <cstdint>
#include <functional>
#include <span>

#include "charlab/arith.hpp"

namespace charlab {

inline constexpr u64 kSieveCap = 100'000'000;

/// Throws for n < 2.
u64 largest_prime_factor(u64 n);

/// Calls visit(first, lpf) for consecutive segments covering [lo, hi], where
/// lpf[i] = P+(first + i) and P+(1) = 1. Requires 1 <= lo, hi <= kSieveCap.
void for_each_lpf_segment(u64 lo, u64 hi, const std::function<void(u64, std::span<const u64>)>& visit);

/// #{1 <= n <= x : P+(n) <= y}. Requires x >= 0, y >= 2, x <= kSieveCap.
u64 psi_count(double x, double y);

/// floor(y^alpha), snapping values within 1e-9 relative of an integer.
u64 power_floor(double y, double alpha);

struct SmoothSumResult {
    double y = 0.0;
    double alpha = 1.0;
    u64 upper = 0;             // floor(y^alpha)
    double exact_sum = 0.0;    // sum_{n <= y^alpha, P+(n) > y} 1/n
    double main_term = 0.0;    // (alpha log alpha - alpha + 1) log y
    double discrepancy = 0.0;  // exact_sum - main_term
};

/// Requires y >= 2, alpha in [1, 2], y^alpha <= kSieveCap.
SmoothSumResult rough_harmonic_sum(double y, double alpha);

/// sum_{y < n <= y^alpha, P+(n) <= y} 1/n, computed directly.
double smooth_harmonic_sum(double y, double alpha);

/// The smooth harmonic sum rebuilt from Psi by partial summation:
///   Psi(y^a, y)/y^a - Psi(y, y)/y + (log y) * int_1^a Psi(y^u, y)/y^u du,
/// with the u-integral done by the trapezoidal rule. `quadrature_bound` is
/// log(y) * h * (total variation of the integrand), a rigorous bound on the
/// quadrature error for a piecewise-monotone integrand.
struct PartialSummationCheck {
    double direct = 0.0;
    double via_psi = 0.0;
    double quadrature_bound = 0.0;
    double step = 0.0;  // effective u-step
};

/// Requires y^alpha <= 10^7 (a prefix table of Psi is materialised).
PartialSummationCheck smooth_sum_partial_summation(double y, double alpha, double step);

/// -2 alpha log alpha + 3 alpha - 2.
double vinogradov_objective(double alpha);

/// Closed-form maximiser on [1, 2]: the root of 1 - 2 log alpha, i.e. sqrt(e).
double vinogradov_argmax();

/// Grid maximiser on [1, 2] with the given step; ties go to the smaller alpha.
double vinogradov_argmax_grid(double step);

}  // namespace charlab
