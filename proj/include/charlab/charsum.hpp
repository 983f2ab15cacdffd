#pragma once

/**
 * @file charsum.hpp
 * @brief Partial character sums and the quantities built from them.
 *
 *   S(t)  = sum_{n <= t} chi(n)
 *   M     = max_{1 <= t <= q} |S(t)|          (integer t; S is a step function)
 *   n_chi = min { n : chi(n) not in {0, 1} }
 *
 * plus the truncated Polya Fourier expansion, L(1, xi) with a rigorous
 * partial-summation tail radius, and grid evaluations of the two
 * trigonometric-sum maxima used in the lower-bound argument.
 */

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "charlab/character.hpp"

namespace charlab {

/// S(t) for real t >= 0, i.e. the sum over n <= floor(t). Exact accumulation.
std::complex<double> partial_sum(const DirichletCharacter& chi, double t);

/// S(t) as an exact multiset of order(chi)-th roots of unity.
RootCounts partial_sum_exact(const DirichletCharacter& chi, u64 t);

struct PartialSumProfile {
    u64 modulus = 1;
    std::string label;
    double max_abs = 0.0;               // M(chi)
    u64 argmax = 1;                     // smallest t attaining M
    std::optional<u64> least_nonresidue;  // nullopt for the principal character
    std::vector<std::complex<double>> trace;  // S(0), ..., S(q) when requested
};

/// Ties in |S(t)| closer than this are resolved toward the smaller t.
inline constexpr double kMaxTieTolerance = 1e-9;

/// One O(q) scan computing M(chi), its argmax and n_chi.
PartialSumProfile max_partial_sum(const DirichletCharacter& chi, bool with_trace = false);

/// nullopt is the "undefined" outcome for principal characters.
std::optional<u64> least_nonresidue(const DirichletCharacter& chi);

/// First t in [0, q) where S(q-1-t) != -S(t) (even) or != S(t) (odd), using
/// exact cyclotomic arithmetic; nullopt when the reflection holds everywhere.
/// Requires a nonprincipal character.
std::optional<u64> reflection_failure(const DirichletCharacter& chi);

/// -(tau(chi) / 2 pi i) * sum_{1 <= |n| <= cutoff} conj(chi)(n)/n * e(-n alpha).
/// Requires chi primitive and 1 <= cutoff <= q.
std::complex<double> polya_main_term(const DirichletCharacter& chi, double alpha, u64 cutoff);

struct LValue {
    std::complex<double> value;  // sum_{n <= N} xi(n)/n
    double radius = 0.0;         // |L(1, xi) - value| <= radius
    u64 terms = 0;
};

/// Requires xi odd primitive and N >= q. radius = 2 M(xi) / N.
LValue dirichlet_L1(const DirichletCharacter& xi, u64 terms);

/// Compares S_chi(k) for chi = xi * (./3) mod 3k against two closed forms in
/// L(1, xi): the commonly quoted sqrt(k) L(1, xi) / (pi sqrt 3), and the
/// value obtained by evaluating the Polya series at alpha = 1/3,
/// tau(chi) sqrt(3)/(2 pi) (1 - conj(xi)(3)/3) L(1, conj xi).
struct ThirdPointIdentity {
    std::complex<double> sum;               // S_chi(k), exact
    LValue l_value;                          // L(1, xi)
    std::complex<double> quoted_prediction;
    double quoted_tolerance = 0.0;          // tail radius propagated through the quoted form
    std::complex<double> series_prediction;
    double series_tolerance = 0.0;          // tail radius propagated through the series form
};

/// Requires xi odd primitive mod k with 3 not dividing k.
ThirdPointIdentity third_point_identity(const DirichletCharacter& xi, u64 terms);

/// Coefficients a_n on 1 <= |n| <= X: positive[n-1] = a_n, negative[n-1] = a_{-n}.
struct TwoSidedSequence {
    std::vector<std::complex<double>> positive;
    std::vector<std::complex<double>> negative;
};

struct ThetaMax {
    double full_max = 0.0;       // max_theta |sum_{1<=|n|<=x} a_n/n e(n theta)|
    double truncated_max = 0.0;  // max_theta max_{N<=x} |sum_{1<=|n|<=N} ...|
    double grid_allowance = 0.0;  // Lipschitz bound on what the grid can miss
    std::size_t grid_points = 0;
    double gap() const { return full_max - truncated_max; }
};

/// Grid maxima of the full and truncated trigonometric sums. `resolution`
/// must be at most 1/(4x); every |a_n| must be at most 1.
ThetaMax theta_sum_max(const TwoSidedSequence& coeffs, double x, double resolution);

struct CoefficientCheck {
    double lhs = 0.0;  // grid max of |sum b_n psi(n) e(n theta)|
    double rhs = 0.0;  // sqrt(m)/phi(m) * |sum_{(n,m)=1} b_n|
    double grid_allowance = 0.0;
    std::size_t grid_points = 0;
    bool holds() const { return lhs + grid_allowance >= rhs; }
};

/// `coeffs` holds the finitely many nonzero (n, b_n). Requires psi primitive.
CoefficientCheck lemma2_check(std::span<const std::pair<i64, std::complex<double>>> coeffs,
                          const DirichletCharacter& psi, double resolution);

}  // namespace charlab
