#include "charlab/charsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace charlab {

namespace {

constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;

std::vector<std::complex<long double>> root_table(u64 d) {
    std::vector<std::complex<long double>> roots(d);
    for (u64 k = 0; k < d; ++k) roots[k] = unit_root(k, d);
    return roots;
}

std::complex<double> to_double(std::complex<long double> z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace

RootCounts partial_sum_exact(const DirichletCharacter& chi, u64 t) {
    const u64 q = chi.modulus();
    const auto table = chi.value_table();
    std::vector<std::int64_t> per_period(chi.order(), 0);
    std::vector<std::int64_t> remainder(chi.order(), 0);
    const u64 full = t / q;
    const u64 rest = t % q;
    // n runs over 1..t; residue n mod q
    for (u64 r = 1; r <= q; ++r) {
        const std::int32_t v = table[r % q];
        if (v < 0) continue;
        per_period[static_cast<u64>(v)] += 1;
        if (r <= rest) remainder[static_cast<u64>(v)] += 1;
    }
    RootCounts counts(chi.order());
    for (u64 k = 0; k < chi.order(); ++k) {
        counts.add_index(k, per_period[k] * static_cast<std::int64_t>(full) + remainder[k]);
    }
    return counts;
}

std::complex<double> partial_sum(const DirichletCharacter& chi, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("partial_sum: t must be nonnegative");
    if (t < 1.0) return {0.0, 0.0};
    return partial_sum_exact(chi, static_cast<u64>(std::floor(t))).value();
}

PartialSumProfile max_partial_sum(const DirichletCharacter& chi, bool with_trace) {
    const u64 q = chi.modulus();
    const auto table = chi.value_table();
    const auto roots = root_table(chi.order());

    PartialSumProfile profile;
    profile.modulus = q;
    profile.label = chi.label();
    if (with_trace) {
        profile.trace.reserve(q + 1);
        profile.trace.emplace_back(0.0, 0.0);
    }

    std::complex<long double> s{0.0L, 0.0L};
    double best = -1.0;
    for (u64 t = 1; t <= q; ++t) {
        const std::int32_t v = table[t % q];
        if (v >= 0) {
            s += roots[static_cast<u64>(v)];
            if (v != 0 && !profile.least_nonresidue) profile.least_nonresidue = t;
        }
        const double a = static_cast<double>(std::abs(s));
        if (a > best + kMaxTieTolerance) {
            best = a;
            profile.argmax = t;
        }
        if (with_trace) profile.trace.push_back(to_double(s));
    }
    profile.max_abs = best;
    return profile;
}

std::optional<u64> least_nonresidue(const DirichletCharacter& chi) {
    if (chi.is_principal()) return std::nullopt;
    const u64 q = chi.modulus();
    for (u64 n = 2; n < q; ++n) {
        const CharValue v = chi(static_cast<i64>(n));
        if (v && !v->is_one()) return n;
    }
    return std::nullopt;  // unreachable for nonprincipal characters
}

std::optional<u64> reflection_failure(const DirichletCharacter& chi) {
    if (chi.is_principal()) throw std::invalid_argument("reflection_failure: principal character");
    const u64 q = chi.modulus();
    const u64 d = chi.order();
    const auto table = chi.value_table();
    // diff(t) = S(q-1-t) + sign * S(t); zero for all t when the reflection holds.
    // sign = +1 for even characters, -1 for odd ones.
    const std::int64_t sign = chi.is_even() ? 1 : -1;
    CyclotomicInteger diff(d);
    for (u64 n = 1; n + 1 <= q; ++n) {
        if (table[n] >= 0) diff.add_index(static_cast<u64>(table[n]));
    }
    for (u64 t = 0; t < q; ++t) {
        if (!diff.is_zero()) return t;
        if (t + 1 == q) break;
        // t -> t+1: S(t) gains chi(t+1); S(q-1-t) loses chi(q-1-t).
        if (table[t + 1] >= 0) diff.add_index(static_cast<u64>(table[t + 1]), sign);
        if (table[q - 1 - t] >= 0) diff.add_index(static_cast<u64>(table[q - 1 - t]), -1);
    }
    return std::nullopt;
}

std::complex<double> polya_main_term(const DirichletCharacter& chi, double alpha, u64 cutoff) {
    if (!chi.is_primitive()) throw std::invalid_argument("polya_main_term: character must be primitive");
    const u64 q = chi.modulus();
    if (cutoff == 0 || cutoff > q) throw std::invalid_argument("polya_main_term: cutoff must lie in [1, q]");

    const auto table = chi.value_table();
    const auto roots = root_table(chi.order());
    const long double parity = chi.is_even() ? 1.0L : -1.0L;
    const long double a = static_cast<long double>(alpha);

    std::complex<long double> sum{0.0L, 0.0L};
    for (u64 n = 1; n <= cutoff; ++n) {
        const std::int32_t v = table[n % q];
        if (v < 0) continue;
        const std::complex<long double> chibar = std::conj(roots[static_cast<u64>(v)]);
        const long double angle = kTwoPi * static_cast<long double>(n) * a;
        const std::complex<long double> forward{std::cos(angle), -std::sin(angle)};  // e(-n alpha)
        const std::complex<long double> backward = std::conj(forward);             // e(n alpha)
        // terms n and -n: conj(chi)(-n)/(-n) = -chi(-1) conj(chi)(n)/n
        sum += chibar / static_cast<long double>(n) * (forward - parity * backward);
    }
    const std::complex<double> tau = gauss_sum(chi);
    const std::complex<long double> tau_ld{tau.real(), tau.imag()};
    const std::complex<long double> two_pi_i{0.0L, kTwoPi};
    return to_double(-tau_ld / two_pi_i * sum);
}

LValue dirichlet_L1(const DirichletCharacter& xi, u64 terms) {
    if (!xi.is_odd() || !xi.is_primitive()) {
        throw std::invalid_argument("dirichlet_L1: character " + xi.label() + " must be odd and primitive");
    }
    const u64 q = xi.modulus();
    if (terms < q) throw std::invalid_argument("dirichlet_L1: need at least q terms");

    const auto table = xi.value_table();
    const auto roots = root_table(xi.order());
    std::complex<long double> sum{0.0L, 0.0L};
    for (u64 n = 1; n <= terms; ++n) {
        const std::int32_t v = table[n % q];
        if (v < 0) continue;
        sum += roots[static_cast<u64>(v)] / static_cast<long double>(n);
    }
    const double m = max_partial_sum(xi).max_abs;
    return {to_double(sum), 2.0 * m / static_cast<double>(terms), terms};
}

ThirdPointIdentity third_point_identity(const DirichletCharacter& xi, u64 terms) {
    const u64 k = xi.modulus();
    if (k % 3 == 0) throw std::invalid_argument("third_point_identity: 3 divides the modulus");
    const auto psi = legendre_character(CharacterGroup::build(3));
    const DirichletCharacter chi = twist(xi, psi);

    ThirdPointIdentity out;
    out.sum = partial_sum_exact(chi, k).value();
    out.l_value = dirichlet_L1(xi, terms);
    const std::complex<double> l = out.l_value.value;
    const double r = out.l_value.radius;
    const double pi = std::numbers::pi;
    const double sqrt3 = std::numbers::sqrt3;

    const double quoted_scale = std::sqrt(static_cast<double>(k)) / (pi * sqrt3);
    out.quoted_prediction = quoted_scale * l;
    out.quoted_tolerance = quoted_scale * r;

    const CharValue xi3 = xi(3);
    const std::complex<double> euler_factor = 1.0 - std::conj(xi3->value()) / 3.0;
    const std::complex<double> tau = gauss_sum(chi);
    const std::complex<double> scale = tau * (sqrt3 / (2.0 * pi)) * euler_factor;
    out.series_prediction = scale * std::conj(l);
    out.series_tolerance = std::abs(scale) * r;
    return out;
}

ThetaMax theta_sum_max(const TwoSidedSequence& coeffs, double x, double resolution) {
    if (!(x >= 1.0)) throw std::invalid_argument("theta_sum_max: x must be at least 1");
    if (!(resolution > 0.0) || resolution > 1.0 / (4.0 * x)) {
        throw std::invalid_argument("theta_sum_max: resolution must be in (0, 1/(4x)]");
    }
    const u64 top = static_cast<u64>(std::floor(x));
    if (coeffs.positive.size() < top || coeffs.negative.size() < top) {
        throw std::invalid_argument("theta_sum_max: coefficient sequence shorter than x");
    }
    double mass = 0.0;
    for (u64 n = 0; n < top; ++n) {
        const double a = std::abs(coeffs.positive[n]);
        const double b = std::abs(coeffs.negative[n]);
        if (a > 1.0 + 1e-12 || b > 1.0 + 1e-12) {
            throw std::invalid_argument("theta_sum_max: coefficient of modulus greater than 1 at n = " +
                                        std::to_string(n + 1));
        }
        mass += a + b;
    }

    const u64 grid = static_cast<u64>(std::ceil(1.0 / resolution));
    const auto roots = root_table(grid);
    ThetaMax out;
    out.grid_points = grid;
    out.grid_allowance = std::numbers::pi * mass / static_cast<double>(grid);
    for (u64 i = 0; i < grid; ++i) {
        std::complex<long double> s{0.0L, 0.0L};
        long double best_truncated = 0.0L;
        for (u64 n = 1; n <= top; ++n) {
            const u64 k = mul_mod(n, i, grid);
            const std::complex<long double> plus{coeffs.positive[n - 1].real(), coeffs.positive[n - 1].imag()};
            const std::complex<long double> minus{coeffs.negative[n - 1].real(), coeffs.negative[n - 1].imag()};
            const long double inv = 1.0L / static_cast<long double>(n);
            s += plus * inv * roots[k] - minus * inv * roots[(grid - k) % grid];
            best_truncated = std::max(best_truncated, std::abs(s));
        }
        out.full_max = std::max(out.full_max, static_cast<double>(std::abs(s)));
        out.truncated_max = std::max(out.truncated_max, static_cast<double>(best_truncated));
    }
    return out;
}

CoefficientCheck lemma2_check(std::span<const std::pair<i64, std::complex<double>>> coeffs,
                          const DirichletCharacter& psi, double resolution) {
    if (!psi.is_primitive()) throw std::invalid_argument("lemma2_check: character must be primitive");
    if (!(resolution > 0.0) || resolution > 1.0) throw std::invalid_argument("lemma2_check: bad resolution");
    const u64 m = psi.modulus();

    std::complex<long double> coprime_sum{0.0L, 0.0L};
    long double lipschitz_mass = 0.0L;
    std::vector<std::pair<i64, std::complex<long double>>> weighted;
    for (const auto& [n, b] : coeffs) {
        const std::complex<long double> bl{b.real(), b.imag()};
        if (gcd(reduce_mod(n, m), m) == 1) coprime_sum += bl;
        lipschitz_mass += std::abs(bl) * static_cast<long double>(std::llabs(n));
        const CharValue v = psi(n);
        if (v) weighted.emplace_back(n, bl * v->value_ld());
    }

    const u64 grid = static_cast<u64>(std::ceil(1.0 / resolution));
    const auto roots = root_table(grid);
    CoefficientCheck out;
    out.grid_points = grid;
    out.grid_allowance = static_cast<double>(kTwoPi * lipschitz_mass / (2.0L * static_cast<long double>(grid)));
    out.rhs = std::sqrt(static_cast<double>(m)) / static_cast<double>(euler_phi(m)) *
              static_cast<double>(std::abs(coprime_sum));
    for (u64 i = 0; i < grid; ++i) {
        std::complex<long double> s{0.0L, 0.0L};
        for (const auto& [n, w] : weighted) {
            s += w * roots[mul_mod(reduce_mod(n, grid), i, grid)];
        }
        out.lhs = std::max(out.lhs, static_cast<double>(std::abs(s)));
    }
    return out;
}

}  // namespace charlab
