#include "charlab/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace charlab {

namespace {

constexpr u64 kSegment = u64{1} << 18;

void check_y(double y) {
    if (!(y >= 2.0)) throw std::invalid_argument("smoothness bound y must be at least 2");
}

void check_alpha(double alpha) {
    if (!(alpha >= 1.0 && alpha <= 2.0)) throw std::invalid_argument("alpha must lie in [1, 2]");
}

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

u64 largest_prime_factor(u64 n) {
    if (n < 2) throw std::invalid_argument("largest_prime_factor: n must be at least 2");
    return factorize(n).back().prime;
}

void for_each_lpf_segment(u64 lo, u64 hi, const std::function<void(u64, std::span<const u64>)>& visit) {
    if (lo < 1) lo = 1;
    if (hi > kSieveCap) {
        throw std::invalid_argument("sieve range " + std::to_string(hi) + " exceeds the cap of " +
                                    std::to_string(kSieveCap));
    }
    if (hi < lo) return;
    const auto primes = primes_up_to(isqrt(hi));
    std::vector<u64> rest(kSegment), lpf(kSegment);
    for (u64 first = lo; first <= hi; first += kSegment) {
        const u64 last = std::min(hi, first + kSegment - 1);
        const std::size_t len = static_cast<std::size_t>(last - first + 1);
        for (std::size_t i = 0; i < len; ++i) {
            rest[i] = first + i;
            lpf[i] = 1;
        }
        for (u64 p : primes) {
            if (p * p > last) break;
            for (u64 m = (first + p - 1) / p * p; m <= last; m += p) {
                const std::size_t i = static_cast<std::size_t>(m - first);
                do {
                    rest[i] /= p;
                } while (rest[i] % p == 0);
                lpf[i] = p;
            }
        }
        for (std::size_t i = 0; i < len; ++i) {
            if (rest[i] > 1) lpf[i] = rest[i];
        }
        visit(first, std::span<const u64>(lpf.data(), len));
    }
}

u64 psi_count(double x, double y) {
    check_y(y);
    if (!(x >= 0.0)) throw std::invalid_argument("psi_count: x must be nonnegative");
    if (x > static_cast<double>(kSieveCap)) {
        throw std::invalid_argument("psi_count: x exceeds the sieve cap of " + std::to_string(kSieveCap));
    }
    const u64 top = static_cast<u64>(std::floor(x));
    const u64 bound = static_cast<u64>(std::floor(y));
    if (bound >= top) return top;
    u64 count = 0;
    for_each_lpf_segment(1, top, [&](u64, std::span<const u64> lpf) {
        for (u64 p : lpf) count += (p <= bound) ? 1 : 0;
    });
    return count;
}

u64 power_floor(double y, double alpha) {
    const long double v = std::pow(static_cast<long double>(y), static_cast<long double>(alpha));
    const long double nearest = std::round(v);
    if (std::fabs(v - nearest) <= 1e-9L * std::max(1.0L, v)) return static_cast<u64>(nearest);
    return static_cast<u64>(std::floor(v));
}

SmoothSumResult rough_harmonic_sum(double y, double alpha) {
    check_y(y);
    check_alpha(alpha);
    SmoothSumResult r;
    r.y = y;
    r.alpha = alpha;
    r.upper = power_floor(y, alpha);
    if (r.upper > kSieveCap) throw std::invalid_argument("rough_harmonic_sum: y^alpha exceeds the sieve cap");
    r.main_term = (alpha * std::log(alpha) - alpha + 1.0) * std::log(y);

    const u64 bound = static_cast<u64>(std::floor(y));
    long double sum = 0.0L;
    if (r.upper > bound) {
        for_each_lpf_segment(bound + 1, r.upper, [&](u64 first, std::span<const u64> lpf) {
            for (std::size_t i = 0; i < lpf.size(); ++i) {
                if (lpf[i] > bound) sum += 1.0L / static_cast<long double>(first + i);
            }
        });
    }
    r.exact_sum = static_cast<double>(sum);
    r.discrepancy = r.exact_sum - r.main_term;
    return r;
}

double smooth_harmonic_sum(double y, double alpha) {
    check_y(y);
    check_alpha(alpha);
    const u64 upper = power_floor(y, alpha);
    const u64 bound = static_cast<u64>(std::floor(y));
    long double sum = 0.0L;
    if (upper > bound) {
        for_each_lpf_segment(bound + 1, upper, [&](u64 first, std::span<const u64> lpf) {
            for (std::size_t i = 0; i < lpf.size(); ++i) {
                if (lpf[i] <= bound) sum += 1.0L / static_cast<long double>(first + i);
            }
        });
    }
    return static_cast<double>(sum);
}

PartialSummationCheck smooth_sum_partial_summation(double y, double alpha, double step) {
    check_y(y);
    check_alpha(alpha);
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    const u64 upper = power_floor(y, alpha);
    if (upper > 10'000'000) throw std::invalid_argument("smooth_sum_partial_summation: y^alpha above 10^7");
    const u64 bound = static_cast<u64>(std::floor(y));

    // prefix[n] = Psi(n, y)
    std::vector<std::uint32_t> prefix(upper + 1, 0);
    for_each_lpf_segment(1, upper, [&](u64 first, std::span<const u64> lpf) {
        for (std::size_t i = 0; i < lpf.size(); ++i) {
            const u64 n = first + i;
            prefix[n] = prefix[n - 1] + (lpf[i] <= bound ? 1u : 0u);
        }
    });
    auto psi = [&](long double t) -> long double {
        const u64 n = std::min<u64>(upper, static_cast<u64>(std::floor(t * (1.0L + 1e-12L))));
        return static_cast<long double>(prefix[n]);
    };

    PartialSummationCheck out;
    out.direct = smooth_harmonic_sum(y, alpha);

    const long double log_y = std::log(static_cast<long double>(y));
    const long double a = alpha;
    const std::size_t steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((a - 1.0L) / step)));
    const long double h = (a - 1.0L) / static_cast<long double>(steps);
    out.step = static_cast<double>(h);
    auto integrand = [&](long double u) {
        const long double t = std::pow(static_cast<long double>(y), u);
        return psi(t) / t;
    };
    long double integral = 0.0L;
    if (a > 1.0L) {
        long double prev = integrand(1.0L);
        for (std::size_t i = 1; i <= steps; ++i) {
            const long double u = (i == steps) ? a : 1.0L + h * static_cast<long double>(i);
            const long double cur = integrand(u);
            integral += 0.5L * h * (prev + cur);
            prev = cur;
        }
    }
    const long double top = std::pow(static_cast<long double>(y), a);
    out.via_psi = static_cast<double>(psi(top) / top - psi(static_cast<long double>(y)) / y + log_y * integral);

    // Jumps of Psi(t)/t sit at smooth n in (y, y^a], each of size 1/n; between
    // jumps the integrand decreases, so its variation is at most 1 + 2 * jumps.
    const double jumps = out.direct;
    out.quadrature_bound = static_cast<double>(log_y * h) * (1.0 + 2.0 * jumps);
    return out;
}

double vinogradov_objective(double alpha) {
    check_alpha(alpha);
    return -2.0 * alpha * std::log(alpha) + 3.0 * alpha - 2.0;
}

double vinogradov_argmax() { return std::exp(0.5); }

double vinogradov_argmax_grid(double step) {
    if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
    const std::size_t n = static_cast<std::size_t>(std::ceil(1.0 / step));
    double best_alpha = 1.0;
    double best = vinogradov_objective(1.0);
    for (std::size_t i = 1; i <= n; ++i) {
        const double alpha = std::min(2.0, 1.0 + static_cast<double>(i) / static_cast<double>(n));
        const double v = vinogradov_objective(alpha);
        if (v > best) {
            best = v;
            best_alpha = alpha;
        }
    }
    return best_alpha;
}

}  // namespace charlab
