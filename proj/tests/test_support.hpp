#pragma once

/// @file test_support.hpp
/// Brute-force oracles shared by the unit and acceptance tests. Nothing here
/// calls into the character machinery of the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <vector>

namespace test_support {

using u64 = std::uint64_t;

inline u64 naive_gcd(u64 a, u64 b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

/// A character given by its full value table: value[n] is the rotation
/// numerator over `order_base` (chi(n) = e(value[n] / order_base)), or -1 when
/// gcd(n, q) > 1.
struct NaiveCharacter {
    u64 q = 1;
    u64 order_base = 1;
    std::vector<std::int64_t> value;

    std::complex<double> at(u64 n) const {
        const std::int64_t v = value[n % q];
        if (v < 0) return {0.0, 0.0};
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(v) / static_cast<double>(order_base);
        return {std::cos(angle), std::sin(angle)};
    }
    bool is_one(u64 n) const { return value[n % q] == 0; }
};

/// Exponent of (Z/qZ)^* by brute force over element orders.
inline u64 naive_exponent(u64 q) {
    u64 e = 1;
    for (u64 u = 1; u < q; ++u) {
        if (naive_gcd(u, q) != 1) continue;
        u64 x = u % q, ord = 1;
        while (x != 1 % q) {
            x = x * u % q;
            ++ord;
        }
        e = e / naive_gcd(e, ord) * ord;
    }
    return e;
}

/**
 * Every character mod q, built without discrete logarithms: units are
 * adjoined greedily in increasing order, each new unit u gets every value x
 * with r x = chi(u^r) where r is the relative order of u over the subgroup
 * so far, and values spread over the enlarged subgroup by multiplication.
 */
inline std::vector<NaiveCharacter> naive_characters(u64 q) {
    const u64 L = naive_exponent(q);
    std::vector<u64> units;
    for (u64 u = 0; u < q; ++u) {
        if (naive_gcd(u, q) == 1) units.push_back(u);
    }
    if (q == 1) units = {0};

    std::vector<NaiveCharacter> out;
    NaiveCharacter start;
    start.q = q;
    start.order_base = L;
    start.value.assign(q, -1);
    start.value[1 % q] = 0;
    std::vector<u64> members = {1 % q};

    // Depth-first over the choice of value for each adjoined unit.
    struct Frame {
        NaiveCharacter chi;
        std::vector<u64> members;
    };
    std::vector<Frame> stack = {{start, members}};
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        std::set<u64> in(f.members.begin(), f.members.end());
        std::optional<u64> next;
        for (u64 u : units) {
            if (!in.count(u)) {
                next = u;
                break;
            }
        }
        if (!next) {
            out.push_back(std::move(f.chi));
            continue;
        }
        const u64 u = *next;
        u64 r = 1, pw = u;
        while (!in.count(pw)) {
            pw = pw * u % q;
            ++r;
        }
        const std::int64_t target = f.chi.value[pw];
        for (u64 x = 0; x < L; ++x) {
            if ((r * x) % L != static_cast<u64>(target)) continue;
            Frame g = f;
            u64 upow = 1 % q;
            for (u64 k = 0; k < r; ++k) {
                if (k > 0) {
                    for (u64 h : f.members) {
                        const u64 n = h * upow % q;
                        g.chi.value[n] = static_cast<std::int64_t>((static_cast<u64>(f.chi.value[h]) + k * x) % L);
                        g.members.push_back(n);
                    }
                }
                upow = upow * u % q;
            }
            stack.push_back(std::move(g));
        }
    }
    return out;
}

/// max_{1 <= t <= q} |S(t)| and the first t attaining it (ties within 1e-9 keep the earlier t).
inline std::pair<double, u64> naive_max_sum(const NaiveCharacter& chi) {
    std::complex<double> s{0.0, 0.0};
    double best = -1.0;
    u64 arg = 1;
    for (u64 t = 1; t <= chi.q; ++t) {
        s += chi.at(t);
        if (std::abs(s) > best + 1e-9) {
            best = std::abs(s);
            arg = t;
        }
    }
    return {best, arg};
}

/// Smallest n with chi(n) not in {0, 1}; nullopt for the principal character.
inline std::optional<u64> naive_least_nonresidue(const NaiveCharacter& chi) {
    for (u64 n = 2; n < chi.q; ++n) {
        if (chi.value[n] > 0) return n;
    }
    return std::nullopt;
}

/// Smallest f | q with chi(n) = 1 for every unit n = 1 (mod f).
inline u64 naive_conductor(const NaiveCharacter& chi) {
    for (u64 f = 1; f <= chi.q; ++f) {
        if (chi.q % f) continue;
        bool ok = true;
        for (u64 n = 1 % chi.q; n < chi.q + (chi.q == 1) && ok; ++n) {
            if (n % f == 1 % f && chi.value[n % chi.q] > 0) ok = false;
        }
        if (ok) return f;
    }
    return chi.q;
}

/// Legendre symbol by the set of squares.
inline int naive_legendre(u64 n, u64 p) {
    n %= p;
    if (n == 0) return 0;
    for (u64 x = 1; x < p; ++x) {
        if (x * x % p == n) return 1;
    }
    return -1;
}

/// Largest prime factor by trial division; 1 for n = 1.
inline u64 naive_lpf(u64 n) {
    u64 best = 1;
    for (u64 p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            best = p;
            n /= p;
        }
    }
    return n > 1 ? n : best;
}

}  // namespace test_support
