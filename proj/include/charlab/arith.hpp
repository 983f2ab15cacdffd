#pragma once

/**
 * @file arith.hpp
 * @brief Elementary integer arithmetic shared by every module.
 *
 * All routines work on 64-bit unsigned integers; products are formed in
 * 128 bits so moduli up to 2^63 are safe. The library itself never needs
 * anything near that range (character moduli are capped at 10^7).
 */

#include <cstdint>
#include <numeric>
#include <vector>

namespace charlab {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
    u64 prime;
    unsigned exponent;
    u64 value;  // prime^exponent

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

inline u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }
inline u64 lcm(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

/// (a * b) mod m without overflow.
inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

/// base^exp mod m by repeated squaring. pow_mod(x, 0, 1) == 0.
u64 pow_mod(u64 base, u64 exp, u64 m);

/// Non-negative representative of n mod m.
inline u64 reduce_mod(i64 n, u64 m) {
    const i64 r = n % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

/// Prime-power factorization by trial division, primes in increasing order.
/// factorize(1) is empty.
std::vector<PrimePower> factorize(u64 n);

u64 euler_phi(u64 n);

/// Deterministic for all 64-bit inputs (Miller-Rabin with a fixed base set).
bool is_prime(u64 n);

/// All primes <= limit (sieve of Eratosthenes).
std::vector<u64> primes_up_to(u64 limit);

/// Multiplicative order of a mod m; requires gcd(a, m) == 1.
u64 multiplicative_order(u64 a, u64 m);

/// Modular inverse of a mod m; requires gcd(a, m) == 1.
u64 inverse_mod(u64 a, u64 m);

/// Positive divisors of n in increasing order.
std::vector<u64> divisors(u64 n);

}  // namespace charlab
