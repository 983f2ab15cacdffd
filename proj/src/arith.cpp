#include "charlab/arith.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace charlab {

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::vector<PrimePower> factorize(u64 n) {
    std::vector<PrimePower> out;
    auto take = [&](u64 p) {
        unsigned e = 0;
        u64 v = 1;
        while (n % p == 0) {
            n /= p;
            v *= p;
            ++e;
        }
        if (e > 0) out.push_back({p, e, v});
    };
    take(2);
    take(3);
    for (u64 p = 5; p * p <= n; p += 6) {
        take(p);
        take(p + 2);
    }
    if (n > 1) out.push_back({n, 1, n});
    return out;
}

u64 euler_phi(u64 n) {
    u64 phi = 1;
    for (const auto& f : factorize(n)) phi *= (f.value / f.prime) * (f.prime - 1);
    return phi;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> primes_up_to(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (u64 p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        for (u64 m = p * p; m <= limit; m += p) composite[m] = true;
    }
    return primes;
}

u64 multiplicative_order(u64 a, u64 m) {
    if (gcd(a % m, m) != 1) throw std::invalid_argument("multiplicative_order: a is not a unit");
    u64 order = euler_phi(m);
    for (const auto& f : factorize(order)) {
        for (unsigned i = 0; i < f.exponent; ++i) {
            if (pow_mod(a, order / f.prime, m) != 1 % m) break;
            order /= f.prime;
        }
    }
    return order;
}

u64 inverse_mod(u64 a, u64 m) {
    i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
    i64 old_s = 1, s = 0;
    while (r != 0) {
        const i64 q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    if (old_r != 1) throw std::invalid_argument("inverse_mod: not invertible");
    return reduce_mod(old_s, m);
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> divs{1};
    for (const auto& f : factorize(n)) {
        const std::size_t base = divs.size();
        u64 pk = 1;
        for (unsigned e = 1; e <= f.exponent; ++e) {
            pk *= f.prime;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace charlab
