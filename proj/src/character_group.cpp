#include "charlab/character_group.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace charlab {

namespace {

bool is_primitive_root(u64 g, u64 m, u64 phi, const std::vector<PrimePower>& phi_factors) {
    if (gcd(g, m) != 1) return false;
    for (const auto& f : phi_factors) {
        if (pow_mod(g, phi / f.prime, m) == 1) return false;
    }
    return true;
}

u64 smallest_primitive_root(u64 m, u64 phi) {
    const auto phi_factors = factorize(phi);
    for (u64 g = 2; g < m; ++g) {
        if (is_primitive_root(g, m, phi, phi_factors)) return g;
    }
    throw std::logic_error("no primitive root mod " + std::to_string(m));
}

}  // namespace

std::shared_ptr<const CharacterGroup> CharacterGroup::build(u64 q, u64 table_cap) {
    if (q == 0) throw std::invalid_argument("modulus must be positive");
    if (q > kMaxModulus) {
        throw std::invalid_argument("modulus " + std::to_string(q) + " exceeds the cap of " +
                                    std::to_string(kMaxModulus));
    }

    std::shared_ptr<CharacterGroup> group(new CharacterGroup());
    group->modulus_ = q;
    group->factors_ = factorize(q);

    for (std::size_t i = 0; i < group->factors_.size(); ++i) {
        const PrimePower& pp = group->factors_[i];
        const u64 m = pp.value;
        LocalGroup lg;
        lg.pp = pp;
        lg.first_generator = group->generators_.size();
        if (pp.prime == 2) {
            if (pp.exponent == 2) {
                lg.gens = {3};
                lg.orders = {2};
            } else if (pp.exponent >= 3) {
                lg.gens = {m - 1, 5};
                lg.orders = {2, m / 4};
            }
        } else {
            const u64 phi = m / pp.prime * (pp.prime - 1);
            lg.gens = {smallest_primitive_root(m, phi)};
            lg.orders = {phi};
        }

        if (!lg.gens.empty()) {
            const u64 g = lg.gens.back();
            const u64 order = lg.orders.back();
            if (m <= table_cap) {
                lg.table.assign(m, -1);
                u64 x = 1;
                for (u64 j = 0; j < order; ++j) {
                    lg.table[x] = static_cast<std::int32_t>(j);
                    x = mul_mod(x, g, m);
                }
            } else {
                lg.bsgs_step = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(order))));
                lg.baby.reserve(lg.bsgs_step);
                u64 x = 1;
                for (u64 j = 0; j < lg.bsgs_step; ++j) {
                    lg.baby.emplace_back(x, j);
                    x = mul_mod(x, g, m);
                }
                std::sort(lg.baby.begin(), lg.baby.end());
                lg.giant = inverse_mod(x, m);
            }
        }

        const u64 other = q / m;
        for (std::size_t j = 0; j < lg.gens.size(); ++j) {
            const u64 g = lg.gens[j];
            u64 lifted = g;
            if (other > 1) {
                const u64 t = mul_mod((g + m - 1) % m, inverse_mod(other % m, m), m);
                lifted = 1 + other * t;
            }
            group->generators_.push_back({lifted % q, g, lg.orders[j], i});
        }
        group->locals_.push_back(std::move(lg));
    }

    group->phi_ = 1;
    group->exponent_ = 1;
    for (const auto& g : group->generators_) {
        group->phi_ *= g.order;
        group->exponent_ = lcm(group->exponent_, g.order);
    }
    return group;
}

u64 CharacterGroup::cyclic_log(const LocalGroup& lg, u64 r) const {
    if (!lg.table.empty()) {
        const std::int32_t v = lg.table[r];
        if (v < 0) throw std::logic_error("discrete log: residue outside the cyclic subgroup");
        return static_cast<u64>(v);
    }
    const u64 m = lg.pp.value;
    u64 y = r;
    for (u64 i = 0; i <= lg.bsgs_step; ++i) {
        auto it = std::lower_bound(lg.baby.begin(), lg.baby.end(), std::pair<u64, u64>{y, 0});
        if (it != lg.baby.end() && it->first == y) return (i * lg.bsgs_step + it->second) % lg.orders.back();
        y = mul_mod(y, lg.giant, m);
    }
    throw std::logic_error("discrete log: baby-step giant-step failed");
}

bool CharacterGroup::local_log(const LocalGroup& lg, u64 r, u64* out) const {
    const u64 m = lg.pp.value;
    r %= m;
    if (r % lg.pp.prime == 0) return false;
    if (lg.gens.empty()) return true;
    if (lg.pp.prime == 2 && lg.pp.exponent >= 3) {
        const bool negative = (r % 4) == 3;
        out[0] = negative ? 1 : 0;
        out[1] = cyclic_log(lg, negative ? m - r : r);
    } else {
        out[0] = cyclic_log(lg, r);
    }
    return true;
}

std::optional<std::vector<u64>> CharacterGroup::discrete_log(i64 n) const {
    const u64 r = reduce_mod(n, modulus_);
    std::vector<u64> exps(generators_.size(), 0);
    if (modulus_ == 1) return exps;
    for (const auto& lg : locals_) {
        if (!local_log(lg, r, exps.data() + lg.first_generator)) return std::nullopt;
    }
    return exps;
}

u64 CharacterGroup::power_product(std::span<const u64> exponents) const {
    if (exponents.size() != generators_.size()) throw std::invalid_argument("power_product: wrong exponent count");
    u64 x = 1 % modulus_;
    for (std::size_t j = 0; j < generators_.size(); ++j) {
        x = mul_mod(x, pow_mod(generators_[j].residue, exponents[j], modulus_), modulus_);
    }
    return x;
}

std::vector<std::int64_t> CharacterGroup::local_rotation_table(std::size_t factor,
                                                               std::span<const u64> exponents) const {
    const LocalGroup& lg = locals_.at(factor);
    const u64 m = lg.pp.value;
    const u64 big = exponent_;
    std::vector<std::int64_t> rot(m, -1);
    if (lg.gens.empty()) {
        for (u64 r = 0; r < m; ++r) {
            if (r % lg.pp.prime != 0) rot[r] = 0;
        }
        return rot;
    }
    const std::size_t cyc = lg.gens.size() - 1;
    const u64 order = lg.orders[cyc];
    const u64 step = mul_mod(exponents[lg.first_generator + cyc] % order, big / order, big);
    u64 x = 1, acc = 0;
    for (u64 j = 0; j < order; ++j) {
        rot[x] = static_cast<std::int64_t>(acc);
        x = mul_mod(x, lg.gens[cyc], m);
        acc = (acc + step) % big;
    }
    if (cyc == 1) {
        // 2^a, a >= 3: residues -5^t pick up the rotation of the -1 generator.
        const u64 sign = mul_mod(exponents[lg.first_generator] % 2, big / 2, big);
        for (u64 r = 1; r < m; r += 4) {
            rot[m - r] = static_cast<std::int64_t>((static_cast<u64>(rot[r]) + sign) % big);
        }
    }
    return rot;
}

}  // namespace charlab
