#pragma once

/**
 * @file character_group.hpp
 * @brief The unit group (Z/qZ)* as a product of cyclic groups.
 *
 * (Z/qZ)* is split over the prime-power factors of q by CRT:
 *   - odd p^a: cyclic, generated by the smallest primitive root mod p^a;
 *   - 2:       trivial (no generators);
 *   - 4:       generated by -1 (order 2);
 *   - 2^a, a >= 3: generated by -1 (order 2) and 5 (order 2^(a-2)).
 *
 * Each generator is lifted to a residue mod q that is 1 modulo every other
 * factor. Discrete logarithms are answered from a per-factor table, or by
 * baby-step giant-step when a factor exceeds the table cap.
 */

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "charlab/arith.hpp"

namespace charlab {

struct Generator {
    u64 residue;          // lifted generator mod q
    u64 local_residue;    // generator mod its prime-power factor
    u64 order;
    std::size_t factor;   // index into CharacterGroup::factors()
};

class CharacterGroup {
public:
    /// Largest accepted modulus.
    static constexpr u64 kMaxModulus = 10'000'000;
    /// Prime-power factors above this size use baby-step giant-step logs.
    static constexpr u64 kDefaultTableCap = u64{1} << 22;

    /// Throws std::invalid_argument for q == 0 or q > kMaxModulus.
    static std::shared_ptr<const CharacterGroup> build(u64 q, u64 table_cap = kDefaultTableCap);

    u64 modulus() const { return modulus_; }
    u64 phi() const { return phi_; }
    /// lcm of the generator orders (Carmichael lambda of q).
    u64 exponent() const { return exponent_; }
    const std::vector<PrimePower>& factors() const { return factors_; }
    std::span<const Generator> generators() const { return generators_; }
    std::size_t rank() const { return generators_.size(); }

    bool is_unit(i64 n) const { return gcd(reduce_mod(n, modulus_), modulus_) == 1; }

    /// Exponent vector of n over generators(); nullopt for non-units.
    std::optional<std::vector<u64>> discrete_log(i64 n) const;

    /// prod_j generators()[j]^exponents[j] mod q.
    u64 power_product(std::span<const u64> exponents) const;

    /// For factor i: rotation numerator over exponent() contributed by residue r
    /// (0 <= r < factor value) under exponent vector `exponents`, or -1 if r is not a unit.
    /// Used to build whole value tables in O(q * #factors).
    std::vector<std::int64_t> local_rotation_table(std::size_t factor, std::span<const u64> exponents) const;

    /// True when factor i answers logs from a precomputed table.
    bool uses_table(std::size_t factor) const { return !locals_[factor].table.empty() || locals_[factor].orders.empty(); }

private:
    struct LocalGroup {
        PrimePower pp;
        std::vector<u64> gens;     // local generators
        std::vector<u64> orders;
        std::size_t first_generator = 0;
        // Cyclic part: the last generator. For 2^a (a >= 3) the table covers
        // powers of 5 only; residues 3 mod 4 are negated first.
        std::vector<std::int32_t> table;  // residue -> log, -1 if absent
        u64 bsgs_step = 0;
        std::vector<std::pair<u64, u64>> baby;  // sorted (g^j, j), j < bsgs_step
        u64 giant = 1;                          // g^(-bsgs_step)
    };

    CharacterGroup() = default;
    /// Local exponent vector for residue r mod the factor; false if r is not a unit.
    bool local_log(const LocalGroup& lg, u64 r, u64* out) const;
    u64 cyclic_log(const LocalGroup& lg, u64 r) const;

    u64 modulus_ = 1;
    u64 phi_ = 1;
    u64 exponent_ = 1;
    std::vector<PrimePower> factors_;
    std::vector<Generator> generators_;
    std::vector<LocalGroup> locals_;
};

using GroupPtr = std::shared_ptr<const CharacterGroup>;

}  // namespace charlab
