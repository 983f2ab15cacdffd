#pragma once

/**
 * @file character.hpp
 * @brief Dirichlet characters, Kronecker symbols, Gauss sums and twists.
 *
 * A character mod q is stored as an exponent vector over the generators of
 * its CharacterGroup: chi(g_j) = e(e_j / o_j). Values are exact RootOfUnity
 * fractions.
 *
 * Labels. A character is addressed as "q.i" where i is the mixed-radix
 * integer sum_j e_j * prod_{k<j} o_k of its exponent vector. Generators are
 * chosen deterministically (smallest primitive roots, and -1, 5 for powers
 * of two), so labels are stable across runs. Index 0 is the principal
 * character.
 */

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "charlab/character_group.hpp"
#include "charlab/root_of_unity.hpp"

namespace charlab {

/// chi(n): a root of unity, or nullopt when gcd(n, q) > 1.
using CharValue = std::optional<RootOfUnity>;

enum class Parity { even, odd };

class DirichletCharacter {
public:
    static DirichletCharacter principal(GroupPtr group);
    static DirichletCharacter from_exponents(GroupPtr group, std::vector<u64> exponents);
    static DirichletCharacter from_index(GroupPtr group, u64 index);
    /// The character taking the given value on each generator; throws if a
    /// value's order does not divide the generator's order.
    static DirichletCharacter from_generator_values(GroupPtr group, std::span<const RootOfUnity> values);

    const CharacterGroup& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }
    u64 modulus() const { return group_->modulus(); }
    std::span<const u64> exponents() const { return exponents_; }

    u64 order() const { return order_; }
    Parity parity() const { return parity_; }
    bool is_even() const { return parity_ == Parity::even; }
    bool is_odd() const { return parity_ == Parity::odd; }
    bool is_principal() const { return order_ == 1; }
    bool is_real() const { return order_ <= 2; }
    u64 conductor() const { return conductor_; }
    bool is_primitive() const { return conductor_ == modulus(); }

    u64 index() const { return index_; }
    std::string label() const;

    CharValue operator()(i64 n) const;

    /// Values on [0, q): rotation numerators over order(), -1 where chi vanishes.
    std::vector<std::int32_t> value_table() const;

    DirichletCharacter conj() const;

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.modulus() == b.modulus() && a.exponents_ == b.exponents_;
    }

private:
    DirichletCharacter(GroupPtr group, std::vector<u64> exponents);

    GroupPtr group_;
    std::vector<u64> exponents_;
    u64 order_ = 1;
    Parity parity_ = Parity::even;
    u64 conductor_ = 1;
    u64 index_ = 0;
};

struct CharacterFilter {
    std::optional<Parity> parity;
    std::optional<u64> order;
    bool primitive_only = false;
};

/// Characters matching the filter, in increasing label index.
std::vector<DirichletCharacter> enumerate_characters(const GroupPtr& group, const CharacterFilter& filter = {});

/// Kronecker symbol (n/m) for m >= 1; reduces to the Jacobi symbol for odd m.
int kronecker(i64 n, u64 m);

/// The real character n -> (n/p) mod an odd prime p, located in the dual group.
DirichletCharacter legendre_character(GroupPtr group);

/// Smallest conductor f | q such that chi is trivial on units = 1 mod f, by direct scan.
/// Independent of the closed-form conductor; kept for verification.
u64 conductor_by_scan(const DirichletCharacter& chi);

/// tau(chi) = sum_{a mod q} chi(a) e(a/q), summed exactly then rendered.
std::complex<double> gauss_sum(const DirichletCharacter& chi);

/// Pointwise product of xi mod k and psi mod l as a character mod k*l.
/// Throws if gcd(k, l) > 1. The target group may be supplied to reuse it.
DirichletCharacter twist(const DirichletCharacter& xi, const DirichletCharacter& psi, GroupPtr target = nullptr);

/// Parses "q.i" labels.
std::pair<u64, u64> parse_label(const std::string& label);

}  // namespace charlab
