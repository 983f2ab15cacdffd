#include "charlab/character.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace charlab {

namespace {

unsigned valuation(u64 n, u64 p) {
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

u64 ipow(u64 base, unsigned e) {
    u64 r = 1;
    while (e-- > 0) r *= base;
    return r;
}

}  // namespace

DirichletCharacter::DirichletCharacter(GroupPtr group, std::vector<u64> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
    const auto gens = group_->generators();
    if (exponents_.size() != gens.size()) throw std::invalid_argument("exponent vector has the wrong length");

    u64 radix = 1;
    for (std::size_t j = 0; j < gens.size(); ++j) {
        exponents_[j] %= gens[j].order;
        order_ = lcm(order_, gens[j].order / gcd(exponents_[j], gens[j].order));
        index_ += exponents_[j] * radix;
        radix *= gens[j].order;
    }

    // Conductor: product of local conductors.
    conductor_ = 1;
    const auto& factors = group_->factors();
    std::size_t j = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const PrimePower& pp = factors[i];
        std::vector<u64> local;
        std::vector<u64> orders;
        while (j < gens.size() && gens[j].factor == i) {
            local.push_back(exponents_[j]);
            orders.push_back(gens[j].order);
            ++j;
        }
        if (pp.prime == 2) {
            if (pp.exponent == 2) {
                if (local[0] != 0) conductor_ *= 4;
            } else if (pp.exponent >= 3) {
                const u64 o5 = orders[1] / gcd(local[1], orders[1]);
                if (o5 == 1) {
                    if (local[0] != 0) conductor_ *= 4;
                } else {
                    conductor_ *= ipow(2, valuation(o5, 2) + 2);
                }
            }
        } else {
            const u64 o = orders[0] / gcd(local[0], orders[0]);
            if (o > 1) conductor_ *= ipow(pp.prime, valuation(o, pp.prime) + 1);
        }
    }

    const CharValue minus_one = (*this)(-1);
    parity_ = (minus_one && minus_one->is_one()) ? Parity::even : Parity::odd;
}

DirichletCharacter DirichletCharacter::principal(GroupPtr group) {
    const std::size_t r = group->rank();
    return DirichletCharacter(std::move(group), std::vector<u64>(r, 0));
}

DirichletCharacter DirichletCharacter::from_exponents(GroupPtr group, std::vector<u64> exponents) {
    return DirichletCharacter(std::move(group), std::move(exponents));
}

DirichletCharacter DirichletCharacter::from_index(GroupPtr group, u64 index) {
    if (index >= group->phi()) {
        throw std::invalid_argument("character index " + std::to_string(index) + " out of range for modulus " +
                                    std::to_string(group->modulus()));
    }
    std::vector<u64> exps;
    for (const auto& g : group->generators()) {
        exps.push_back(index % g.order);
        index /= g.order;
    }
    return DirichletCharacter(std::move(group), std::move(exps));
}

DirichletCharacter DirichletCharacter::from_generator_values(GroupPtr group, std::span<const RootOfUnity> values) {
    const auto gens = group->generators();
    if (values.size() != gens.size()) throw std::invalid_argument("one value per generator required");
    std::vector<u64> exps(gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
        const RootOfUnity& v = values[j];
        if (gens[j].order % v.denominator() != 0) {
            throw std::invalid_argument("generator value has order not dividing the generator order");
        }
        exps[j] = v.numerator() * (gens[j].order / v.denominator());
    }
    return DirichletCharacter(std::move(group), std::move(exps));
}

std::string DirichletCharacter::label() const {
    return std::to_string(modulus()) + "." + std::to_string(index_);
}

CharValue DirichletCharacter::operator()(i64 n) const {
    const auto logs = group_->discrete_log(n);
    if (!logs) return std::nullopt;
    const u64 big = group_->exponent();
    const auto gens = group_->generators();
    u64 num = 0;
    for (std::size_t j = 0; j < gens.size(); ++j) {
        const u64 scaled = mul_mod(exponents_[j], (*logs)[j], gens[j].order);
        num = (num + scaled * (big / gens[j].order)) % big;
    }
    return RootOfUnity(static_cast<std::int64_t>(num), big);
}

std::vector<std::int32_t> DirichletCharacter::value_table() const {
    const u64 q = modulus();
    const u64 big = group_->exponent();
    const u64 shrink = big / order_;
    const auto& factors = group_->factors();
    std::vector<std::int32_t> table(q, 0);
    if (factors.empty()) return table;

    std::vector<std::vector<std::int64_t>> locals;
    locals.reserve(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) locals.push_back(group_->local_rotation_table(i, exponents_));

    for (u64 n = 0; n < q; ++n) {
        u64 acc = 0;
        bool unit = true;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const std::int64_t r = locals[i][n % factors[i].value];
            if (r < 0) {
                unit = false;
                break;
            }
            acc += static_cast<u64>(r);
        }
        table[n] = unit ? static_cast<std::int32_t>((acc % big) / shrink) : -1;
    }
    return table;
}

DirichletCharacter DirichletCharacter::conj() const {
    std::vector<u64> exps(exponents_.size());
    const auto gens = group_->generators();
    for (std::size_t j = 0; j < exps.size(); ++j) exps[j] = (gens[j].order - exponents_[j]) % gens[j].order;
    return DirichletCharacter(group_, std::move(exps));
}

std::vector<DirichletCharacter> enumerate_characters(const GroupPtr& group, const CharacterFilter& filter) {
    std::vector<DirichletCharacter> out;
    auto keep = [&](DirichletCharacter chi) {
        if (filter.parity && chi.parity() != *filter.parity) return;
        if (filter.order && chi.order() != *filter.order) return;
        if (filter.primitive_only && !chi.is_primitive()) return;
        out.push_back(std::move(chi));
    };
    if (!filter.order) {
        for (u64 i = 0; i < group->phi(); ++i) keep(DirichletCharacter::from_index(group, i));
        return out;
    }
    // Characters whose order divides d have e_j in multiples of o_j / gcd(o_j, d).
    const u64 d = *filter.order;
    if (d == 0) return out;
    const auto gens = group->generators();
    std::vector<u64> counts, steps;
    u64 total = 1;
    for (const auto& g : gens) {
        counts.push_back(gcd(g.order, d));
        steps.push_back(g.order / counts.back());
        total *= counts.back();
    }
    for (u64 i = 0; i < total; ++i) {
        std::vector<u64> exps(gens.size());
        u64 rest = i;
        for (std::size_t j = 0; j < gens.size(); ++j) {
            exps[j] = (rest % counts[j]) * steps[j];
            rest /= counts[j];
        }
        keep(DirichletCharacter::from_exponents(group, std::move(exps)));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.index() < b.index(); });
    return out;
}

int kronecker(i64 n, u64 m) {
    if (m == 0) throw std::invalid_argument("kronecker: modulus must be positive");
    int result = 1;
    while (m % 2 == 0) {
        m /= 2;
        const u64 r8 = reduce_mod(n, 8);
        if (r8 % 2 == 0) return 0;
        if (r8 == 3 || r8 == 5) result = -result;
    }
    u64 a = reduce_mod(n, m);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const u64 r8 = m % 8;
            if (r8 == 3 || r8 == 5) result = -result;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) result = -result;
        a %= m;
    }
    return m == 1 ? result : 0;
}

DirichletCharacter legendre_character(GroupPtr group) {
    const u64 p = group->modulus();
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("legendre_character: modulus must be an odd prime");
    return DirichletCharacter::from_exponents(std::move(group), {(p - 1) / 2});
}

u64 conductor_by_scan(const DirichletCharacter& chi) {
    const u64 q = chi.modulus();
    for (u64 f : divisors(q)) {
        bool induced = true;
        for (u64 n = 1 % f; n < q && induced; n += f) {
            if (n == 0) continue;
            const CharValue v = chi(static_cast<i64>(n));
            if (v && !v->is_one()) induced = false;
        }
        if (induced) return f;
    }
    return q;
}

std::complex<double> gauss_sum(const DirichletCharacter& chi) {
    const u64 q = chi.modulus();
    const u64 d = chi.order();
    const u64 total = lcm(d, q);
    const auto table = chi.value_table();
    if (total <= (u64{1} << 24)) {
        RootCounts counts(total);
        for (u64 a = 0; a < q; ++a) {
            if (table[a] < 0) continue;
            counts.add_index(static_cast<u64>(table[a]) * (total / d) + a * (total / q));
        }
        return counts.value();
    }
    std::complex<long double> sum{0.0L, 0.0L};
    for (u64 a = 0; a < q; ++a) {
        if (table[a] < 0) continue;
        const u64 k = (mul_mod(static_cast<u64>(table[a]), total / d, total) + mul_mod(a, total / q, total)) % total;
        sum += unit_root(k, total);
    }
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

DirichletCharacter twist(const DirichletCharacter& xi, const DirichletCharacter& psi, GroupPtr target) {
    const u64 k = xi.modulus();
    const u64 l = psi.modulus();
    if (gcd(k, l) != 1) {
        throw std::invalid_argument("twist: moduli " + std::to_string(k) + " and " + std::to_string(l) +
                                    " are not coprime");
    }
    if (!target) target = CharacterGroup::build(k * l);
    if (target->modulus() != k * l) throw std::invalid_argument("twist: target group has the wrong modulus");

    std::vector<RootOfUnity> values;
    for (const auto& g : target->generators()) {
        const CharValue a = xi(static_cast<i64>(g.residue));
        const CharValue b = psi(static_cast<i64>(g.residue));
        values.push_back(*a * *b);
    }
    DirichletCharacter chi = DirichletCharacter::from_generator_values(std::move(target), values);
    if (xi.is_odd() && psi.is_odd() && xi.is_primitive() && psi.is_primitive()) {
        if (!chi.is_even() || !chi.is_primitive()) {
            throw std::logic_error("twist of two odd primitive characters is not even primitive");
        }
    }
    return chi;
}

std::pair<u64, u64> parse_label(const std::string& label) {
    const auto dot = label.find('.');
    if (dot == std::string::npos) throw std::invalid_argument("malformed character label '" + label + "'");
    u64 q = 0, i = 0;
    const char* begin = label.data();
    const char* end = begin + label.size();
    auto r1 = std::from_chars(begin, begin + dot, q);
    auto r2 = std::from_chars(begin + dot + 1, end, i);
    if (r1.ec != std::errc{} || r1.ptr != begin + dot || r2.ec != std::errc{} || r2.ptr != end || q == 0) {
        throw std::invalid_argument("malformed character label '" + label + "'");
    }
    return {q, i};
}

}  // namespace charlab
