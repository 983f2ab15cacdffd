#pragma once

/**
 * @file root_of_unity.hpp
 * @brief Exact roots of unity and exact sums of them.
 *
 * Character values are e(r/d) = exp(2*pi*i*r/d) for a reduced fraction r/d.
 * Keeping the fraction instead of a floating pair means products are exact
 * and long sums never drift; conversion to std::complex happens only when a
 * caller needs a number.
 *
 * Two accumulators are provided:
 *   - RootCounts: multiplicities of each d-th root of unity. O(1) per term,
 *     exact, but not canonical (1 + z + ... + z^(d-1) = 0 is not visible).
 *   - CyclotomicInteger: coordinates in the power basis of Z[z_d] reduced
 *     modulo the d-th cyclotomic polynomial. Canonical, so equality and
 *     zero tests are exact. O(phi(d)) per term.
 */

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace charlab {

class RootOfUnity {
public:
    /// e(0/1) = 1.
    RootOfUnity() = default;
    /// e(numerator/denominator); any integer numerator, denominator >= 1.
    RootOfUnity(std::int64_t numerator, std::uint64_t denominator);

    std::uint64_t numerator() const { return num_; }
    std::uint64_t denominator() const { return den_; }

    bool is_one() const { return num_ == 0; }
    /// Exact: value is +1 or -1.
    bool is_real() const { return den_ <= 2; }

    RootOfUnity conj() const;
    RootOfUnity pow(std::int64_t k) const;

    /// Rotation fraction scaled to a common denominator; requires den | d.
    std::uint64_t numerator_over(std::uint64_t d) const;

    std::complex<double> value() const;
    std::complex<long double> value_ld() const;

    std::string to_string() const;  // "r/d"

    friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b);
    friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;

private:
    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

/// e(k/d) in long double, exact for d in {1, 2, 4}.
std::complex<long double> unit_root(std::uint64_t k, std::uint64_t d);

/// Coefficients of the d-th cyclotomic polynomial, lowest degree first.
std::vector<std::int64_t> cyclotomic_polynomial(std::uint64_t d);

class CyclotomicInteger;

/// Multiset of d-th roots of unity; represents sum_k counts[k] * e(k/d).
class RootCounts {
public:
    explicit RootCounts(std::uint64_t order = 1);

    std::uint64_t order() const { return order_; }
    void add(const RootOfUnity& r, std::int64_t multiplicity = 1);
    void add_index(std::uint64_t k, std::int64_t multiplicity = 1) { counts_[k % order_] += multiplicity; }

    std::span<const std::int64_t> counts() const { return counts_; }
    std::complex<double> value() const;
    std::complex<long double> value_ld() const;
    CyclotomicInteger canonical() const;

private:
    std::uint64_t order_;
    std::vector<std::int64_t> counts_;
};

/// Element of Z[e(1/d)] in the reduced power basis.
class CyclotomicInteger {
public:
    explicit CyclotomicInteger(std::uint64_t order = 1);

    std::uint64_t order() const { return order_; }
    void add(const RootOfUnity& r, std::int64_t multiplicity = 1);
    void add_index(std::uint64_t k, std::int64_t multiplicity = 1);

    bool is_zero() const { return nonzero_ == 0; }
    std::span<const std::int64_t> coefficients() const { return coeffs_; }
    std::complex<double> value() const;

    CyclotomicInteger operator-() const;
    CyclotomicInteger& operator+=(const CyclotomicInteger& other);
    friend bool operator==(const CyclotomicInteger& a, const CyclotomicInteger& b) {
        return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }

private:
    struct Basis;
    static std::shared_ptr<const Basis> basis_for(std::uint64_t d);

    std::uint64_t order_;
    std::shared_ptr<const Basis> basis_;
    std::vector<std::int64_t> coeffs_;
    std::size_t nonzero_ = 0;
};

}  // namespace charlab
