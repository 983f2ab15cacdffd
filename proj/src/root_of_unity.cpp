#include "charlab/root_of_unity.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "charlab/arith.hpp"

namespace charlab {

RootOfUnity::RootOfUnity(std::int64_t numerator, std::uint64_t denominator) {
    if (denominator == 0) throw std::invalid_argument("RootOfUnity: zero denominator");
    const u64 r = reduce_mod(numerator, denominator);
    if (r == 0) return;
    const u64 g = gcd(r, denominator);
    num_ = r / g;
    den_ = denominator / g;
}

RootOfUnity RootOfUnity::conj() const {
    return RootOfUnity(-static_cast<std::int64_t>(num_), den_);
}

RootOfUnity RootOfUnity::pow(std::int64_t k) const {
    const u64 kk = reduce_mod(k, den_);
    return RootOfUnity(static_cast<std::int64_t>(mul_mod(num_, kk, den_)), den_);
}

std::uint64_t RootOfUnity::numerator_over(std::uint64_t d) const {
    if (d % den_ != 0) throw std::invalid_argument("RootOfUnity: denominator does not divide target order");
    return num_ * (d / den_);
}

RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) {
    const u64 d = lcm(a.den_, b.den_);
    const u64 r = (a.num_ * (d / a.den_) + b.num_ * (d / b.den_)) % d;
    return RootOfUnity(static_cast<std::int64_t>(r), d);
}

std::complex<long double> unit_root(std::uint64_t k, std::uint64_t d) {
    k %= d;
    if (k == 0) return {1.0L, 0.0L};
    if (4 % d == 0) {
        switch (k * (4 / d)) {
            case 1: return {0.0L, 1.0L};
            case 2: return {-1.0L, 0.0L};
            case 3: return {0.0L, -1.0L};
            default: break;
        }
    }
    const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) /
                              static_cast<long double>(d);
    return {std::cos(angle), std::sin(angle)};
}

std::complex<long double> RootOfUnity::value_ld() const { return unit_root(num_, den_); }

std::complex<double> RootOfUnity::value() const {
    const auto v = value_ld();
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

std::string RootOfUnity::to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

int moebius(u64 n) {
    int mu = 1;
    for (const auto& f : factorize(n)) {
        if (f.exponent > 1) return 0;
        mu = -mu;
    }
    return mu;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(std::uint64_t d) {
    if (d == 0) throw std::invalid_argument("cyclotomic_polynomial: d must be positive");
    std::vector<std::int64_t> poly{1};
    std::vector<u64> denominators;
    for (u64 e : divisors(d)) {
        const int mu = moebius(d / e);
        if (mu == 1) {
            // poly *= (x^e - 1)
            std::vector<std::int64_t> next(poly.size() + e, 0);
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + e] += poly[i];
                next[i] -= poly[i];
            }
            poly = std::move(next);
        } else if (mu == -1) {
            denominators.push_back(e);
        }
    }
    for (u64 e : denominators) {
        // poly /= (x^e - 1), exact
        const std::size_t deg = poly.size() - 1;
        std::vector<std::int64_t> quot(deg - e + 1, 0);
        for (std::size_t i = deg; i >= e; --i) {
            const std::int64_t c = poly[i];
            quot[i - e] = c;
            poly[i] -= c;
            poly[i - e] += c;
        }
        poly = std::move(quot);
    }
    return poly;
}

// ---------------------------------------------------------------------------
// RootCounts

RootCounts::RootCounts(std::uint64_t order) : order_(order), counts_(order, 0) {
    if (order == 0) throw std::invalid_argument("RootCounts: order must be positive");
}

void RootCounts::add(const RootOfUnity& r, std::int64_t multiplicity) {
    counts_[r.numerator_over(order_)] += multiplicity;
}

std::complex<long double> RootCounts::value_ld() const {
    std::complex<long double> sum{0.0L, 0.0L};
    for (u64 k = 0; k < order_; ++k) {
        if (counts_[k] != 0) sum += static_cast<long double>(counts_[k]) * unit_root(k, order_);
    }
    return sum;
}

std::complex<double> RootCounts::value() const {
    const auto v = value_ld();
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

CyclotomicInteger RootCounts::canonical() const {
    CyclotomicInteger out(order_);
    for (u64 k = 0; k < order_; ++k) {
        if (counts_[k] != 0) out.add_index(k, counts_[k]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// CyclotomicInteger

struct CyclotomicInteger::Basis {
    std::uint64_t order;
    std::size_t degree;  // phi(order)
    // rows[k * degree + j] = coefficient of x^j in x^k mod Phi_order
    std::vector<std::int64_t> rows;
};

std::shared_ptr<const CyclotomicInteger::Basis> CyclotomicInteger::basis_for(std::uint64_t d) {
    static std::mutex mutex;
    static std::map<std::uint64_t, std::shared_ptr<const Basis>> cache;
    constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 24;

    std::lock_guard lock(mutex);
    if (auto it = cache.find(d); it != cache.end()) return it->second;

    const auto phi_poly = cyclotomic_polynomial(d);
    const std::size_t deg = phi_poly.size() - 1;
    if (static_cast<std::uint64_t>(deg) * d > kMaxEntries) {
        throw std::invalid_argument("CyclotomicInteger: order " + std::to_string(d) + " too large for exact reduction");
    }
    auto basis = std::make_shared<Basis>();
    basis->order = d;
    basis->degree = deg;
    basis->rows.assign(d * deg, 0);
    std::vector<std::int64_t> cur(deg, 0);
    if (deg > 0) cur[0] = 1;
    for (u64 k = 0; k < d; ++k) {
        std::copy(cur.begin(), cur.end(), basis->rows.begin() + static_cast<std::ptrdiff_t>(k * deg));
        // cur *= x, then x^deg = -sum_{j<deg} phi_j x^j
        const std::int64_t top = deg > 0 ? cur[deg - 1] : 0;
        for (std::size_t j = deg; j-- > 1;) cur[j] = cur[j - 1];
        if (deg > 0) cur[0] = 0;
        for (std::size_t j = 0; j < deg; ++j) cur[j] -= top * phi_poly[j];
    }
    cache.emplace(d, basis);
    return basis;
}

CyclotomicInteger::CyclotomicInteger(std::uint64_t order)
    : order_(order), basis_(basis_for(order)), coeffs_(basis_->degree, 0) {}

void CyclotomicInteger::add_index(std::uint64_t k, std::int64_t multiplicity) {
    const std::size_t deg = basis_->degree;
    const std::int64_t* row = basis_->rows.data() + (k % order_) * deg;
    for (std::size_t j = 0; j < deg; ++j) {
        if (row[j] == 0) continue;
        const bool was_zero = coeffs_[j] == 0;
        coeffs_[j] += multiplicity * row[j];
        const bool is_zero = coeffs_[j] == 0;
        if (was_zero && !is_zero) ++nonzero_;
        if (!was_zero && is_zero) --nonzero_;
    }
}

void CyclotomicInteger::add(const RootOfUnity& r, std::int64_t multiplicity) {
    add_index(r.numerator_over(order_), multiplicity);
}

std::complex<double> CyclotomicInteger::value() const {
    std::complex<long double> sum{0.0L, 0.0L};
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (coeffs_[j] != 0) sum += static_cast<long double>(coeffs_[j]) * unit_root(j, order_);
    }
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

CyclotomicInteger CyclotomicInteger::operator-() const {
    CyclotomicInteger out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

CyclotomicInteger& CyclotomicInteger::operator+=(const CyclotomicInteger& other) {
    if (other.order_ != order_) throw std::invalid_argument("CyclotomicInteger: order mismatch");
    nonzero_ = 0;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        coeffs_[j] += other.coeffs_[j];
        if (coeffs_[j] != 0) ++nonzero_;
    }
    return *this;
}

}  // namespace charlab
