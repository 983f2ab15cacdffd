#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "charlab/dickman.hpp"
#include "charlab/smooth.hpp"
#include "test_support.hpp"

namespace charlab {
namespace {

TEST(LargestPrimeFactor, ExamplesAndSieveAgreement) {
    EXPECT_EQ(largest_prime_factor(2), 2u);
    EXPECT_EQ(largest_prime_factor(12), 3u);
    EXPECT_EQ(largest_prime_factor(97), 97u);
    EXPECT_THROW(largest_prime_factor(1), std::invalid_argument);
    for (u64 lo : {u64{1}, u64{999'000}, u64{262'000}}) {
        const u64 hi = lo + 600'000;
        u64 expected_first = lo;
        for_each_lpf_segment(lo, hi, [&](u64 first, std::span<const u64> lpf) {
            EXPECT_EQ(first, expected_first);
            for (std::size_t i = 0; i < lpf.size(); i += 97) {
                EXPECT_EQ(lpf[i], test_support::naive_lpf(first + i)) << first + i;
            }
            expected_first = first + lpf.size();
        });
        EXPECT_EQ(expected_first, hi + 1);
    }
    EXPECT_THROW(for_each_lpf_segment(1, kSieveCap + 1, [](u64, std::span<const u64>) {}), std::invalid_argument);
}

TEST(Psi, ExamplesFromEnumeration) {
    EXPECT_EQ(psi_count(10, 10), 10u);
    EXPECT_EQ(psi_count(16, 3), 9u);  // {1,2,3,4,6,8,9,12,16}
    EXPECT_EQ(psi_count(0, 5), 0u);
    EXPECT_EQ(psi_count(0.5, 5), 0u);
    // Python sieve oracle.
    EXPECT_EQ(psi_count(1000, 10), 141u);
    EXPECT_EQ(psi_count(1e5, 50), 9639u);
    EXPECT_EQ(psi_count(1e6, 1000), 344299u);
    EXPECT_THROW(psi_count(10, 1.5), std::invalid_argument);
}

TEST(Psi, DensityNearOneMinusLog2) {
    const double y = 1000.0;
    const double density = static_cast<double>(psi_count(y * y, y)) / (y * y);
    EXPECT_NEAR(density, 1.0 - std::log(2.0), 1.0 / std::log(y));
    RecordProperty("psi_density_gap", std::to_string(density - (1.0 - std::log(2.0))));
}

TEST(Psi, SmoothPlusRoughIsFloor) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        const double x = std::uniform_real_distribution<double>(0.0, 20000.0)(rng);
        const double y = std::uniform_real_distribution<double>(2.0, 300.0)(rng);
        u64 rough = 0;
        for (u64 n = 2; n <= static_cast<u64>(x); ++n) rough += test_support::naive_lpf(n) > y;
        EXPECT_EQ(psi_count(x, y) + rough, static_cast<u64>(std::floor(x))) << x << " " << y;
    }
}

TEST(RoughHarmonic, TrivialAndOracleValues) {
    for (double y : {2.0, 50.0, 1000.0}) {
        const auto r = rough_harmonic_sum(y, 1.0);
        EXPECT_EQ(r.exact_sum, 0.0);
        EXPECT_EQ(r.main_term, 0.0);
    }
    const auto r100 = rough_harmonic_sum(100, 2.0);
    EXPECT_EQ(r100.upper, 10000u);
    EXPECT_NEAR(r100.main_term, (2.0 * std::log(2.0) - 1.0) * std::log(100.0), 1e-14);
    EXPECT_NEAR(r100.exact_sum, 2.1443965959355866, 1e-12);
    EXPECT_NEAR(rough_harmonic_sum(50, 1.2).exact_sum, 0.188734480579442, 1e-12);
    EXPECT_EQ(rough_harmonic_sum(50, 1.2).upper, 109u);
    const auto r400 = rough_harmonic_sum(400, std::exp(0.5));
    EXPECT_NEAR(r400.main_term, (1.0 - std::exp(0.5) / 2.0) * std::log(400.0), 1e-12);
    EXPECT_NEAR(r400.exact_sum, 1.329157812221966, 1e-12);
    EXPECT_EQ(r400.upper, 19501u);
    EXPECT_THROW(rough_harmonic_sum(100, 2.5), std::invalid_argument);
    EXPECT_THROW(rough_harmonic_sum(1.0, 1.5), std::invalid_argument);
}

TEST(RoughHarmonic, PowerFloorSnapsToIntegers) {
    EXPECT_EQ(power_floor(100, 1.5), 1000u);
    EXPECT_EQ(power_floor(400, 1.5), 8000u);
    EXPECT_EQ(power_floor(200, 2.0), 40000u);
}

TEST(PartialSummation, IdentityWithinQuadratureBound) {
    const auto c = smooth_sum_partial_summation(200, 2.0, 1e-3);
    EXPECT_NEAR(c.direct, 2.941451824655867, 1e-12);  // Python oracle
    EXPECT_LE(std::abs(c.direct - c.via_psi), c.quadrature_bound);
    RecordProperty("partial_summation_gap", std::to_string(c.direct - c.via_psi));
    EXPECT_DOUBLE_EQ(c.step, 1e-3);
}

TEST(Dickman, ClosedFormsOnFirstIntervals) {
    const double step = 1e-3;
    const auto table = DickmanTable::build(3.0, step);
    EXPECT_EQ(table.rho(0.5), 1.0);
    EXPECT_NEAR(table.rho(2.0), 1.0 - std::log(2.0), 10 * step);
    EXPECT_NEAR(table.rho(std::exp(0.5)), 0.5, 10 * step);
    // mpmath quadrature oracle
    EXPECT_NEAR(table.rho(2.5), 0.13031956183225075, 10 * step);
    EXPECT_NEAR(table.rho(3.0), 0.048608388291131567, 10 * step);
    EXPECT_EQ(dickman_integral(1.0, step), 1.0);
    EXPECT_NEAR(dickman_integral(2.0, step), 3.0 - 2.0 * std::log(2.0), 1e-6);
    EXPECT_NEAR(dickman_integral(2.0, step), 1.6137056388801094, 1e-6);
    EXPECT_THROW(table.rho(3.5), std::invalid_argument);
    EXPECT_THROW(DickmanTable::build(3.0, 0.0), std::invalid_argument);
}

TEST(Dickman, PositiveNonincreasingAndIntegralConverges) {
    const auto table = DickmanTable::build(20.0, 1e-3);
    const auto v = table.values();
    for (std::size_t i = 1; i < v.size(); ++i) {
        EXPECT_GT(v[i], 0.0);
        EXPECT_LE(v[i], v[i - 1]);
    }
    EXPECT_NEAR(table.integral(20.0), std::exp(std::numbers::egamma), 1e-3);
    std::ostringstream csv;
    DickmanTable::build(2.0, 0.5).write_csv(csv);
    EXPECT_EQ(csv.str().substr(0, 15), "u,rho,integral\n");
}

TEST(Dickman, EffectiveStepDividesUnit) {
    const auto table = DickmanTable::build(2.0, 0.3);
    EXPECT_DOUBLE_EQ(table.step(), 0.25);
}

TEST(Vinogradov, ObjectiveAndArgmax) {
    EXPECT_DOUBLE_EQ(vinogradov_objective(1.0), 1.0);
    EXPECT_NEAR(vinogradov_objective(std::exp(0.5)), 2.0 * (std::exp(0.5) - 1.0), 1e-15);
    EXPECT_NEAR(vinogradov_objective(std::exp(0.5)), 1.29744, 1e-5);
    EXPECT_NEAR(vinogradov_argmax_grid(1e-5), vinogradov_argmax(), 1e-4);
    EXPECT_THROW(vinogradov_objective(0.5), std::invalid_argument);
}

}  // namespace
}  // namespace charlab
