#include <gtest/gtest.h>

#include <random>

#include "charlab/charsum.hpp"
#include "test_support.hpp"

namespace charlab {
namespace {

const CharacterFilter kOddPrimitive{.parity = Parity::odd, .order = std::nullopt, .primitive_only = true};
const CharacterFilter kPrimitive{.parity = std::nullopt, .order = std::nullopt, .primitive_only = true};

DirichletCharacter legendre(u64 p) { return legendre_character(CharacterGroup::build(p)); }

TEST(PartialSum, Examples) {
    const auto chi3 = legendre(3);
    EXPECT_EQ(partial_sum(chi3, 0.5), std::complex<double>(0.0, 0.0));
    EXPECT_NEAR(std::abs(partial_sum(chi3, 2.0)), 0.0, 1e-15);
    EXPECT_NEAR(partial_sum(chi3, 1.7).real(), 1.0, 1e-15);
    EXPECT_THROW(partial_sum(chi3, -1.0), std::invalid_argument);
    for (u64 q = 2; q <= 60; ++q) {
        for (const auto& chi : enumerate_characters(CharacterGroup::build(q))) {
            if (!chi.is_principal()) EXPECT_TRUE(partial_sum_exact(chi, q).canonical().is_zero()) << chi.label();
        }
    }
}

TEST(PartialSum, PeriodicExtensionBeyondQ) {
    const auto chi = DirichletCharacter::from_index(CharacterGroup::build(35), 5);
    std::complex<double> direct{0.0, 0.0};
    for (i64 n = 1; n <= 200; ++n) {
        if (auto v = chi(n)) direct += v->value();
        EXPECT_LT(std::abs(partial_sum(chi, static_cast<double>(n)) - direct), 1e-12);
    }
}

TEST(MaxPartialSum, Examples) {
    const auto p3 = max_partial_sum(legendre(3), true);
    EXPECT_DOUBLE_EQ(p3.max_abs, 1.0);
    EXPECT_EQ(p3.argmax, 1u);
    ASSERT_EQ(p3.trace.size(), 4u);
    EXPECT_NEAR(std::abs(p3.trace[2]), 0.0, 1e-15);

    const auto p5 = max_partial_sum(legendre(5), true);
    EXPECT_DOUBLE_EQ(p5.max_abs, 1.0);
    const std::vector<double> expected = {0, 1, 0, -1, 0, 0};
    for (std::size_t t = 0; t < expected.size(); ++t) EXPECT_NEAR(p5.trace[t].real(), expected[t], 1e-15);

    const auto g12 = CharacterGroup::build(12);
    const auto pp = max_partial_sum(DirichletCharacter::principal(g12));
    EXPECT_DOUBLE_EQ(pp.max_abs, 4.0);
    EXPECT_EQ(pp.argmax, 11u);  // last unit below 12; S stays 4 at t = 12
    EXPECT_FALSE(pp.least_nonresidue.has_value());
}

TEST(MaxPartialSum, TraceInvariants) {
    for (u64 q = 1; q <= 80; ++q) {
        for (const auto& chi : enumerate_characters(CharacterGroup::build(q))) {
            const auto p = max_partial_sum(chi, true);
            double m = 0.0;
            for (std::size_t t = 0; t < p.trace.size(); ++t) {
                m = std::max(m, std::abs(p.trace[t]));
                EXPECT_LE(std::abs(p.trace[t]), static_cast<double>(t) + 1e-12);
            }
            EXPECT_NEAR(p.max_abs, m, 1e-12);
        }
    }
}

TEST(MaxPartialSum, LegendreOracleValues) {
    // M((./p)) and n_p from the Python oracle.
    const std::vector<std::tuple<u64, double, u64>> rows = {
        {7, 2, 3}, {11, 3, 2}, {23, 5, 5}, {101, 7, 2}, {163, 9, 2}, {1009, 18, 11}};
    for (const auto& [p, m, n] : rows) {
        const auto prof = max_partial_sum(legendre(p));
        EXPECT_NEAR(prof.max_abs, m, 1e-12) << p;
        EXPECT_EQ(prof.least_nonresidue, n);
    }
}

TEST(LeastNonresidue, ExamplesAndPrimality) {
    EXPECT_EQ(least_nonresidue(legendre(7)), 3u);
    EXPECT_EQ(least_nonresidue(legendre(23)), 5u);
    for (const auto& chi : enumerate_characters(CharacterGroup::build(3), {.parity = Parity::odd, .order = std::nullopt, .primitive_only = false})) {
        EXPECT_EQ(least_nonresidue(chi), 2u);
    }
    EXPECT_FALSE(least_nonresidue(DirichletCharacter::principal(CharacterGroup::build(10))).has_value());
    EXPECT_FALSE(least_nonresidue(DirichletCharacter::principal(CharacterGroup::build(2))).has_value());
    for (u64 q = 3; q <= 150; ++q) {
        for (const auto& chi : enumerate_characters(CharacterGroup::build(q))) {
            if (chi.is_principal()) continue;
            EXPECT_TRUE(is_prime(*least_nonresidue(chi))) << chi.label();
        }
    }
}

TEST(LeastNonresidue, LegendreScanUpTo10000) {
    for (u64 p : primes_up_to(10000)) {
        if (p == 2) continue;
        u64 expected = 0;
        for (u64 n = 2; n < p && !expected; ++n) {
            if (test_support::naive_legendre(n, p) == -1) expected = n;
        }
        ASSERT_EQ(least_nonresidue(legendre(p)), expected) << p;
    }
    // First primes with a given least nonresidue (oracle list).
    EXPECT_EQ(least_nonresidue(legendre(5711)), 19u);
    EXPECT_EQ(least_nonresidue(legendre(18191)), 29u);
}

TEST(Reflection, SmallModuliExact) {
    for (u64 q = 3; q <= 60; ++q) {
        for (const auto& chi : enumerate_characters(CharacterGroup::build(q))) {
            if (!chi.is_principal()) EXPECT_FALSE(reflection_failure(chi).has_value()) << chi.label();
        }
    }
    EXPECT_THROW(reflection_failure(DirichletCharacter::principal(CharacterGroup::build(5))), std::invalid_argument);
}

TEST(Polya, Examples) {
    const auto chi5 = legendre(5);
    const auto main = polya_main_term(chi5, 0.5, 5);
    EXPECT_LE(std::abs(partial_sum(chi5, 2.0) - main), 2.0 * std::log(5.0));
    // Even character at alpha = 0: e(0) - e(0) cancels, main term is exactly 0 = S(0).
    EXPECT_EQ(std::abs(polya_main_term(chi5, 0.0, 5)), 0.0);
    EXPECT_THROW(polya_main_term(DirichletCharacter::principal(CharacterGroup::build(5)), 0.5, 5), std::invalid_argument);
    EXPECT_THROW(polya_main_term(chi5, 0.5, 6), std::invalid_argument);
    EXPECT_THROW(polya_main_term(chi5, 0.5, 0), std::invalid_argument);
}

TEST(Polya, ResidualSweepReported) {
    double worst = 0.0;
    for (u64 q = 3; q <= 300; q += 7) {
        for (const auto& chi : enumerate_characters(CharacterGroup::build(q), kPrimitive)) {
            for (int i = 0; i <= 10; ++i) {
                const double a = i / 10.0;
                const double t = std::floor(static_cast<double>(q) * a);
                const double r = std::abs(partial_sum(chi, t) - polya_main_term(chi, a, q)) / std::log(static_cast<double>(q));
                worst = std::max(worst, r);
            }
        }
    }
    RecordProperty("max_residual_over_log_q", std::to_string(worst));
    EXPECT_TRUE(std::isfinite(worst));
    EXPECT_LE(worst, 10.0);
}

TEST(DirichletL1, ClassicalValues) {
    const auto xi3 = legendre(3);
    const auto l3 = dirichlet_L1(xi3, 1'000'000);
    EXPECT_LE(std::abs(l3.value - std::complex<double>(std::numbers::pi / (3.0 * std::sqrt(3.0)), 0.0)), l3.radius);
    EXPECT_NEAR(l3.value.real(), 0.6046, 1e-4);

    const auto xi4 = DirichletCharacter::from_index(CharacterGroup::build(4), 1);
    const auto l4 = dirichlet_L1(xi4, 1'000'000);
    EXPECT_LE(std::abs(l4.value.real() - std::numbers::pi / 4.0), l4.radius);

    // Class number formula for p = 3 mod 4: L(1, (./p)) = pi h / sqrt p.
    const std::vector<std::pair<u64, int>> class_numbers = {{7, 1}, {11, 1}, {19, 1}, {23, 3}, {47, 5}};
    for (const auto& [p, h] : class_numbers) {
        const auto l = dirichlet_L1(legendre(p), 200'000);
        EXPECT_LE(std::abs(l.value.real() - std::numbers::pi * h / std::sqrt(static_cast<double>(p))), l.radius) << p;
    }
    EXPECT_THROW(dirichlet_L1(legendre(5), 100), std::invalid_argument);  // even
    EXPECT_THROW(dirichlet_L1(xi3, 2), std::invalid_argument);
}

TEST(DirichletL1, BracketContainsRefinedValue) {
    std::mt19937_64 rng(5);
    std::vector<DirichletCharacter> pool;
    for (u64 k = 3; k <= 500; ++k) {
        for (auto& xi : enumerate_characters(CharacterGroup::build(k), kOddPrimitive)) pool.push_back(std::move(xi));
    }
    for (int i = 0; i < 50; ++i) {
        const auto& xi = pool[rng() % pool.size()];
        const u64 n = 2000;
        const auto coarse = dirichlet_L1(xi, n);
        const auto fine = dirichlet_L1(xi, 10 * n);
        EXPECT_LE(std::abs(coarse.value - fine.value), coarse.radius + fine.radius) << xi.label();
    }
}

TEST(ThirdPoint, SeriesFormHoldsAndQuotedFormDoesNot) {
    // S_chi(p) for chi = (./p)(./3), from the Python oracle.
    const std::vector<std::pair<u64, double>> sums = {{7, 2.0}, {11, 1.0}, {19, 2.0}, {23, 3.0}};
    for (const auto& [p, s] : sums) {
        const auto id = third_point_identity(legendre(p), 200'000);
        EXPECT_NEAR(id.sum.real(), s, 1e-12);
        EXPECT_LE(std::abs(id.sum - id.series_prediction), id.series_tolerance + 1e-9) << p;
        EXPECT_GT(std::abs(id.sum - id.quoted_prediction), 10.0 * id.quoted_tolerance) << p;
    }
    // Complex characters too.
    for (u64 k : {5u, 13u, 16u, 20u, 49u}) {
        for (const auto& xi : enumerate_characters(CharacterGroup::build(k), kOddPrimitive)) {
            const auto id = third_point_identity(xi, 100'000);
            EXPECT_LE(std::abs(id.sum - id.series_prediction), id.series_tolerance + 1e-9) << xi.label();
        }
    }
    EXPECT_THROW(third_point_identity(DirichletCharacter::from_index(CharacterGroup::build(9), 1), 1000), std::invalid_argument);
}

TEST(ThetaSum, Examples) {
    TwoSidedSequence zero{std::vector<std::complex<double>>(10), std::vector<std::complex<double>>(10)};
    const auto z = theta_sum_max(zero, 10, 1.0 / 40.0);
    EXPECT_EQ(z.full_max, 0.0);
    EXPECT_EQ(z.truncated_max, 0.0);

    TwoSidedSequence ones{std::vector<std::complex<double>>(50, 1.0), std::vector<std::complex<double>>(50, 1.0)};
    const auto o = theta_sum_max(ones, 50, 1.0 / 200.0);
    EXPECT_GE(o.truncated_max, o.full_max);
    EXPECT_LE(o.gap(), 0.0);
    EXPECT_GE(o.gap(), -2.0);

    const auto chi = legendre(11);
    TwoSidedSequence seq;
    for (i64 n = 1; n <= 11; ++n) {
        seq.positive.push_back(std::conj(chi(n) ? chi(n)->value() : 0.0));
        seq.negative.push_back(std::conj(chi(-n) ? chi(-n)->value() : 0.0));
    }
    const auto t = theta_sum_max(seq, 11, 1.0 / 44.0);
    EXPECT_LE(std::abs(t.gap()), 2.0);
    EXPECT_THROW(theta_sum_max(seq, 11, 0.5), std::invalid_argument);
    TwoSidedSequence big{std::vector<std::complex<double>>(3, 2.0), std::vector<std::complex<double>>(3, 0.0)};
    EXPECT_THROW(theta_sum_max(big, 3, 0.05), std::invalid_argument);
}

TEST(CoprimeMass, Examples) {
    const auto psi3 = legendre(3);
    const std::vector<std::pair<i64, std::complex<double>>> none;
    const auto z = lemma2_check(none, psi3, 1e-3);
    EXPECT_EQ(z.lhs, 0.0);
    EXPECT_EQ(z.rhs, 0.0);
    EXPECT_TRUE(z.holds());

    std::vector<std::pair<i64, std::complex<double>>> ones;
    for (i64 n = 1; n <= 10; ++n) ones.emplace_back(n, 1.0);
    const auto r = lemma2_check(ones, psi3, 1e-4);
    EXPECT_NEAR(r.rhs, std::sqrt(3.0) / 2.0 * 7.0, 1e-12);
    EXPECT_GE(r.lhs + r.grid_allowance, r.rhs);

    const auto psi5 = DirichletCharacter::from_index(CharacterGroup::build(5), 1);  // odd, order 4
    ASSERT_TRUE(psi5.is_odd());
    std::vector<std::pair<i64, std::complex<double>>> harmonic;
    for (i64 n = 1; n <= 30; ++n) harmonic.emplace_back(n, 1.0 / static_cast<double>(n));
    const auto h = lemma2_check(harmonic, psi5, 1e-4);
    EXPECT_TRUE(h.holds());
    RecordProperty("coprime_mass_slack", std::to_string(h.lhs - h.rhs));
    EXPECT_THROW(lemma2_check(ones, DirichletCharacter::principal(CharacterGroup::build(5)), 1e-3), std::invalid_argument);
}

}  // namespace
}  // namespace charlab
