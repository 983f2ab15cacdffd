#include "charlab/pretentious.hpp"

#include <cmath>
#include <stdexcept>

#include "charlab/charsum.hpp"
#include "charlab/parallel.hpp"

namespace charlab {

DistanceResult distance_sq(const DirichletCharacter& chi, const DirichletCharacter& psi, double x, bool with_trace) {
    if (!(x >= 2.0)) throw std::invalid_argument("distance_sq: x must be at least 2");
    if (x > 1e8) throw std::invalid_argument("distance_sq: x above 10^8");
    DistanceResult out;
    out.modulus = chi.modulus();
    out.chi_label = chi.label();
    out.psi_label = psi.label();
    out.x = x;
    long double total = 0.0L;
    for (u64 p : primes_up_to(static_cast<u64>(std::floor(x)))) {
        const CharValue a = chi(static_cast<i64>(p));
        const CharValue b = psi(static_cast<i64>(p));
        long double re = 0.0L;
        if (a && b) re = (*a * b->conj()).value_ld().real();
        const long double term = (1.0L - re) / static_cast<long double>(p);
        total += term;
        if (with_trace) out.trace.push_back({p, static_cast<double>(term)});
    }
    out.distance_sq = static_cast<double>(total);
    return out;
}

DistanceResult distance_to_principal(const DirichletCharacter& chi, double x, bool with_trace) {
    return distance_sq(chi, DirichletCharacter::principal(chi.group_ptr()), x, with_trace);
}

DichotomyReport dichotomy_report(u64 q, double epsilon, std::optional<std::size_t> limit, unsigned workers) {
    if (q < 3) throw std::invalid_argument("dichotomy_report: modulus must be at least 3");
    if (!(epsilon > 0.0)) throw std::invalid_argument("dichotomy_report: epsilon must be positive");

    const auto group = CharacterGroup::build(q);
    auto characters = enumerate_characters(group, {.parity = Parity::even, .order = std::nullopt, .primitive_only = true});

    DichotomyReport report;
    report.modulus = q;
    report.epsilon = epsilon;
    report.even_primitive_total = characters.size();
    if (limit && *limit < characters.size()) characters.erase(characters.begin() + static_cast<std::ptrdiff_t>(*limit), characters.end());

    const double log_q = std::log(static_cast<double>(q));
    const double nonresidue_threshold = std::exp(std::pow(log_q, 5.0 / 6.0 + epsilon));
    const double sum_threshold = std::sqrt(static_cast<double>(q)) * std::pow(log_q, 2.0 / 3.0 + epsilon);

    report.rows.resize(characters.size());
    parallel_for(characters.size(), workers, [&](std::size_t i) {
        const auto& chi = characters[i];
        const auto profile = max_partial_sum(chi);
        DichotomyRow& row = report.rows[i];
        row.label = chi.label();
        row.least_nonresidue = *profile.least_nonresidue;
        row.max_sum = profile.max_abs;
        row.nonresidue_threshold = nonresidue_threshold;
        row.sum_threshold = sum_threshold;
        row.small_nonresidue = static_cast<double>(row.least_nonresidue) <= nonresidue_threshold;
        row.small_sum = row.max_sum <= sum_threshold;
        row.distance_sq = distance_to_principal(chi, static_cast<double>(q)).distance_sq;
    });

    std::size_t a = 0, b = 0, either = 0;
    for (const auto& row : report.rows) {
        a += row.small_nonresidue;
        b += row.small_sum;
        either += row.small_nonresidue || row.small_sum;
    }
    if (!report.rows.empty()) {
        const double n = static_cast<double>(report.rows.size());
        report.fraction_small_nonresidue = static_cast<double>(a) / n;
        report.fraction_small_sum = static_cast<double>(b) / n;
        report.fraction_either = static_cast<double>(either) / n;
    }
    return report;
}

}  // namespace charlab
