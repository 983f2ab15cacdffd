#pragma once

/**
 * @file pretentious.hpp
 * @brief Pretentious distance between characters and the even-character
 * dichotomy scan.
 *
 *   D(chi, psi; x)^2 = sum_{p <= x} (1 - Re chi(p) conj(psi)(p)) / p
 *
 * where chi(p) conj(psi)(p) is read as 0 whenever either factor vanishes, so
 * primes dividing a modulus contribute the full 1/p.
 */

#include <optional>
#include <string>
#include <vector>

#include "charlab/character.hpp"

namespace charlab {

struct PrimeTerm {
    u64 prime;
    double term;
};

struct DistanceResult {
    u64 modulus = 0;
    std::string chi_label;
    std::string psi_label;
    double x = 0.0;
    double distance_sq = 0.0;
    std::vector<PrimeTerm> trace;  // filled on request
};

/// Requires x >= 2 (and x <= 10^8).
DistanceResult distance_sq(const DirichletCharacter& chi, const DirichletCharacter& psi, double x,
                           bool with_trace = false);

/// Distance to the principal character of chi's own modulus.
DistanceResult distance_to_principal(const DirichletCharacter& chi, double x, bool with_trace = false);

struct DichotomyRow {
    std::string label;
    u64 least_nonresidue = 0;
    double max_sum = 0.0;
    double nonresidue_threshold = 0.0;  // exp((log q)^(5/6 + eps))
    double sum_threshold = 0.0;         // sqrt(q) (log q)^(2/3 + eps)
    bool small_nonresidue = false;
    bool small_sum = false;
    double distance_sq = 0.0;           // D(chi, chi_0; q)^2
};

struct DichotomyReport {
    u64 modulus = 0;
    double epsilon = 0.0;
    std::size_t even_primitive_total = 0;
    std::vector<DichotomyRow> rows;  // in label order
    double fraction_small_nonresidue = 0.0;
    double fraction_small_sum = 0.0;
    double fraction_either = 0.0;
};

/// Scans the even primitive characters mod q (the first `limit` of them in
/// label order when a limit is given). Requires q >= 3 and epsilon > 0.
DichotomyReport dichotomy_report(u64 q, double epsilon, std::optional<std::size_t> limit = std::nullopt,
                                 unsigned workers = 1);

}  // namespace charlab
