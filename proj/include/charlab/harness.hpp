#pragma once

/**
 * @file harness.hpp
 * @brief Verification sweeps over odd primitive characters and the table of
 * named constants.
 *
 * Sweep outputs are sorted by (k, label index) and are therefore identical
 * for every worker count.
 */

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "charlab/character.hpp"

namespace charlab {

// ---------------------------------------------------------------------------
// Named constants

struct NamedConstant {
    std::string name;
    std::string closed_form;
    double value = 0.0;
    /// Decimal as customarily quoted ("0.036"); empty when none is quoted.
    std::string quoted;
    /// The quoted decimal is a truncation ("0.151632...") rather than a rounding.
    bool quoted_truncated = false;
    std::string context;

    /// value rendered at the quoted number of decimals, by rounding or truncation.
    std::string at_quoted_precision() const;
    bool matches_quoted() const { return quoted.empty() || at_quoted_precision() == quoted; }
};

std::vector<NamedConstant> constants_table();

/// Looks up a constant by name; throws if absent.
double named_constant(const std::string& name);

/// pi / (2 (sqrt(e) - 1)), the coefficient of M(xi psi)/sqrt(k).
double twisted_bound_coefficient();
/// pi sqrt(3) / (2 (sqrt(e) - 1)), the exponent coefficient of the nonresidue bound.
double nonresidue_exponent_coefficient();

// ---------------------------------------------------------------------------
// Twisted-sum sweep

struct VerificationRecord {
    u64 k = 0;
    std::string label;        // of xi
    u64 ell = 3;
    u64 n_xi = 0;
    double max_sum = 0.0;     // M(xi psi)
    double lhs = 0.0;         // log n_xi
    double main = 0.0;        // pi/(2(sqrt e - 1)) * M / sqrt(k)
    double residual = 0.0;    // (lhs - main) / sqrt(ell)

    friend bool operator==(const VerificationRecord&, const VerificationRecord&) = default;
};

/// Builds one record from scratch (fresh groups, fresh sums).
VerificationRecord verification_record(const DirichletCharacter& xi, const DirichletCharacter& psi);

struct ResidualSummary {
    std::size_t count = 0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double median = 0.0;
    double p90 = 0.0;
    double p99 = 0.0;
};

ResidualSummary summarize(const std::vector<double>& values);

struct TwistedScanConfig {
    u64 k_min = 3;
    u64 k_max = 500;
    u64 ell = 3;
    double cap = 10.0;
    unsigned workers = 1;
};

struct TwistedScan {
    std::vector<VerificationRecord> records;  // sorted by (k, label index)
    ResidualSummary residuals;
    std::optional<std::size_t> argmax;        // index of the largest residual (first on ties)
    double cap = 0.0;
    bool within_cap() const { return !argmax || records[*argmax].residual <= cap; }
};

/// The odd primitive character mod ell with the smallest label index.
/// Throws when ell has none.
DirichletCharacter default_twist_character(u64 ell);

TwistedScan theorem2_scan(const TwistedScanConfig& config);

// ---------------------------------------------------------------------------
// Nonresidue bound from a growth function

struct ConstantGrowth {
    double c = 1.0;
};
struct LogPowerGrowth {
    double beta = 1.0;  // (log k)^beta
};
struct LogOverLogLogGrowth {};  // log k / log log k
struct TableGrowth {
    std::vector<std::pair<double, double>> points;  // (k, f(k)), increasing k; piecewise linear
};

using GrowthFunction = std::variant<ConstantGrowth, LogPowerGrowth, LogOverLogLogGrowth, TableGrowth>;

double evaluate_growth(const GrowthFunction& f, double k);
std::string describe_growth(const GrowthFunction& f);
/// Parses "const:C", "logpow:B", "loglog" or "table:k1=f1,k2=f2,...".
GrowthFunction parse_growth(const std::string& text);

struct NonresidueBoundEval {
    double k = 0.0;
    double f_value = 0.0;
    double exponent = 0.0;   // bound = k^exponent, exponent = K / f(k)
    double log_bound = 0.0;  // K log k / f(k)
    double value = 0.0;      // exp(log_bound); inf on overflow
    std::vector<std::string> warnings;
};

/// Evaluates exp(K log k / f(k)), K = pi sqrt 3 / (2 (sqrt e - 1)). The
/// growth hypotheses (f >= 1, f nondecreasing) are sampled on [range_min, k]
/// and violations are reported as warnings.
NonresidueBoundEval theorem1_bound_eval(double k, const GrowthFunction& f, double range_min = 3.0);

// ---------------------------------------------------------------------------
// Smooth-number heuristic

struct HeuristicBlock {
    double u_lo = 0.0;
    double u_hi = 0.0;
    std::complex<double> sum;  // sum of xi(n)/n over y^u_lo <= n < y^u_hi (n <= k)
    double prediction = 0.0;   // rho(u_hi) (u_hi - u_lo) log y
};

struct HeuristicResult {
    std::string label;
    u64 k = 0;
    u64 n_xi = 0;
    std::complex<double> series;  // sum_{n <= k} xi(n)/n
    double prediction = 0.0;      // e^gamma log n_xi
    double ratio = 0.0;           // |series| / prediction
    std::vector<HeuristicBlock> blocks;
};

/// Requires xi odd primitive. block_width > 0 adds the smoothness-block
/// decomposition with y = n_xi and u_j = j * block_width.
HeuristicResult heuristic_compare(const DirichletCharacter& xi, double block_width = 0.0);

/// Odd primitive real characters mod k <= k_max whose least nonresidue is at least min_nonresidue.
std::vector<HeuristicResult> heuristic_sweep(u64 k_max, u64 min_nonresidue, unsigned workers = 1);

// ---------------------------------------------------------------------------
// Conjectured sharp form

struct SharpBoundRow {
    std::string label;
    u64 k = 0;
    u64 n_xi = 0;
    double max_sum = 0.0;  // M(xi * (./3))
    double lhs = 0.0;      // log n_xi
    double rhs = 0.0;      // (pi / e^gamma) M / sqrt(k)
    bool violated = false;
};

/// Requires xi odd primitive with 3 not dividing k.
SharpBoundRow conjecture3_eval(const DirichletCharacter& xi);

struct SharpBoundSweep {
    std::vector<SharpBoundRow> rows;
    std::size_t violations = 0;
    double violation_fraction = 0.0;
};

SharpBoundSweep conjecture3_sweep(u64 k_max, unsigned workers = 1);

}  // namespace charlab
