#include "charlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "charlab/charsum.hpp"
#include "charlab/dickman.hpp"
#include "charlab/format.hpp"
#include "charlab/parallel.hpp"

namespace charlab {

namespace {

const CharacterFilter kOddPrimitive{.parity = Parity::odd, .order = std::nullopt, .primitive_only = true};

template <class Row>
std::vector<Row> flatten(std::vector<std::vector<Row>>&& parts) {
    std::vector<Row> out;
    for (auto& part : parts) {
        for (auto& row : part) out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Twisted-sum sweep

VerificationRecord verification_record(const DirichletCharacter& xi, const DirichletCharacter& psi) {
    const DirichletCharacter chi = twist(xi, psi);
    VerificationRecord r;
    r.k = xi.modulus();
    r.label = xi.label();
    r.ell = psi.modulus();
    r.n_xi = *least_nonresidue(xi);
    r.max_sum = max_partial_sum(chi).max_abs;
    r.lhs = std::log(static_cast<double>(r.n_xi));
    r.main = twisted_bound_coefficient() * r.max_sum / std::sqrt(static_cast<double>(r.k));
    r.residual = (r.lhs - r.main) / std::sqrt(static_cast<double>(r.ell));
    return r;
}

ResidualSummary summarize(const std::vector<double>& values) {
    ResidualSummary s;
    s.count = values.size();
    if (values.empty()) return s;
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    auto rank = [&](double p) {
        const std::size_t idx = static_cast<std::size_t>(std::ceil(p * static_cast<double>(sorted.size())));
        return sorted[std::clamp<std::size_t>(idx, 1, sorted.size()) - 1];
    };
    s.min = sorted.front();
    s.max = sorted.back();
    long double total = 0.0L;
    for (double v : sorted) total += v;
    s.mean = static_cast<double>(total / static_cast<long double>(sorted.size()));
    s.median = rank(0.5);
    s.p90 = rank(0.9);
    s.p99 = rank(0.99);
    return s;
}

DirichletCharacter default_twist_character(u64 ell) {
    auto odd = enumerate_characters(CharacterGroup::build(ell), kOddPrimitive);
    if (odd.empty()) throw std::invalid_argument("no odd primitive character mod " + std::to_string(ell));
    return odd.front();
}

TwistedScan theorem2_scan(const TwistedScanConfig& config) {
    if (config.k_max < config.k_min) throw std::invalid_argument("theorem2_scan: empty k range");
    const DirichletCharacter psi = default_twist_character(config.ell);

    std::vector<u64> ks;
    for (u64 k = std::max<u64>(config.k_min, 3); k <= config.k_max; ++k) {
        if (gcd(k, config.ell) == 1) ks.push_back(k);
    }
    std::vector<std::vector<VerificationRecord>> parts(ks.size());
    parallel_for(ks.size(), config.workers, [&](std::size_t i) {
        const u64 k = ks[i];
        const auto xis = enumerate_characters(CharacterGroup::build(k), kOddPrimitive);
        if (xis.empty()) return;
        const GroupPtr target = CharacterGroup::build(k * config.ell);
        for (const auto& xi : xis) {
            const DirichletCharacter chi = twist(xi, psi, target);
            VerificationRecord r;
            r.k = k;
            r.label = xi.label();
            r.ell = config.ell;
            r.n_xi = *least_nonresidue(xi);
            r.max_sum = max_partial_sum(chi).max_abs;
            r.lhs = std::log(static_cast<double>(r.n_xi));
            r.main = twisted_bound_coefficient() * r.max_sum / std::sqrt(static_cast<double>(k));
            r.residual = (r.lhs - r.main) / std::sqrt(static_cast<double>(config.ell));
            parts[i].push_back(std::move(r));
        }
    });

    TwistedScan scan;
    scan.cap = config.cap;
    scan.records = flatten(std::move(parts));
    std::vector<double> residuals;
    residuals.reserve(scan.records.size());
    for (std::size_t i = 0; i < scan.records.size(); ++i) {
        residuals.push_back(scan.records[i].residual);
        if (!scan.argmax || scan.records[i].residual > scan.records[*scan.argmax].residual) scan.argmax = i;
    }
    scan.residuals = summarize(residuals);
    return scan;
}

// ---------------------------------------------------------------------------
// Growth functions

double evaluate_growth(const GrowthFunction& f, double k) {
    struct Visitor {
        double k;
        double operator()(const ConstantGrowth& g) const { return g.c; }
        double operator()(const LogPowerGrowth& g) const { return std::pow(std::log(k), g.beta); }
        double operator()(const LogOverLogLogGrowth&) const { return std::log(k) / std::log(std::log(k)); }
        double operator()(const TableGrowth& g) const {
            const auto& pts = g.points;
            if (pts.empty()) throw std::invalid_argument("growth table is empty");
            if (k <= pts.front().first) return pts.front().second;
            if (k >= pts.back().first) return pts.back().second;
            auto hi = std::lower_bound(pts.begin(), pts.end(), k,
                                       [](const auto& p, double v) { return p.first < v; });
            auto lo = hi - 1;
            const double t = (k - lo->first) / (hi->first - lo->first);
            return lo->second + t * (hi->second - lo->second);
        }
    };
    return std::visit(Visitor{k}, f);
}

std::string describe_growth(const GrowthFunction& f) {
    struct Visitor {
        std::string operator()(const ConstantGrowth& g) const { return "const:" + format_real(g.c); }
        std::string operator()(const LogPowerGrowth& g) const { return "logpow:" + format_real(g.beta); }
        std::string operator()(const LogOverLogLogGrowth&) const { return "loglog"; }
        std::string operator()(const TableGrowth& g) const {
            std::string s = "table:";
            for (std::size_t i = 0; i < g.points.size(); ++i) {
                if (i) s += ',';
                s += format_real(g.points[i].first) + "=" + format_real(g.points[i].second);
            }
            return s;
        }
    };
    return std::visit(Visitor{}, f);
}

GrowthFunction parse_growth(const std::string& text) {
    if (text == "loglog") return LogOverLogLogGrowth{};
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("unknown growth function '" + text + "'");
    const std::string kind = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    if (kind == "const") return ConstantGrowth{parse_real(arg)};
    if (kind == "logpow") return LogPowerGrowth{parse_real(arg)};
    if (kind == "table") {
        TableGrowth table;
        std::stringstream ss(arg);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("growth table entries must be k=f");
            table.points.emplace_back(parse_real(item.substr(0, eq)), parse_real(item.substr(eq + 1)));
        }
        if (table.points.empty()) throw std::invalid_argument("growth table is empty");
        for (std::size_t i = 1; i < table.points.size(); ++i) {
            if (!(table.points[i].first > table.points[i - 1].first)) {
                throw std::invalid_argument("growth table abscissae must increase");
            }
        }
        return table;
    }
    throw std::invalid_argument("unknown growth function '" + text + "'");
}

NonresidueBoundEval theorem1_bound_eval(double k, const GrowthFunction& f, double range_min) {
    if (!(k > 1.0)) throw std::invalid_argument("theorem1_bound_eval: k must exceed 1");
    NonresidueBoundEval out;
    out.k = k;
    out.f_value = evaluate_growth(f, k);
    if (!(out.f_value > 0.0)) throw std::invalid_argument("theorem1_bound_eval: f(k) must be positive");
    const double coeff = nonresidue_exponent_coefficient();
    out.exponent = coeff / out.f_value;
    out.log_bound = out.exponent * std::log(k);
    out.value = std::exp(out.log_bound);

    const double lo = std::clamp(range_min, 1.0 + 1e-9, k);
    constexpr int kSamples = 64;
    bool below_one = false, decreasing = false;
    double prev = 0.0;
    for (int i = 0; i <= kSamples; ++i) {
        const double x = (lo == k) ? k : lo * std::pow(k / lo, static_cast<double>(i) / kSamples);
        const double v = evaluate_growth(f, x);
        if (!below_one && v < 1.0) {
            below_one = true;
            out.warnings.push_back("f < 1 at k = " + format_real(x, 6) + " (f = " + format_real(v, 6) + ")");
        }
        if (i > 0 && !decreasing && v < prev - 1e-12 * std::abs(prev)) {
            decreasing = true;
            out.warnings.push_back("f decreasing near k = " + format_real(x, 6));
        }
        prev = v;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Smooth-number heuristic

HeuristicResult heuristic_compare(const DirichletCharacter& xi, double block_width) {
    if (!xi.is_odd() || !xi.is_primitive()) {
        throw std::invalid_argument("heuristic_compare: " + xi.label() + " is not odd primitive");
    }
    const u64 k = xi.modulus();
    HeuristicResult out;
    out.label = xi.label();
    out.k = k;
    out.n_xi = *least_nonresidue(xi);

    const auto table = xi.value_table();
    std::vector<std::complex<long double>> roots(xi.order());
    for (u64 j = 0; j < xi.order(); ++j) roots[j] = unit_root(j, xi.order());

    const long double log_y = std::log(static_cast<long double>(out.n_xi));
    const double top_u = static_cast<double>(std::log(static_cast<long double>(k)) / log_y);
    std::size_t blocks = 0;
    std::vector<std::complex<long double>> block_sums;
    if (block_width > 0.0) {
        blocks = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(top_u / block_width - 1e-12)));
        block_sums.assign(blocks, {0.0L, 0.0L});
    }

    std::complex<long double> sum{0.0L, 0.0L};
    for (u64 n = 1; n <= k; ++n) {
        const std::int32_t v = table[n % k];
        if (v < 0) continue;
        const std::complex<long double> term = roots[static_cast<u64>(v)] / static_cast<long double>(n);
        sum += term;
        if (blocks > 0) {
            const double u = static_cast<double>(std::log(static_cast<long double>(n)) / log_y);
            const std::size_t j = std::min(blocks - 1, static_cast<std::size_t>(std::floor(u / block_width)));
            block_sums[j] += term;
        }
    }
    out.series = {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
    out.prediction = std::exp(std::numbers::egamma) * static_cast<double>(log_y);
    out.ratio = std::abs(out.series) / out.prediction;

    if (blocks > 0) {
        const DickmanTable rho = DickmanTable::build(std::max(1.0, top_u), 1e-3);
        for (std::size_t j = 0; j < blocks; ++j) {
            HeuristicBlock b;
            b.u_lo = static_cast<double>(j) * block_width;
            b.u_hi = std::min(top_u, static_cast<double>(j + 1) * block_width);
            b.sum = {static_cast<double>(block_sums[j].real()), static_cast<double>(block_sums[j].imag())};
            b.prediction = rho.rho(b.u_hi) * (b.u_hi - b.u_lo) * static_cast<double>(log_y);
            out.blocks.push_back(b);
        }
    }
    return out;
}

std::vector<HeuristicResult> heuristic_sweep(u64 k_max, u64 min_nonresidue, unsigned workers) {
    std::vector<u64> ks;
    for (u64 k = 3; k <= k_max; ++k) ks.push_back(k);
    std::vector<std::vector<HeuristicResult>> parts(ks.size());
    parallel_for(ks.size(), workers, [&](std::size_t i) {
        const auto xis = enumerate_characters(CharacterGroup::build(ks[i]),
                                              {.parity = Parity::odd, .order = 2, .primitive_only = true});
        for (const auto& xi : xis) {
            if (*least_nonresidue(xi) < min_nonresidue) continue;
            parts[i].push_back(heuristic_compare(xi));
        }
    });
    return flatten(std::move(parts));
}

// ---------------------------------------------------------------------------
// Conjectured sharp form

SharpBoundRow conjecture3_eval(const DirichletCharacter& xi) {
    const u64 k = xi.modulus();
    if (k % 3 == 0) throw std::invalid_argument("conjecture3_eval: 3 divides the modulus " + std::to_string(k));
    if (!xi.is_odd() || !xi.is_primitive()) {
        throw std::invalid_argument("conjecture3_eval: " + xi.label() + " is not odd primitive");
    }
    static const DirichletCharacter mod3 = legendre_character(CharacterGroup::build(3));
    SharpBoundRow row;
    row.label = xi.label();
    row.k = k;
    row.n_xi = *least_nonresidue(xi);
    row.max_sum = max_partial_sum(twist(xi, mod3)).max_abs;
    row.lhs = std::log(static_cast<double>(row.n_xi));
    row.rhs = std::numbers::pi / std::exp(std::numbers::egamma) * row.max_sum / std::sqrt(static_cast<double>(k));
    row.violated = row.lhs > row.rhs;
    return row;
}

SharpBoundSweep conjecture3_sweep(u64 k_max, unsigned workers) {
    std::vector<u64> ks;
    for (u64 k = 4; k <= k_max; ++k) {
        if (k % 3 != 0) ks.push_back(k);
    }
    std::vector<std::vector<SharpBoundRow>> parts(ks.size());
    parallel_for(ks.size(), workers, [&](std::size_t i) {
        for (const auto& xi : enumerate_characters(CharacterGroup::build(ks[i]), kOddPrimitive)) {
            parts[i].push_back(conjecture3_eval(xi));
        }
    });
    SharpBoundSweep sweep;
    sweep.rows = flatten(std::move(parts));
    for (const auto& r : sweep.rows) sweep.violations += r.violated;
    if (!sweep.rows.empty()) {
        sweep.violation_fraction = static_cast<double>(sweep.violations) / static_cast<double>(sweep.rows.size());
    }
    return sweep;
}

}  // namespace charlab
