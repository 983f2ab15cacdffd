#include "charlab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "charlab/charsum.hpp"
#include "charlab/dickman.hpp"
#include "charlab/format.hpp"
#include "charlab/harness.hpp"
#include "charlab/pretentious.hpp"
#include "charlab/smooth.hpp"
#include "charlab/store.hpp"

namespace charlab::cli {

namespace {

/// Every flag any subcommand understands; each subcommand registers a subset.
struct Options {
    // common
    std::string format = "csv";
    std::string out;
    unsigned workers = 1;
    std::string config;
    std::string cache_dir;
    bool assert_cap = false;

    // character selection
    std::uint64_t modulus = 0;
    std::string label;
    std::string parity;
    std::uint64_t order = 0;
    bool primitive = false;
    bool legendre = false;
    bool values = false;
    bool trace = false;

    // numeric parameters
    double alpha = -1.0;
    double alpha_step = 0.05;
    std::uint64_t cutoff = 0;
    double cap = 10.0;
    double y = 0.0;
    double psi_x = -1.0;
    double u_max = 20.0;
    double rho_step = 1e-3;
    double every = 0.1;
    std::string psi_label;
    double x = 0.0;
    std::uint64_t k_min = 3;
    std::uint64_t k_max = 500;
    std::uint64_t ell = 3;
    std::uint64_t min_nonresidue = 5;
    double block_width = 0.0;
    double epsilon = 0.1;
    std::size_t limit = 0;
    double k = 0.0;
    std::string growth = "const:1";
    double range_min = 3.0;
};

struct Output {
    Table table;
    std::string summary;  // diagnostics for stderr
    bool cap_violated = false;
};

std::int64_t as_int(u64 v) { return static_cast<std::int64_t>(v); }

std::string value_string(const CharValue& v) { return v ? v->to_string() : "0"; }

/// Order matters: flag, then config, then built-in default.
template <class T>
void merge(CLI::App* sub, const std::string& flag, T& target, const std::optional<T>& configured) {
    CLI::Option* opt = sub->get_option_no_throw(flag);
    if (opt && opt->count() == 0 && configured) target = *configured;
}

std::vector<DirichletCharacter> select_characters(const Options& o, CLI::App* sub) {
    if (!o.label.empty()) {
        const auto [q, index] = parse_label(o.label);
        if (o.modulus != 0 && o.modulus != q) throw std::invalid_argument("--label modulus disagrees with --modulus");
        return {DirichletCharacter::from_index(CharacterGroup::build(q), index)};
    }
    if (o.modulus == 0) throw std::invalid_argument(sub->get_name() + ": --modulus or --label is required");
    auto group = CharacterGroup::build(o.modulus);
    if (o.legendre) return {legendre_character(group)};
    CharacterFilter filter;
    if (o.parity == "even") filter.parity = Parity::even;
    else if (o.parity == "odd") filter.parity = Parity::odd;
    else if (!o.parity.empty()) throw std::invalid_argument("--parity must be even or odd");
    if (o.order != 0) filter.order = o.order;
    filter.primitive_only = o.primitive;
    return enumerate_characters(group, filter);
}

// ---------------------------------------------------------------------------
// Subcommand bodies

Output cmd_chars(const Options& o, CLI::App* sub) {
    const auto chars = select_characters(o, sub);
    Output res;
    if (o.values) {
        if (chars.size() != 1) throw std::invalid_argument("--values needs a single character (use --label)");
        const auto& chi = chars.front();
        res.table.columns = {"n", "value"};
        for (u64 n = 0; n < chi.modulus(); ++n) res.table.add_row({as_int(n), value_string(chi(static_cast<i64>(n)))});
        return res;
    }
    res.table.columns = {"label", "modulus", "index", "order", "parity", "conductor", "primitive"};
    for (const auto& chi : chars) {
        res.table.add_row({chi.label(), as_int(chi.modulus()), as_int(chi.index()), as_int(chi.order()),
                           std::string(chi.is_even() ? "even" : "odd"), as_int(chi.conductor()), chi.is_primitive()});
    }
    return res;
}

Output cmd_sums(const Options& o, CLI::App* sub) {
    const auto chars = select_characters(o, sub);
    Output res;
    if (o.trace) {
        if (chars.size() != 1) throw std::invalid_argument("--trace needs a single character (use --label)");
        const auto profile = max_partial_sum(chars.front(), true);
        res.table.columns = {"t", "re", "im", "abs"};
        for (std::size_t t = 0; t < profile.trace.size(); ++t) {
            const auto s = profile.trace[t];
            res.table.add_row({as_int(t), s.real(), s.imag(), std::abs(s)});
        }
        return res;
    }
    res.table.columns = {"label", "M", "argmax", "n_chi"};
    for (const auto& chi : chars) {
        const auto p = max_partial_sum(chi);
        Cell n = p.least_nonresidue ? Cell(as_int(*p.least_nonresidue)) : Cell(std::string("none"));
        res.table.add_row({chi.label(), p.max_abs, as_int(p.argmax), n});
    }
    return res;
}

Output cmd_nonresidue(const Options& o, CLI::App* sub) {
    Output res;
    res.table.columns = {"label", "least_nonresidue"};
    for (const auto& chi : select_characters(o, sub)) {
        if (chi.is_principal()) continue;
        res.table.add_row({chi.label(), as_int(*least_nonresidue(chi))});
    }
    return res;
}

Output cmd_polya(const Options& o, CLI::App* sub) {
    auto chars = select_characters(o, sub);
    std::erase_if(chars, [](const DirichletCharacter& c) { return !c.is_primitive() || c.is_principal(); });
    std::vector<double> alphas;
    if (o.alpha >= 0.0) {
        alphas.push_back(o.alpha);
    } else {
        const auto steps = static_cast<std::size_t>(std::llround(1.0 / o.alpha_step));
        for (std::size_t i = 0; i <= steps; ++i) alphas.push_back(std::min(1.0, static_cast<double>(i) * o.alpha_step));
    }
    Output res;
    res.table.columns = {"label", "alpha", "t", "S_re", "S_im", "main_re", "main_im", "error", "error_over_log_q"};
    double worst = 0.0;
    std::string worst_at;
    for (const auto& chi : chars) {
        const u64 q = chi.modulus();
        const u64 cutoff = o.cutoff ? o.cutoff : q;
        const double log_q = std::log(static_cast<double>(q));
        for (double a : alphas) {
            const u64 t = static_cast<u64>(std::floor(static_cast<double>(q) * a));
            const auto s = partial_sum(chi, static_cast<double>(t));
            const auto m = polya_main_term(chi, a, cutoff);
            const double err = std::abs(s - m);
            res.table.add_row({chi.label(), a, as_int(t), s.real(), s.imag(), m.real(), m.imag(), err, err / log_q});
            if (err / log_q > worst) {
                worst = err / log_q;
                worst_at = chi.label() + " alpha=" + format_real(a);
            }
        }
    }
    res.summary = "max error/log q = " + format_real(worst) + (worst_at.empty() ? "" : " at " + worst_at) +
                  "; cap " + format_real(o.cap) + "\n";
    res.cap_violated = worst > o.cap;
    return res;
}

Output cmd_smoothsum(const Options& o, CLI::App*) {
    Output res;
    if (!(o.y >= 2.0)) throw std::invalid_argument("smoothsum: --y must be at least 2");
    if (o.psi_x >= 0.0) {
        res.table.columns = {"x", "y", "psi"};
        res.table.add_row({o.psi_x, o.y, as_int(psi_count(o.psi_x, o.y))});
        return res;
    }
    std::vector<double> alphas;
    if (o.alpha >= 0.0) {
        alphas.push_back(o.alpha);
    } else {
        const auto steps = static_cast<std::size_t>(std::llround(1.0 / o.alpha_step));
        for (std::size_t i = 0; i <= steps; ++i) alphas.push_back(1.0 + std::min(1.0, static_cast<double>(i) * o.alpha_step));
    }
    res.table.columns = {"y", "alpha", "upper", "exact", "main", "discrepancy"};
    for (double a : alphas) {
        const auto r = rough_harmonic_sum(o.y, a);
        res.table.add_row({r.y, r.alpha, as_int(r.upper), r.exact_sum, r.main_term, r.discrepancy});
    }
    return res;
}

Output cmd_dickman(const Options& o, CLI::App*) {
    if (!(o.every > 0.0)) throw std::invalid_argument("dickman: --every must be positive");
    const auto table = DickmanTable::build(o.u_max, o.rho_step);
    Output res;
    res.table.columns = {"u", "rho", "integral"};
    const auto count = static_cast<std::size_t>(std::floor(o.u_max / o.every + 1e-9));
    for (std::size_t i = 0; i <= count; ++i) {
        const double u = std::min(o.u_max, static_cast<double>(i) * o.every);
        res.table.add_row({u, table.rho(u), table.integral(u)});
    }
    res.summary = "integral to " + format_real(o.u_max) + " = " + format_real(table.integral(o.u_max)) +
                  " (e^gamma = " + format_real(std::exp(std::numbers::egamma)) + ")\n";
    return res;
}

Output cmd_distance(const Options& o, CLI::App* sub) {
    const auto chars = select_characters(o, sub);
    std::optional<DirichletCharacter> psi;
    if (!o.psi_label.empty()) {
        const auto [q, index] = parse_label(o.psi_label);
        psi = DirichletCharacter::from_index(CharacterGroup::build(q), index);
    }
    Output res;
    if (o.trace) {
        if (chars.size() != 1) throw std::invalid_argument("--trace needs a single character (use --label)");
        const auto& chi = chars.front();
        const double x = o.x > 0.0 ? o.x : static_cast<double>(chi.modulus());
        const auto r = psi ? distance_sq(chi, *psi, x, true) : distance_to_principal(chi, x, true);
        res.table.columns = {"p", "term"};
        for (const auto& t : r.trace) res.table.add_row({as_int(t.prime), t.term});
        return res;
    }
    res.table.columns = {"chi", "psi", "x", "distance_sq"};
    for (const auto& chi : chars) {
        const double x = o.x > 0.0 ? o.x : static_cast<double>(chi.modulus());
        const auto r = psi ? distance_sq(chi, *psi, x) : distance_to_principal(chi, x);
        res.table.add_row({r.chi_label, r.psi_label, r.x, r.distance_sq});
    }
    return res;
}

Output cmd_verify_thm2(const Options& o, CLI::App*) {
    TwistedScanConfig cfg{.k_min = o.k_min, .k_max = o.k_max, .ell = o.ell, .cap = o.cap, .workers = o.workers};
    return {records_table(theorem2_scan(cfg).records), "", false};
}

/// Summary and cap check from the table alone, so cached and fresh runs agree.
void summarize_thm2(Output& res, double cap) {
    const auto& t = res.table;
    const std::size_t rc = t.column("residual"), kc = t.column("k"), lc = t.column("label");
    std::vector<double> residuals;
    std::optional<std::size_t> arg;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double r = std::get<double>(t.rows[i][rc]);
        residuals.push_back(r);
        if (!arg || r > residuals[*arg]) arg = i;
    }
    const auto s = summarize(residuals);
    std::ostringstream ss;
    ss << "records " << s.count;
    if (arg) {
        ss << "; residual min " << format_real(s.min) << " median " << format_real(s.median) << " p90 "
           << format_real(s.p90) << " p99 " << format_real(s.p99) << " max " << format_real(s.max) << " at k="
           << std::get<std::int64_t>(t.rows[*arg][kc]) << " xi=" << std::get<std::string>(t.rows[*arg][lc]);
    }
    res.cap_violated = arg && s.max > cap;
    ss << "; cap " << format_real(cap) << (res.cap_violated ? " EXCEEDED" : " ok") << "\n";
    res.summary = ss.str();
}

Output cmd_heuristic(const Options& o, CLI::App*) {
    Output res;
    if (!o.label.empty()) {
        const auto [q, index] = parse_label(o.label);
        const auto xi = DirichletCharacter::from_index(CharacterGroup::build(q), index);
        const auto h = heuristic_compare(xi, o.block_width);
        if (o.block_width > 0.0) {
            res.table.columns = {"label", "u_lo", "u_hi", "sum_re", "sum_im", "prediction"};
            for (const auto& b : h.blocks) {
                res.table.add_row({h.label, b.u_lo, b.u_hi, b.sum.real(), b.sum.imag(), b.prediction});
            }
            return res;
        }
        res.table.columns = {"label", "k", "n_xi", "series_re", "series_im", "prediction", "ratio"};
        res.table.add_row({h.label, as_int(h.k), as_int(h.n_xi), h.series.real(), h.series.imag(), h.prediction, h.ratio});
        return res;
    }
    res.table.columns = {"label", "k", "n_xi", "series_re", "series_im", "prediction", "ratio"};
    for (const auto& h : heuristic_sweep(o.k_max, o.min_nonresidue, o.workers)) {
        res.table.add_row({h.label, as_int(h.k), as_int(h.n_xi), h.series.real(), h.series.imag(), h.prediction, h.ratio});
    }
    return res;
}

void summarize_ratios(Output& res) {
    const auto& t = res.table;
    if (t.columns.empty() || t.columns.back() != "ratio") return;
    std::vector<double> ratios;
    for (const auto& row : t.rows) ratios.push_back(std::get<double>(row.back()));
    const auto s = summarize(ratios);
    res.summary = "ratio count " + std::to_string(s.count) + " min " + format_real(s.min) + " median " +
                  format_real(s.median) + " p90 " + format_real(s.p90) + " max " + format_real(s.max) + "\n";
}

Output cmd_conjecture3(const Options& o, CLI::App*) {
    Output res;
    res.table.columns = {"label", "k", "n_xi", "M", "lhs", "rhs", "violated"};
    auto add = [&](const SharpBoundRow& r) {
        res.table.add_row({r.label, as_int(r.k), as_int(r.n_xi), r.max_sum, r.lhs, r.rhs, r.violated});
    };
    if (!o.label.empty()) {
        const auto [q, index] = parse_label(o.label);
        add(conjecture3_eval(DirichletCharacter::from_index(CharacterGroup::build(q), index)));
    } else {
        for (const auto& r : conjecture3_sweep(o.k_max, o.workers).rows) add(r);
    }
    return res;
}

void summarize_conjecture3(Output& res) {
    const std::size_t vc = res.table.column("violated");
    std::size_t violations = 0;
    for (const auto& row : res.table.rows) violations += std::get<bool>(row[vc]);
    const double frac = res.table.rows.empty() ? 0.0 : static_cast<double>(violations) / static_cast<double>(res.table.rows.size());
    res.summary = "violations " + std::to_string(violations) + " of " + std::to_string(res.table.rows.size()) +
                  " (fraction " + format_real(frac) + ")\n";
}

Output cmd_constants(const Options&, CLI::App*) {
    Output res;
    res.table.columns = {"name", "closed_form", "value", "quoted", "at_quoted_precision", "matches", "context"};
    for (const auto& c : constants_table()) {
        res.table.add_row({c.name, c.closed_form, c.value, c.quoted, c.quoted.empty() ? std::string() : c.at_quoted_precision(),
                           c.matches_quoted(), c.context});
    }
    return res;
}

Output cmd_dichotomy(const Options& o, CLI::App*) {
    if (o.modulus == 0) throw std::invalid_argument("dichotomy: --modulus is required");
    std::optional<std::size_t> limit;
    if (o.limit) limit = o.limit;
    const auto rep = dichotomy_report(o.modulus, o.epsilon, limit, o.workers);
    Output res;
    res.table.columns = {"label", "n_chi", "M", "nonresidue_threshold", "sum_threshold", "small_nonresidue", "small_sum", "distance_sq"};
    for (const auto& r : rep.rows) {
        res.table.add_row({r.label, as_int(r.least_nonresidue), r.max_sum, r.nonresidue_threshold, r.sum_threshold,
                           r.small_nonresidue, r.small_sum, r.distance_sq});
    }
    return res;
}

void summarize_dichotomy(Output& res) {
    const std::size_t a = res.table.column("small_nonresidue"), b = res.table.column("small_sum");
    std::size_t na = 0, nb = 0, either = 0;
    for (const auto& row : res.table.rows) {
        na += std::get<bool>(row[a]);
        nb += std::get<bool>(row[b]);
        either += std::get<bool>(row[a]) || std::get<bool>(row[b]);
    }
    res.summary = "characters " + std::to_string(res.table.rows.size()) + "; small nonresidue " + std::to_string(na) +
                  "; small sum " + std::to_string(nb) + "; either " + std::to_string(either) + "\n";
}

Output cmd_bound(const Options& o, CLI::App*) {
    const auto f = parse_growth(o.growth);
    const auto b = theorem1_bound_eval(o.k, f, o.range_min);
    Output res;
    res.table.columns = {"k", "growth", "f", "exponent", "log_bound", "value"};
    res.table.add_row({b.k, describe_growth(f), b.f_value, b.exponent, b.log_bound, b.value});
    for (const auto& w : b.warnings) res.summary += "warning: " + w + "\n";
    return res;
}

// ---------------------------------------------------------------------------

using Handler = Output (*)(const Options&, CLI::App*);

struct Command {
    const char* name;
    const char* description;
    Handler handler;
    bool cacheable;
    void (*post)(Output&, const Options&);
};

/// Canonical cache key: command plus the parameters that affect the result.
std::string cache_key(const std::string& command, const Options& o) {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["modulus"] = o.modulus;
    j["label"] = o.label;
    j["k_min"] = o.k_min;
    j["k_max"] = o.k_max;
    j["ell"] = o.ell;
    j["min_nonresidue"] = o.min_nonresidue;
    j["block_width"] = format_real(o.block_width, 17);
    j["epsilon"] = format_real(o.epsilon, 17);
    j["limit"] = o.limit;
    return j.dump();
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out, "write records to this file instead of stdout");
    sub->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--config", o.config, "JSON run configuration");
    sub->add_option("--cache-dir", o.cache_dir, "result cache directory (overrides CHARLAB_CACHE)");
    sub->add_flag("--assert", o.assert_cap, "exit 2 when a configured cap is exceeded");
}

void add_selection(CLI::App* sub, Options& o) {
    sub->add_option("--modulus,-q", o.modulus, "modulus q")->check(CLI::PositiveNumber);
    sub->add_option("--label", o.label, "single character label q.index");
    sub->add_option("--parity", o.parity, "even or odd")->check(CLI::IsMember({"even", "odd"}));
    sub->add_option("--order", o.order, "character order")->check(CLI::PositiveNumber);
    sub->add_flag("--primitive", o.primitive, "primitive characters only");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"charlab: Dirichlet character sums, least nonresidues and smooth numbers"};
    app.require_subcommand(1);

    const std::vector<Command> commands = {
        {"chars", "enumerate characters", cmd_chars, false, nullptr},
        {"sums", "maximal partial sums M(chi)", cmd_sums, false, nullptr},
        {"nonresidue", "least nonresidue n_chi", cmd_nonresidue, false, nullptr},
        {"polya", "partial sums against the Polya main term", cmd_polya, false, nullptr},
        {"smoothsum", "harmonic sums over rough numbers", cmd_smoothsum, false, nullptr},
        {"dickman", "Dickman rho table", cmd_dickman, false, nullptr},
        {"distance", "pretentious distance", cmd_distance, false, nullptr},
        {"verify-thm2", "twisted-sum residual sweep", cmd_verify_thm2, true,
         [](Output& r, const Options& opt) { summarize_thm2(r, opt.cap); }},
        {"heuristic", "smooth-number heuristic for sum xi(n)/n", cmd_heuristic, true,
         [](Output& r, const Options&) { summarize_ratios(r); }},
        {"conjecture3", "conjectured sharp nonresidue bound", cmd_conjecture3, true,
         [](Output& r, const Options&) { summarize_conjecture3(r); }},
        {"constants", "named constants", cmd_constants, false, nullptr},
        {"dichotomy", "nonresidue versus character sum dichotomy", cmd_dichotomy, true,
         [](Output& r, const Options&) { summarize_dichotomy(r); }},
        {"bound", "nonresidue bound from a growth function", cmd_bound, false, nullptr},
    };

    std::vector<CLI::App*> subs;
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.description);
        add_common(sub, o);
        subs.push_back(sub);
        const std::string name = c.name;
        if (name == "chars" || name == "sums" || name == "nonresidue" || name == "polya" || name == "distance") {
            add_selection(sub, o);
        }
        if (name == "chars") sub->add_flag("--values", o.values, "value table of a single character");
        if (name == "sums" || name == "distance") sub->add_flag("--trace", o.trace, "per-step trace of a single character");
        if (name == "nonresidue") sub->add_flag("--legendre", o.legendre, "the Legendre symbol mod a prime modulus");
        if (name == "polya") {
            sub->add_option("--alpha", o.alpha, "single alpha in [0,1]")->check(CLI::Range(0.0, 1.0));
            sub->add_option("--alpha-step", o.alpha_step, "alpha grid step")->check(CLI::PositiveNumber);
            sub->add_option("--cutoff", o.cutoff, "Fourier cutoff H (default q)")->check(CLI::PositiveNumber);
            sub->add_option("--cap", o.cap, "cap on error / log q")->check(CLI::PositiveNumber);
        }
        if (name == "smoothsum") {
            sub->add_option("--y", o.y, "smoothness parameter y")->required();
            sub->add_option("--alpha", o.alpha, "single alpha in [1,2]")->check(CLI::Range(1.0, 2.0));
            sub->add_option("--alpha-step", o.alpha_step, "alpha grid step on [1,2]")->check(CLI::PositiveNumber);
            sub->add_option("--psi", o.psi_x, "report Psi(x, y) for this x instead")->check(CLI::NonNegativeNumber);
        }
        if (name == "dickman") {
            sub->add_option("--umax", o.u_max, "table range")->check(CLI::PositiveNumber);
            sub->add_option("--step", o.rho_step, "integration step")->check(CLI::PositiveNumber);
            sub->add_option("--every", o.every, "spacing of printed rows")->check(CLI::PositiveNumber);
        }
        if (name == "distance") {
            sub->add_option("--psi", o.psi_label, "comparison character label (default principal)");
            sub->add_option("--x", o.x, "prime cutoff (default q)")->check(CLI::PositiveNumber);
        }
        if (name == "verify-thm2") {
            sub->add_option("--kmin", o.k_min, "smallest k")->check(CLI::PositiveNumber);
            sub->add_option("--kmax", o.k_max, "largest k")->check(CLI::PositiveNumber);
            sub->add_option("--ell", o.ell, "twist modulus")->check(CLI::PositiveNumber);
            sub->add_option("--cap", o.cap, "residual cap")->check(CLI::PositiveNumber);
        }
        if (name == "heuristic") {
            sub->add_option("--label", o.label, "single odd primitive character");
            sub->add_option("--kmax", o.k_max, "sweep real odd primitive characters up to this modulus")->check(CLI::PositiveNumber);
            sub->add_option("--min-nonresidue", o.min_nonresidue, "skip characters with smaller n_xi");
            sub->add_option("--block-width", o.block_width, "smoothness block width in u")->check(CLI::PositiveNumber);
        }
        if (name == "conjecture3") {
            sub->add_option("--label", o.label, "single odd primitive character");
            sub->add_option("--kmax", o.k_max, "sweep odd primitive characters up to this modulus")->check(CLI::PositiveNumber);
        }
        if (name == "dichotomy") {
            sub->add_option("--modulus,-q", o.modulus, "modulus q")->check(CLI::PositiveNumber);
            sub->add_option("--epsilon", o.epsilon, "threshold exponent slack")->check(CLI::PositiveNumber);
            sub->add_option("--limit", o.limit, "only the first N characters")->check(CLI::PositiveNumber);
        }
        if (name == "bound") {
            sub->add_option("--k", o.k, "modulus k")->required()->check(CLI::PositiveNumber);
            sub->add_option("--growth", o.growth, "const:C, logpow:B, loglog or table:k1=f1,...");
            sub->add_option("--range-min", o.range_min, "start of the range checked for f >= 1")->check(CLI::PositiveNumber);
        }
    }

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInvalid;
    }

    std::size_t which = 0;
    while (which < subs.size() && !subs[which]->parsed()) ++which;
    const Command& cmd = commands[which];
    CLI::App* sub = subs[which];

    try {
        std::optional<std::string> config_cache_dir;
        if (!o.config.empty()) {
            const RunConfig cfg = load_run_config(o.config);
            if (cfg.command && *cfg.command != cmd.name) {
                throw std::invalid_argument("config is for command '" + *cfg.command + "'");
            }
            merge(sub, "--modulus", o.modulus, cfg.modulus);
            merge(sub, "--kmin", o.k_min, cfg.k_min);
            merge(sub, "--kmax", o.k_max, cfg.k_max);
            merge(sub, "--ell", o.ell, cfg.ell);
            merge(sub, "--parity", o.parity, cfg.parity);
            merge(sub, "--order", o.order, cfg.order);
            merge(sub, "--primitive", o.primitive, cfg.primitive);
            merge(sub, "--alpha-step", o.alpha_step, cfg.alpha_step);
            merge(sub, "--step", o.rho_step, cfg.rho_step);
            merge(sub, "--cap", o.cap, cfg.cap);
            merge(sub, "--epsilon", o.epsilon, cfg.epsilon);
            merge(sub, "--format", o.format, cfg.format);
            merge(sub, "--workers", o.workers, cfg.workers);
            config_cache_dir = cfg.cache_dir;
        }
        const Format format = parse_format(o.format);

        Output res;
        const auto cache_dir = cmd.cacheable
                                   ? resolve_cache_dir(o.cache_dir.empty() ? std::nullopt : std::optional(o.cache_dir),
                                                       config_cache_dir)
                                   : std::nullopt;
        if (cache_dir) {
            const ResultCache cache(*cache_dir);
            bool hit = false;
            const std::string payload = cache.get_or_compute(
                cache_key(cmd.name, o), [&] { return encode_table(cmd.handler(o, sub).table); }, &hit);
            res.table = decode_table(payload);
        } else {
            res = cmd.handler(o, sub);
        }
        if (cmd.post) cmd.post(res, o);

        const std::string text = serialize(res.table, format);
        if (o.out.empty()) {
            out << text;
        } else {
            std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
            if (!file) throw std::runtime_error("cannot write " + o.out);
            file << text;
        }
        err << res.summary;
        if (o.assert_cap && res.cap_violated) return kExitCapViolation;
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n" << sub->help();
        return kExitInvalid;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n" << sub->help();
        return kExitInvalid;
    }
}

}  // namespace charlab::cli
