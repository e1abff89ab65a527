// zid: command-line front end for the zeta identity workbench.
//
// Exit status: 0 on success (verify: all gating cases pass), 1 on a module
// error or a failing verify run, 2 on a usage error.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_config.hpp"
#include "zid/dirichlet_integral.hpp"
#include "zid/dirichlet_sums.hpp"
#include "zid/errors.hpp"
#include "zid/identity_lab.hpp"
#include "zid/liouville.hpp"
#include "zid/mvt_xi.hpp"
#include "zid/scans.hpp"
#include "zid/zeta.hpp"

using namespace zid;
using zid::cli::UsageError;

namespace {

struct Global {
    unsigned threads = 1;
    std::optional<double> tolerance;
    bool quiet = false;
    std::string config;
};

// Count-valued option that accepts scientific notation.
CLI::Option* add_count(CLI::App* app, const std::string& name, std::optional<std::uint64_t>& target,
                       const std::string& help)
{
    return app->add_option_function<std::string>(
        name, [&target](const std::string& v) { target = cli::parse_count(v); }, help);
}

CLI::Option* add_complex(CLI::App* app, const std::string& name, std::optional<Complex>& target,
                         const std::string& help)
{
    return app->add_option_function<std::string>(
        name, [&target](const std::string& v) { target = cli::parse_complex(v); }, help);
}

std::uint64_t need(const std::optional<std::uint64_t>& v, const char* flag)
{
    if (!v) throw UsageError(std::string("missing required option ") + flag);
    return *v;
}

// Shortest of %.15g/%.16g/%.17g that reads back exactly.
std::string fmt(double v)
{
    char buf[64];
    for (int digits : {15, 16, 17}) {
        std::snprintf(buf, sizeof buf, "%.*g", digits, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string fmt(Complex z)
{
    const std::string im = fmt(z.imag());
    return fmt(z.real()) + (im.front() == '-' ? "" : "+") + im + "i";
}

// Writes to `path`, or stdout when empty.
template <class Writer>
void emit(const std::string& path, Writer&& write)
{
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write(out);
    if (!out) throw std::runtime_error("write failed for " + path);
}

SieveOptions sieve_options(const Global& g, const std::optional<std::uint64_t>& segment)
{
    SieveOptions o;
    o.threads = g.threads;
    if (segment) {
        if (*segment == 0) throw UsageError("--segment-size must be positive");
        o.segment_size = *segment;
    }
    return o;
}

// ---------------------------------------------------------------------------

struct SieveCmd {
    std::optional<std::uint64_t> limit, stride, n, segment;
    std::string out;

    void setup(CLI::App* app)
    {
        add_count(app, "--limit", limit, "Tabulate n = 1..limit");
        add_count(app, "--stride", stride, "Emit rows with n % stride == 0 (default 1)");
        add_count(app, "--n", n, "Print lambda(n) for a single n (any 64-bit value)");
        add_count(app, "--segment-size", segment, "Sieve segment length");
        app->add_option("--out", out, "CSV output path (default stdout)");
    }

    int run(const Global& g)
    {
        if (n && limit) throw UsageError("--n and --limit are mutually exclusive");
        if (n) {
            std::printf("lambda(%" PRIu64 ") = %d\nOmega(%" PRIu64 ") = %u\n", *n, liouville(*n), *n,
                        big_omega(*n));
            return 0;
        }
        const std::uint64_t L = need(limit, "--limit or --n");
        const std::uint64_t k = stride.value_or(1);
        if (k == 0) throw UsageError("--stride must be positive");
        emit(out, [&](std::ostream& os) { write_liouville_csv(os, L, k, sieve_options(g, segment)); });
        return 0;
    }
};

struct SumsCmd {
    std::optional<std::uint64_t> x, stride;
    std::optional<double> alpha;
    bool descending = false;
    bool direct = false;
    std::string out;

    void setup(CLI::App* app)
    {
        add_count(app, "--x", x, "Truncation x");
        add_count(app, "--stride", stride, "CSV rows at multiples of stride (default: powers of two)");
        app->add_option("--alpha", alpha, "Also report F_x(alpha)");
        app->add_flag("--descending", descending, "Sum F_x(alpha) in descending order");
        app->add_flag("--direct", direct, "Evaluate L_x by exponentiating xi(n) (cross-check)");
        app->add_option("--out", out, "CSV output path (x,F_half,F_one,L)");
    }

    int run(const Global& g)
    {
        const std::uint64_t X = need(x, "--x");
        if (X < 1) throw UsageError("--x must be >= 1");
        SieveOptions so = sieve_options(g, std::nullopt);
        const LiouvilleTable table = sieve_to(X, so);
        const XiSequence seq = XiSequence::half_one();
        const double fh = f_x(table, 0.5, X);
        const double fo = f_x(table, 1.0, X);
        const double l =
            l_x(table, seq, X, direct ? LMode::direct_exponentiation : LMode::exact_rearrangement);
        if (!out.empty()) {
            HistoryPolicy policy;
            if (stride) {
                if (*stride == 0) throw UsageError("--stride must be positive");
                policy.kind = HistoryPolicy::Kind::stride;
                policy.stride = *stride;
            }
            emit(out, [&](std::ostream& os) { write_sums_csv(os, table, X, policy); });
        }
        if (!g.quiet || out.empty()) {
            std::printf("x = %" PRIu64 "\nF_half = %s\nF_one = %s\nL = %s\n", X, fmt(fh).c_str(),
                        fmt(fo).c_str(), fmt(l).c_str());
            std::printf("decomposition_residual = %s\n", fmt(fh - fo - l).c_str());
            if (alpha)
                std::printf("F(%s) = %s\n", fmt(*alpha).c_str(),
                            fmt(f_x(table, *alpha, X,
                                    descending ? SumOrder::descending : SumOrder::ascending))
                                .c_str());
        }
        return 0;
    }
};

struct XiCmd {
    std::optional<std::uint64_t> n_max, n, per_decade;
    double alpha = 0.5, beta = 1.0;
    bool monotone = false;
    std::string out;

    void setup(CLI::App* app)
    {
        add_count(app, "--n-max", n_max, "Grid end for the CSV / monotonicity scan");
        add_count(app, "--n", n, "Print xi(n) and its residual");
        add_count(app, "--per-decade", per_decade, "Grid points per decade (default 10)");
        app->add_option("--alpha", alpha, "Lower exponent (default 0.5)");
        app->add_option("--beta", beta, "Upper exponent (default 1)");
        app->add_flag("--monotone", monotone, "Check xi(n+1) < xi(n) for every 2 <= n < n-max");
        app->add_option("--out", out, "CSV output path (n,xi,residual)");
    }

    int run(const Global& g)
    {
        const XiSequence seq(alpha, beta);
        if (!n && !n_max) throw UsageError("give --n or --n-max");
        if (n)
            std::printf("xi(%" PRIu64 ") = %s\nresidual = %s\n", *n, fmt(xi(*n, seq)).c_str(),
                        fmt(xi_residual(*n, seq)).c_str());
        if (!n_max) return 0;
        if (monotone) {
            const MonotoneReport r = check_monotone_limit(seq, *n_max);
            std::printf("monotone = %s\n", r.monotone ? "true" : "false");
            if (r.first_failure) std::printf("first_failure = %" PRIu64 "\n", *r.first_failure);
            std::printf("gap = %s\n", fmt(r.gap).c_str());
        }
        const unsigned k = static_cast<unsigned>(per_decade.value_or(10));
        if (k == 0) throw UsageError("--per-decade must be positive");
        if (!out.empty() || !monotone)
            emit(out, [&](std::ostream& os) { write_xi_csv(os, seq, *n_max, k); });
        (void)g;
        return 0;
    }
};

struct ZetaCmd {
    std::optional<Complex> s;
    std::optional<std::uint64_t> N, bern, series;
    std::optional<double> target;
    bool ratio = false, shifted = false, bounds = false;

    void setup(CLI::App* app)
    {
        add_complex(app, "--s", s, "Argument RE,IM");
        add_count(app, "--N", N, "Euler-Maclaurin cutoff (default max(50, 2(|t|+10)))");
        add_count(app, "--bern", bern, "Bernoulli terms, 2..15 (default 8)");
        app->add_option("--target", target, "Largest acceptable error estimate (default 1e-12)");
        app->add_flag("--ratio", ratio, "Also print zeta(2s)/zeta(s)");
        app->add_flag("--shifted", shifted, "Also print zeta(2s+1)/zeta(s+1/2)");
        add_count(app, "--series", series, "Also print sum_{n<=N} lambda(n) n^-s");
        app->add_flag("--bounds", bounds, "Check 1/(s-1) < zeta(s) < s/(s-1) (real s)");
    }

    int run(const Global& g)
    {
        if (!s) throw UsageError("missing required option --s");
        ZetaParams p;
        if (N) p.cutoff = *N;
        if (bern) p.bernoulli_terms = static_cast<unsigned>(*bern);
        if (target) p.target_abs_error = *target;
        else if (g.tolerance) p.target_abs_error = *g.tolerance;
        const ZetaValue z = zeta(*s, p);
        std::printf("zeta(%s) = %s\nerror_estimate = %.3g\nN = %" PRIu64 "\nbernoulli_terms = %u\n",
                    fmt(*s).c_str(), fmt(z.value).c_str(), z.error_estimate, z.cutoff,
                    z.bernoulli_terms);
        if (ratio) std::printf("zeta(2s)/zeta(s) = %s\n", fmt(zeta_ratio(*s, p)).c_str());
        if (shifted) std::printf("zeta(2s+1)/zeta(s+1/2) = %s\n", fmt(shifted_ratio(*s, p)).c_str());
        if (series)
            std::printf("lambda_series(N=%" PRIu64 ") = %s\n", *series,
                        fmt(lambda_series(*s, *series)).c_str());
        if (bounds) {
            if (s->imag() != 0.0) throw UsageError("--bounds needs a real --s");
            const RealBoundsReport r = real_bounds_check(s->real());
            std::printf("bounds: %s < %s < %s : %s\n", fmt(r.lower).c_str(), fmt(r.value).c_str(),
                        fmt(r.upper).c_str(), r.pass ? "pass" : "FAIL");
            return r.pass ? 0 : 1;
        }
        return 0;
    }
};

struct IntegrateCmd {
    std::string kind = "F_one";
    std::optional<Complex> s;
    std::optional<std::uint64_t> X;
    std::optional<double> shift;

    void setup(CLI::App* app)
    {
        app->add_option("--kind", kind, "F_half, F_one, L_xi, T_sum, P_over_u or unit");
        add_complex(app, "--s", s, "Argument RE,IM");
        add_count(app, "--X", X, "Truncation");
        app->add_option("--shift", shift, "Kernel u^-(s+shift); default depends on --kind");
    }

    int run(const Global& g)
    {
        const auto k = parse_step_kind(kind);
        if (!k) throw UsageError("unknown --kind '" + kind + "'");
        if (!s) throw UsageError("missing required option --s");
        const std::uint64_t limit = need(X, "--X");
        if (limit < 2) throw UsageError("--X must be >= 2");
        SieveOptions so = sieve_options(g, std::nullopt);
        const StepFunction G = *k == StepKind::unit
                                   ? StepFunction::unit(limit)
                                   : StepFunction::build(*k, sieve_to(limit - 1, so), limit);
        IntegrateOptions o;
        o.kernel_shift = shift;
        o.threads = g.threads;
        if (g.tolerance) o.tolerance = *g.tolerance;
        const IntegralResult r = integrate_step(G, *s, limit, o);
        std::printf("value = %s\nX = %" PRIu64 "\ntail_estimate = %s\ntail_modeled = %s\nconverged = %s\n",
                    fmt(r.value).c_str(), r.truncation, fmt(r.tail_estimate).c_str(),
                    r.tail_modeled ? "true" : "false", r.converged ? "true" : "false");
        return 0;
    }
};

struct VerifyCmd {
    bool all = false;
    std::vector<std::string> points;
    std::optional<std::uint64_t> X;
    bool observe = false;
    std::string out;

    void setup(CLI::App* app)
    {
        app->add_flag("--all", all, "Run every case at the default points 2, 3, 1.5+2i, 0.75, 0.6+1i");
        app->add_option("--s", points, "Evaluation point RE,IM (repeatable)")
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
        add_count(app, "--X", X, "Truncation (default 1e6)");
        app->add_flag("--observe", observe, "Also print the observational reports");
        app->add_option("--out", out, "JSON report path (default stdout)");
    }

    int run(const Global& g)
    {
        if (all == !points.empty()) throw UsageError("give either --all or at least one --s");
        std::vector<Complex> ss;
        if (all) ss = default_points();
        for (const auto& p : points) ss.push_back(cli::parse_complex(p));
        const std::uint64_t limit = X.value_or(1000000);
        if (limit < 2) throw UsageError("--X must be >= 2");

        LabOptions o;
        o.threads = g.threads;
        o.sieve.threads = g.threads;
        if (g.tolerance) o.tolerance_floor = *g.tolerance;
        const IdentityLab lab(limit, o);
        const auto cases = lab.run_all(ss, limit);
        const std::string json = cases_to_json(cases) + "\n";
        emit(out, [&](std::ostream& os) { os << json; });

        const bool ok = all_gating_pass(cases);
        if (!g.quiet && !out.empty()) {
            for (const auto& c : cases) {
                std::printf("%-4s %-22s s=%-24s X=%-9" PRIu64 " residual=%.3e tol=%.3e%s\n",
                            c.pass ? "pass" : "FAIL", c.name.c_str(),
                            c.s ? fmt(*c.s).c_str() : "-", c.X, c.residual, c.tolerance,
                            c.gating() ? "" : " (empirical, not gating)");
            }
            std::printf("%s\n", ok ? "all gating cases pass" : "gating failures present");
        }
        if (observe && !g.quiet) {
            std::ostream& os = out.empty() ? std::cerr : std::cout;
            const ConditionRReport r = lab.explore_condition_r(limit);
            os << "condition_r: max L_x = " << fmt(r.max_value) << " at x = " << r.argmax
               << ", 1 - max = " << fmt(r.best_r) << '\n';
            if (limit >= 1000) {
                const GrowthReport gr = lab.growth_exponent_diagnostic(limit);
                os << "growth_exponent: " << fmt(gr.exponent) << " +- " << fmt(gr.std_error)
                   << " over " << gr.peaks.size() << " dyadic peaks";
                for (const auto& f : gr.flags) os << " [" << f << "]";
                os << '\n';
            }
        }
        return ok ? 0 : 1;
    }
};

struct ScanCmd {
    bool polya = false, turan = false;
    std::optional<std::uint64_t> limit, segment, every, stop_after;
    std::string checkpoint;

    void setup(CLI::App* app)
    {
        app->add_flag("--polya", polya, "Report the Polya sum P(x) (default: both)");
        app->add_flag("--turan", turan, "Report the Turan sum T(n) (default: both)");
        add_count(app, "--limit", limit, "Scan n <= limit");
        add_count(app, "--segment-size", segment, "Sieve segment length");
        app->add_option("--checkpoint", checkpoint, "Checkpoint file; resumed from if present");
        add_count(app, "--checkpoint-every", every, "Segments between checkpoint writes (default 16)");
        add_count(app, "--stop-after", stop_after, "Stop after this many segments (resume later)");
    }

    static void print(const char* name, const SignScanReport& r)
    {
        std::printf("%s: limit=%" PRIu64 " first_violation=", name, r.limit);
        if (r.first_violation)
            std::printf("%" PRIu64, *r.first_violation);
        else
            std::printf("none");
        std::printf(" min=%s argmin=%" PRIu64 " sign_changes=%" PRIu64 "\n", fmt(r.min_value).c_str(),
                    r.argmin, r.sign_change_count);
    }

    int run(const Global& g)
    {
        const std::uint64_t L = need(limit, "--limit");
        const bool both = !polya && !turan;
        if ((polya || both) && L < 2) throw UsageError("--limit must be >= 2 for the Polya scan");
        if (L < 1) throw UsageError("--limit must be >= 1");
        ScanOptions o;
        o.sieve = sieve_options(g, segment);
        if (!checkpoint.empty()) o.checkpoint = checkpoint;
        if (every) o.checkpoint_every = *every;
        if (stop_after) {
            if (*stop_after == 0) throw UsageError("--stop-after must be positive");
            o.stop_after_segments = *stop_after;
        }
        const ScanResult r = scan_sums(L, o);
        if (r.resumed_from_segment > 0 && !g.quiet)
            std::printf("resumed from segment %" PRIu64 "\n", r.resumed_from_segment);
        if (!r.complete) {
            std::printf("interrupted; state saved%s\n", checkpoint.empty() ? " nowhere (no --checkpoint)" : "");
            return 0;
        }
        if (polya || both) print("polya", r.polya);
        if (turan || both) print("turan", r.turan);
        return 0;
    }
};

struct SigmaCCmd {
    std::string kind = "F_one";
    double sigma_min = 0.3, sigma_max = 1.0, sigma_step = 0.05;
    std::string schedule = "1e4,1e5,1e6,1e7";
    std::optional<double> shift;
    std::string out;

    void setup(CLI::App* app)
    {
        app->add_option("--kind", kind, "Integrand: F_half, F_one, L_xi, T_sum, P_over_u or unit");
        app->add_option("--sigma-min", sigma_min, "Grid start (default 0.3)");
        app->add_option("--sigma-max", sigma_max, "Grid end (default 1.0)");
        app->add_option("--sigma-step", sigma_step, "Grid step (default 0.05)");
        app->add_option("--schedule", schedule, "Increasing truncations (default 1e4,1e5,1e6,1e7)");
        app->add_option("--shift", shift, "Kernel u^-(sigma+shift); default depends on --kind");
        app->add_option("--out", out, "CSV output path (sigma,X,re,im,tail_estimate)");
    }

    int run(const Global& g)
    {
        const auto k = parse_step_kind(kind);
        if (!k) throw UsageError("unknown --kind '" + kind + "'");
        if (!(sigma_step > 0) || !(sigma_max >= sigma_min))
            throw UsageError("need --sigma-step > 0 and --sigma-max >= --sigma-min");
        std::vector<double> grid;
        const auto count = static_cast<std::size_t>(std::floor((sigma_max - sigma_min) / sigma_step + 1e-9)) + 1;
        if (count > 100000) throw UsageError("sigma grid too large");
        for (std::size_t i = 0; i < count; ++i) grid.push_back(sigma_min + sigma_step * static_cast<double>(i));
        const std::vector<std::uint64_t> xs = cli::parse_count_list(schedule);
        if (xs.empty() || xs.front() < 2) throw UsageError("--schedule entries must be >= 2");
        const std::uint64_t limit = xs.back();

        SieveOptions so = sieve_options(g, std::nullopt);
        const StepFunction G = *k == StepKind::unit ? StepFunction::unit(limit)
                                                    : StepFunction::build(*k, sieve_to(limit - 1, so), limit);
        SigmaCOptions o;
        o.kernel_shift = shift;
        if (g.tolerance) o.cauchy_tolerance = *g.tolerance;
        const SigmaCEstimate est = estimate_sigma_c(G, grid, xs, o);
        if (!out.empty()) emit(out, [&](std::ostream& os) { write_sigma_c_csv(os, est); });
        if (!g.quiet) {
            for (const auto& c : est.classes)
                std::printf("sigma=%-6.3f %-10s decay=%-10.4f cauchy=%s\n", c.sigma,
                            c.converging ? "converging" : "diverging", c.decay_exponent,
                            c.cauchy ? "yes" : "no");
        }
        std::printf("sigma_c in [%s, %s]", fmt(est.lower).c_str(), fmt(est.upper).c_str());
        if (est.point_estimate) std::printf(" estimate %s", fmt(*est.point_estimate).c_str());
        for (const auto& f : est.flags) std::printf(" [%s]", f.c_str());
        std::printf("\n");
        if (out.empty() && !g.quiet) write_sigma_c_csv(std::cout, est);
        return 0;
    }
};

// Fills options the command line left unset from the config file. Keys
// naming an option of another subcommand are ignored; unknown keys are a
// usage error.
void apply_config(CLI::App& app, CLI::App* sub, const std::string& path)
{
    for (const auto& [key, value] : cli::read_config(path)) {
        const std::string flag = "--" + key;
        CLI::Option* opt = app.get_option_no_throw(flag);
        if (!opt && sub) opt = sub->get_option_no_throw(flag);
        if (!opt) {
            bool elsewhere = false;
            for (CLI::App* other : app.get_subcommands({}))
                elsewhere = elsewhere || other->get_option_no_throw(flag) != nullptr;
            if (!elsewhere) throw UsageError("config " + path + ": unknown key '" + key + "'");
            continue;
        }
        if (key == "config") throw UsageError("config files cannot include other config files");
        if (opt->count() > 0) continue;  // the command line wins
        opt->add_result(value);
        opt->run_callback();
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical workbench for the zeta(2s)/zeta(s) identity chain"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.fallthrough();
    app.require_subcommand(1);

    Global g;
    app.add_option("--threads", g.threads, "Worker threads (speed only; output is identical)")
        ->check(CLI::Range(1u, 1024u));
    app.add_option("--tolerance", g.tolerance,
                   "verify: tolerance floor; integrate: convergence tolerance; "
                   "zeta: error target; sigma-c: Cauchy tolerance");
    app.add_flag("--quiet", g.quiet, "Suppress summaries");
    app.add_option("--config", g.config, "Flat key=value file; command-line flags override it");

    SieveCmd sieve;
    SumsCmd sums;
    XiCmd xi_cmd;
    ZetaCmd zeta_cmd;
    IntegrateCmd integrate;
    VerifyCmd verify;
    ScanCmd scan;
    SigmaCCmd sigma_c;
    struct Entry {
        CLI::App* app;
        std::function<int(const Global&)> run;
    };
    std::vector<Entry> entries;
    auto add = [&](const char* name, const char* help, auto& cmd) {
        CLI::App* sub = app.add_subcommand(name, help);
        cmd.setup(sub);
        entries.push_back({sub, [&cmd](const Global& gl) { return cmd.run(gl); }});
    };
    add("sieve", "Liouville table as CSV (n,lambda,P,T), or lambda(n) for one n", sieve);
    add("sums", "Dirichlet polynomials F_x(1/2), F_x(1), L_x", sums);
    add("xi", "Mean-value exponent sequence xi(n)", xi_cmd);
    add("zeta", "Riemann zeta and the identity ratios", zeta_cmd);
    add("integrate", "Exact Dirichlet integral of a step function", integrate);
    add("verify", "Run the identity checks and write the JSON report", verify);
    add("scan", "Sign scans of the Polya and Turan sums", scan);
    add("sigma-c", "Empirical abscissa of convergence", sigma_c);

    try {
        app.parse(argc, argv);
        CLI::App* chosen = nullptr;
        for (auto& e : entries)
            if (e.app->parsed()) chosen = e.app;
        if (!g.config.empty()) apply_config(app, chosen, g.config);
        for (auto& e : entries)
            if (e.app == chosen) return e.run(g);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
