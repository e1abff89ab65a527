// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is 0 only if every criterion passes.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zid/dirichlet_integral.hpp"
#include "zid/dirichlet_sums.hpp"
#include "zid/identity_lab.hpp"
#include "zid/liouville.hpp"
#include "zid/mvt_xi.hpp"
#include "zid/scans.hpp"
#include "zid/zeta.hpp"

using namespace zid;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void require(bool ok, const std::string& what)
    {
        pass = pass && ok;
        details.push_back(std::string(ok ? "ok   " : "MISS ") + what);
    }
};

std::string num(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Outcome&)>& body)
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    const double t = seconds_since(t0);
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, t);
    for (const auto& d : o.details) std::printf("         %s\n", d.c_str());
    std::fflush(stdout);
}

const IdentityLab& lab()
{
    static const IdentityLab l(1000000);
    return l;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main()
{
    criterion(1, "sieve matches trial division; complete multiplicativity", [](Outcome& o) {
        const auto t0 = std::chrono::steady_clock::now();
        const LiouvilleTable t = sieve_to(100000);
        std::uint64_t mismatches = 0;
        for (std::uint64_t n = 1; n <= 100000; ++n)
            if (t.at(n) != oracle::liouville(n)) ++mismatches;
        std::uint64_t non_mult = 0, pairs = 0;
        for (std::uint64_t m = 1; m <= 10000; ++m)
            for (std::uint64_t n = 1; m * n <= 10000; ++n, ++pairs)
                if (t.at(m * n) != t.at(m) * t.at(n)) ++non_mult;
        const double secs = seconds_since(t0);
        o.require(mismatches == 0, "mismatches with oracle for n <= 1e5: " + std::to_string(mismatches));
        o.require(non_mult == 0, "multiplicativity failures over " + std::to_string(pairs) +
                                     " pairs: " + std::to_string(non_mult));
        o.require(secs < 5.0, "runtime " + num("%.3f", secs) + " s < 5 s");
    });

    criterion(2, "Turan sums positive for n <= 1000 with margin", [](Outcome& o) {
        const auto t0 = std::chrono::steady_clock::now();
        const SignScanReport r = scan_turan(1000);
        const double secs = seconds_since(t0);
        o.require(!r.first_violation, "no n <= 1000 with T(n) <= 0");
        o.require(r.min_value > 1e-6, "min T = " + num("%.10f", r.min_value) + " at n = " +
                                          std::to_string(r.argmin) + " (margin > 1e-6)");
        o.require(secs < 1.0, "runtime " + num("%.3f", secs) + " s < 1 s");
    });

    criterion(3, "Polya sums non-positive for 2 <= x <= 1e6", [](Outcome& o) {
        const auto t0 = std::chrono::steady_clock::now();
        const SignScanReport r = scan_polya(1000000);
        const double secs = seconds_since(t0);
        o.require(!r.first_violation, "no x with P(x) > 0; min P = " + num("%.0f", r.min_value) +
                                          " at x = " + std::to_string(r.argmin));
        o.require(secs < 10.0, "runtime " + num("%.3f", secs) + " s < 10 s");
    });

    criterion(4, "sum of a(n)/n tends to -1", [](Outcome& o) {
        const double r6 = std::abs(f_x(lab().table(), 1.0, 1000000) + 1);
        const double r4 = std::abs(f_x(lab().table(), 1.0, 10000) + 1);
        o.require(r6 < 0.01, "|F_1e6(1) + 1| = " + num("%.3e", r6) + " < 0.01");
        o.require(r6 < r4, "residual at 1e6 below residual at 1e4 (" + num("%.3e", r4) + ")");
    });

    criterion(5, "mean-value exponent sequence", [](Outcome& o) {
        const XiSequence seq = XiSequence::half_one();
        double worst = 0;
        bool in_range = true;
        const auto grid = log_grid(1000000000ULL, 50);
        for (std::uint64_t n : grid) {
            worst = std::max(worst, std::abs(xi_residual(n, seq)) * std::pow(double(n), 0.5));
            const double x = xi(n, seq);
            in_range = in_range && x > 0.5 && x < 1.0;
        }
        o.require(worst <= 1e-14, "max relative residual on " + std::to_string(grid.size()) +
                                      "-point grid to 1e9: " + num("%.2e", worst));
        o.require(in_range, "1/2 < xi(n) < 1 on the grid");
        const MonotoneReport m = check_monotone_limit(seq, 1000000);
        o.require(m.monotone, "strictly decreasing on [2, 1e6]; gap xi(1e6) - 1/2 = " + num("%.5f", m.gap));
        std::mt19937_64 rng(20240601);
        double diff = 0;
        for (int i = 0; i < 50; ++i) {
            const std::uint64_t n = 2 + rng() % 1000000000ULL;
            diff = std::max(diff, std::abs(xi(n, seq) - oracle::xi_bisection(n, 0.5, 1.0)));
        }
        o.require(diff <= 1e-12, "closed form vs bisection on 50 random n: " + num("%.2e", diff));
    });

    criterion(6, "exact decomposition F(1/2) = F(1) + L", [](Outcome& o) {
        const XiSequence seq = XiSequence::half_one();
        for (std::uint64_t x : {10u, 1000u, 1000000u}) {
            const auto& t = lab().table();
            const double r = std::abs(f_x(t, 0.5, x) - f_x(t, 1.0, x) - l_x(t, seq, x));
            o.require(r <= 1e-10, "x = " + std::to_string(x) + ": " + num("%.2e", r));
        }
    });

    criterion(7, "zeta engine", [](Outcome& o) {
        const double e2 = std::abs(zeta(2.0).value - std::numbers::pi * std::numbers::pi / 6);
        o.require(e2 < 1e-12, "|zeta(2) - pi^2/6| = " + num("%.2e", e2));
        const double eh = std::abs(zeta(0.5).value + 1.460354508810);
        o.require(eh < 1e-9, "|zeta(1/2) + 1.460354508810| = " + num("%.2e", eh));
        double conj = 0;
        for (double sigma = -0.9; sigma <= 3.0; sigma += 0.3)
            for (double t = 0.25; t <= 100; t *= 1.7) {
                const Complex s(sigma, t);
                conj = std::max(conj, std::abs(zeta(s).value - std::conj(zeta(std::conj(s)).value)));
            }
        o.require(conj <= 1e-13, "conjugate symmetry defect " + num("%.2e", conj));
        int points = 0, fails = 0;
        for (int i = 1; points < 1000; ++i) {
            const double sigma = 10.0 * i / 1002.0;
            if (std::abs(sigma - 1) < 1e-3) continue;
            ++points;
            if (!real_bounds_check(sigma).pass) ++fails;
        }
        o.require(fails == 0, "1/(s-1) < zeta(s) < s/(s-1) at " + std::to_string(points) +
                                  " points in (0,1)u(1,10), |s-1| >= 1e-3: " + std::to_string(fails) +
                                  " failures");
    });

    criterion(8, "integral of F_u(1) against u^-s for Re s > 1", [](Outcome& o) {
        const auto c = lab().verify_eq_gt1(2.0, 1000000);
        o.require(c.residual < 1e-5, "s=2, X=1e6: residual " + num("%.3e", c.residual) + " < 1e-5");
        double prev = INFINITY;
        bool decreasing = true;
        std::string trail;
        for (std::uint64_t X : {1000u, 10000u, 100000u, 1000000u}) {
            const double r = lab().verify_eq_gt1(2.0, X).residual;
            decreasing = decreasing && r < prev;
            prev = r;
            trail += num(" %.2e", r);
        }
        o.require(decreasing, "decreasing over X = 1e3..1e6:" + trail);
    });

    criterion(9, "integral of F_u(1/2) against u^-(s+1/2)", [](Outcome& o) {
        for (Complex s : {Complex(2, 0), Complex(1.5, 2)}) {
            const auto c = lab().verify_lemma_integral(s, 1000000);
            o.require(c.residual < 1e-4, "s=" + num("%g", s.real()) + num("%+gi", s.imag()) +
                                             ", X=1e6: residual " + num("%.3e", c.residual));
        }
    });

    criterion(10, "zeta(2s)/zeta(s) - (s-1/2) J(s) = zeta(2s+1)/zeta(s+1/2)", [](Outcome& o) {
        const auto c2 = lab().verify_zeta_identity(2.0, 1000000);
        o.require(c2.residual < 1e-4, "s=2, X=1e6: residual " + num("%.3e", c2.residual) + " < 1e-4");

        double prev = INFINITY;
        bool decreasing = true, flagged = true;
        std::string trail;
        double last = 0;
        for (std::uint64_t X : {10000u, 100000u, 1000000u}) {
            const auto c = lab().verify_zeta_identity(0.75, X);
            decreasing = decreasing && c.residual < prev;
            flagged = flagged && c.has_flag("empirical");
            prev = last = c.residual;
            trail += num(" %.3e", c.residual);
        }
        o.require(last < 1e-2, "s=0.75, X=1e6: residual " + num("%.3e", last) + " < 1e-2");
        o.require(decreasing, "s=0.75 residual decreasing over X = 1e4, 1e5, 1e6:" + trail);
        o.require(flagged, "s=0.75 cases carry the empirical flag");

        double worst = 0;
        int cases = 0;
        for (Complex s : default_points())
            for (std::uint64_t X : {10u, 1000u, 10000u, 100000u, 1000000u}) {
                worst = std::max(worst, lab().verify_theorem_main_collapse(s, X).residual);
                ++cases;
            }
        o.require(worst < 1e-12, "finite-truncation collapse over " + std::to_string(cases) +
                                     " (s, X): max residual " + num("%.2e", worst));
    });

    criterion(11, "abscissa of convergence estimates", [](Outcome& o) {
        const std::vector<std::uint64_t> schedule = {10000, 100000, 1000000, 10000000};
        const LiouvilleTable table = sieve_to(10000000);
        const StepFunction f_one = StepFunction::build(StepKind::f_one, table, 10000000);
        std::vector<double> grid;
        for (int i = 0; i <= 14; ++i) grid.push_back(0.30 + 0.05 * i);
        const SigmaCEstimate a = estimate_sigma_c(f_one, grid, schedule);
        o.require(a.lower <= 0.5 && 0.5 <= a.upper && a.upper - a.lower <= 0.1 + 1e-12,
                  "F_one, kernel u^-(sigma+1/2): [" + num("%.3f", a.lower) + ", " +
                      num("%.3f", a.upper) + "] contains 1/2, width <= 0.1");

        std::vector<double> grid1;
        for (int i = 0; i <= 20; ++i) grid1.push_back(0.50 + 0.05 * i);
        const SigmaCEstimate b = estimate_sigma_c(StepFunction::unit(10000000), grid1, schedule);
        o.require(b.lower <= 1.0 && 1.0 <= b.upper,
                  "G = 1, kernel u^-sigma: [" + num("%.3f", b.lower) + ", " + num("%.3f", b.upper) +
                      "] contains 1");
    });

    criterion(12, "verify --all output independent of --threads", [](Outcome& o) {
        const std::string cli = ZID_CLI_PATH;
        auto run = [&](const std::string& args) {
            const int raw = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
            return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
        };
        const int s1 = run("verify --all --threads 1 --out acceptance_t1.json");
        const int s8 = run("verify --all --threads 8 --out acceptance_t8.json");
        o.require(s1 == 0 && s8 == 0, "both runs exit 0 (" + std::to_string(s1) + ", " +
                                          std::to_string(s8) + ")");
        const std::string a = slurp("acceptance_t1.json"), b = slurp("acceptance_t8.json");
        o.require(!a.empty() && a == b, "byte-identical JSON (" + std::to_string(a.size()) + " bytes)");
    });

    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
