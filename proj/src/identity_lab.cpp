#include "zid/identity_lab.hpp"

#include <algorithm>
#include <cmath>
#include "json.hpp"

#include "zid/dirichlet_sums.hpp"
#include "zid/errors.hpp"

namespace zid {

namespace {

constexpr StepKind kLabKinds[] = {StepKind::f_half, StepKind::f_one, StepKind::l_xi,
                                  StepKind::t_sum, StepKind::p_over_u};

void require_half_plane(Complex s, double bound, const char* who)
{
    if (!(s.real() > bound))
        throw DomainError(std::string(who) + ": requires Re(s) > " + (bound == 1.0 ? "1" : "1/2"));
}

}  // namespace

bool VerificationCase::has_flag(std::string_view f) const
{
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

std::vector<Complex> default_points()
{
    return {Complex(2.0, 0.0), Complex(3.0, 0.0), Complex(1.5, 2.0), Complex(0.75, 0.0),
            Complex(0.6, 1.0)};
}

IdentityLab::IdentityLab(std::uint64_t max_X, LabOptions options)
    : max_X_(max_X), options_(std::move(options))
{
    if (max_X < 2) throw DomainError("IdentityLab: max_X must be >= 2");
    options_.sieve.threads = std::max(options_.sieve.threads, options_.threads);
    table_ = sieve_to(max_X, options_.sieve);
    for (StepKind k : kLabKinds) steps_.push_back(StepFunction::build(k, table_, max_X));
}

const StepFunction& IdentityLab::step(StepKind kind) const
{
    for (const auto& s : steps_)
        if (s.kind() == kind) return s;
    throw DomainError("IdentityLab: no step function of kind " + std::string(to_string(kind)));
}

void IdentityLab::require_X(std::uint64_t X) const
{
    if (X < 2 || X > max_X_)
        throw DomainError("IdentityLab: X=" + std::to_string(X) + " outside [2, " +
                          std::to_string(max_X_) + "]");
}

std::vector<IntegralResult> IdentityLab::integrals(std::initializer_list<StepKind> kinds, Complex s,
                                                   std::uint64_t X, double shift) const
{
    require_X(X);
    std::vector<const StepFunction*> gs;
    for (StepKind k : kinds) gs.push_back(&step(k));
    IntegrateOptions o;
    o.kernel_shift = shift;
    o.threads = options_.threads;
    return integrate_steps(gs, s, X, o);
}

VerificationCase IdentityLab::finish(std::string name, std::optional<Complex> s, std::uint64_t X,
                                     Complex lhs, Complex rhs, double tolerance,
                                     std::vector<std::string> flags) const
{
    VerificationCase c;
    c.name = std::move(name);
    c.s = s;
    c.X = X;
    c.lhs = lhs;
    c.rhs = rhs;
    c.residual = std::abs(lhs - rhs);
    c.tolerance = tolerance;
    c.pass = c.residual <= tolerance;
    c.flags = std::move(flags);
    return c;
}

VerificationCase IdentityLab::verify_lemma_an(std::uint64_t x) const
{
    if (x < 2) throw DomainError("verify_lemma_an: x must be >= 2");
    require_X(x);
    const double value = f_x(table_, 1.0, x);
    const double tolerance = std::min(1.0, 10.0 / std::sqrt(static_cast<double>(x)));
    std::vector<std::string> flags{"adaptive_tolerance"};
    if (x >= 200) {
        const double earlier = std::fabs(f_x(table_, 1.0, x / 100) + 1.0);
        flags.push_back(std::fabs(value + 1.0) < earlier ? "trend_decreasing" : "trend_not_decreasing");
    }
    return finish("lemma_an", std::nullopt, x, Complex(value, 0.0), Complex(-1.0, 0.0), tolerance,
                  std::move(flags));
}

VerificationCase IdentityLab::verify_eq_gt1(Complex s, std::uint64_t X) const
{
    require_half_plane(s, 1.0, "verify_eq_gt1");
    const Complex lhs = (zeta_ratio(s, options_.zeta) - 1.0) / (s - 1.0);
    const auto r = integrals({StepKind::f_one}, s, X, 0.0);
    const double tol = std::max(options_.tolerance_floor, 2.0 * r[0].tail_estimate);
    return finish("eq_gt1", s, X, lhs, r[0].value, tol, {});
}

VerificationCase IdentityLab::verify_lemma_integral(Complex s, std::uint64_t X) const
{
    require_half_plane(s, 1.0, "verify_lemma_integral");
    const Complex lhs = (zeta_ratio(s, options_.zeta) - 1.0) / (s - 0.5);
    const auto r = integrals({StepKind::f_half}, s, X, 0.5);
    const double tol = std::max(options_.tolerance_floor, 2.0 * r[0].tail_estimate);
    return finish("lemma_integral", s, X, lhs, r[0].value, tol, {});
}

VerificationCase IdentityLab::verify_theorem_main(Complex s, std::uint64_t X) const
{
    require_half_plane(s, 0.5, "verify_theorem_main");
    const auto r = integrals({StepKind::l_xi, StepKind::f_one}, s, X, 0.5);
    const Complex lhs = (zeta_ratio(s, options_.zeta) - 1.0) / (s - 0.5) - r[0].value;
    if (s.real() > 1.0) {
        const double tol =
            std::max(options_.tolerance_floor, 2.0 * (r[0].tail_estimate + r[1].tail_estimate));
        return finish("theorem_main", s, X, lhs, r[1].value, tol, {});
    }
    return finish("theorem_main", s, X, lhs, r[1].value, options_.empirical_tolerance,
                  {"empirical", "tail_unmodeled"});
}

VerificationCase IdentityLab::verify_theorem_main_collapse(Complex s, std::uint64_t X) const
{
    const auto r = integrals({StepKind::f_half, StepKind::l_xi, StepKind::f_one}, s, X, 0.5);
    return finish("theorem_main_collapse", s, X, r[0].value - r[1].value, r[2].value,
                  options_.collapse_tolerance, {"finite_truncation"});
}

VerificationCase IdentityLab::verify_zeta_identity(Complex s, std::uint64_t X) const
{
    require_half_plane(s, 0.5, "verify_zeta_identity");
    const auto r = integrals({StepKind::l_xi}, s, X, 0.5);
    const Complex lhs = zeta_ratio(s, options_.zeta) - (s - 0.5) * r[0].value;
    const Complex rhs = shifted_ratio(s, options_.zeta);
    if (s.real() > 1.0) {
        const double tol =
            std::max(options_.tolerance_floor, 2.0 * std::abs(s - 0.5) * r[0].tail_estimate);
        return finish("zeta_identity", s, X, lhs, rhs, tol, {});
    }
    return finish("zeta_identity", s, X, lhs, rhs, options_.empirical_tolerance,
                  {"empirical", "tail_unmodeled"});
}

VerificationCase IdentityLab::verify_zeta_identity_series(Complex s, std::uint64_t X) const
{
    require_half_plane(s, 0.5, "verify_zeta_identity_series");
    require_X(X);
    const Complex lhs = shifted_ratio(s, options_.zeta);
    const Complex rhs = lambda_series(table_, s + 0.5, X);
    // |sum_{n>X} lambda(n) n^-w| <= int_X^inf u^-Re(w) du
    const double d = s.real() - 0.5;
    const double bound = std::pow(static_cast<double>(X), -d) / d;
    return finish("zeta_identity_series", s, X, lhs, rhs,
                  std::max(options_.tolerance_floor, bound), {"series_cross_check"});
}

VerificationCase IdentityLab::verify_polya_representation(Complex s, std::uint64_t X) const
{
    require_half_plane(s, 1.0, "verify_polya_representation");
    const auto r = integrals({StepKind::p_over_u}, s, X, 0.0);
    const double tol =
        std::max(options_.tolerance_floor, 2.0 * std::abs(s) * r[0].tail_estimate);
    return finish("polya_representation", s, X, zeta_ratio(s, options_.zeta), s * r[0].value, tol,
                  {});
}

VerificationCase IdentityLab::verify_turan_representation(Complex s, std::uint64_t X) const
{
    require_half_plane(s, 1.0, "verify_turan_representation");
    const auto r = integrals({StepKind::t_sum}, s, X, 0.0);
    const double tol =
        std::max(options_.tolerance_floor, 2.0 * std::abs(s - 1.0) * r[0].tail_estimate);
    return finish("turan_representation", s, X, zeta_ratio(s, options_.zeta),
                  (s - 1.0) * r[0].value, tol, {});
}

std::vector<VerificationCase> IdentityLab::run_all(std::span<const Complex> points,
                                                   std::uint64_t X) const
{
    std::vector<VerificationCase> cases;
    cases.push_back(verify_lemma_an(X));
    for (Complex s : points)
        if (s.real() > 1.0) cases.push_back(verify_eq_gt1(s, X));
    for (Complex s : points)
        if (s.real() > 1.0) cases.push_back(verify_lemma_integral(s, X));
    for (Complex s : points)
        if (s.real() > 1.0) cases.push_back(verify_polya_representation(s, X));
    for (Complex s : points)
        if (s.real() > 1.0) cases.push_back(verify_turan_representation(s, X));
    for (Complex s : points) cases.push_back(verify_theorem_main(s, X));
    for (Complex s : points) cases.push_back(verify_theorem_main_collapse(s, X));
    for (Complex s : points) cases.push_back(verify_zeta_identity(s, X));
    for (Complex s : points) cases.push_back(verify_zeta_identity_series(s, X));
    return cases;
}

ConditionRReport IdentityLab::explore_condition_r(std::uint64_t x_max) const
{
    if (x_max < 2) throw DomainError("explore_condition_r: x_max must be >= 2");
    require_X(x_max);
    const XiSequence seq = XiSequence::half_one();
    ConditionRReport rep;
    rep.x_max = x_max;
    CompensatedSum acc;
    std::uint64_t next_sample = 10;
    for (std::uint64_t x = 2; x <= x_max; ++x) {
        acc.add(table_.at(x) * mvt_weight(x, seq));
        const double v = acc.value();
        if (x == 2 || v > rep.max_value) {
            rep.max_value = v;
            rep.argmax = x;
        }
        if (x == next_sample) {
            rep.samples.emplace_back(x, v);
            next_sample *= 10;
        }
        if (x == x_max && (rep.samples.empty() || rep.samples.back().first != x))
            rep.samples.emplace_back(x, v);
    }
    rep.best_r = 1.0 - rep.max_value;
    return rep;
}

GrowthReport fit_growth_exponent(const std::function<double(std::uint64_t)>& prefix,
                                 std::uint64_t x_max)
{
    if (x_max < 16) throw DomainError("growth exponent: x_max must be >= 16");
    GrowthReport rep;
    rep.x_max = x_max;
    for (std::uint64_t lo = 16; lo <= x_max; lo *= 2) {
        const std::uint64_t hi = std::min(x_max, 2 * lo - 1);
        double peak = 0.0;
        std::uint64_t arg = 0;
        for (std::uint64_t x = lo; x <= hi; ++x) {
            const double v = std::fabs(prefix(x));
            if (v > peak) {
                peak = v;
                arg = x;
            }
        }
        if (peak > 0.0) rep.peaks.emplace_back(arg, peak);
    }
    const std::size_t m = rep.peaks.size();
    if (m < 3) {
        rep.flags.push_back("insufficient_peaks");
        return rep;
    }
    double sx = 0, sy = 0;
    for (auto [x, p] : rep.peaks) {
        sx += std::log(static_cast<double>(x));
        sy += std::log(p);
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (auto [x, p] : rep.peaks) {
        const double dx = std::log(static_cast<double>(x)) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(p) - my);
    }
    rep.exponent = sxy / sxx;
    rep.intercept = my - rep.exponent * mx;
    double rss = 0;
    for (auto [x, p] : rep.peaks) {
        const double e = std::log(p) - (rep.intercept + rep.exponent * std::log(static_cast<double>(x)));
        rss += e * e;
    }
    rep.std_error = std::sqrt(rss / static_cast<double>(m - 2) / sxx);
    if (m < 8 || rep.std_error > 0.05) rep.flags.push_back("wide_band");
    return rep;
}

GrowthReport IdentityLab::growth_exponent_diagnostic(std::uint64_t x_max) const
{
    if (x_max < 1000) throw DomainError("growth_exponent_diagnostic: x_max must be >= 1000");
    require_X(x_max);
    std::vector<double> prefix(x_max + 1, 0.0);
    std::int64_t p = 0;
    for (std::uint64_t x = 1; x <= x_max; ++x) {
        p += table_.at(x);
        prefix[x] = static_cast<double>(p);
    }
    return fit_growth_exponent([&](std::uint64_t x) { return prefix[x]; }, x_max);
}

bool all_gating_pass(std::span<const VerificationCase> cases)
{
    return std::all_of(cases.begin(), cases.end(),
                       [](const VerificationCase& c) { return !c.gating() || c.pass; });
}

std::string cases_to_json(std::span<const VerificationCase> cases, int indent)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : cases) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["s_re"] = c.s ? nlohmann::ordered_json(c.s->real()) : nlohmann::ordered_json(nullptr);
        j["s_im"] = c.s ? nlohmann::ordered_json(c.s->imag()) : nlohmann::ordered_json(nullptr);
        j["X"] = c.X;
        j["lhs_re"] = c.lhs.real();
        j["lhs_im"] = c.lhs.imag();
        j["rhs_re"] = c.rhs.real();
        j["rhs_im"] = c.rhs.imag();
        j["residual"] = c.residual;
        j["tolerance"] = c.tolerance;
        j["pass"] = c.pass;
        j["flags"] = c.flags;
        arr.push_back(std::move(j));
    }
    return arr.dump(indent);
}

}  // namespace zid
