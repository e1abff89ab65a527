#include "zid/dirichlet_integral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "zid/compensated.hpp"
#include "zid/dirichlet_sums.hpp"
#include "zid/errors.hpp"

namespace zid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kBlock = 1u << 15;

// exp(z) - 1 without cancellation for small |z|.
Complex expm1(Complex z)
{
    const double x = z.real();
    const double y = z.imag();
    const double half_sin = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin, std::exp(x) * std::sin(y)};
}

}  // namespace

std::string_view to_string(StepKind kind) noexcept
{
    switch (kind) {
    case StepKind::f_half: return "F_half";
    case StepKind::f_one: return "F_one";
    case StepKind::l_xi: return "L_xi";
    case StepKind::t_sum: return "T_sum";
    case StepKind::p_over_u: return "P_over_u";
    case StepKind::unit: return "unit";
    }
    return "?";
}

std::optional<StepKind> parse_step_kind(std::string_view name) noexcept
{
    for (StepKind k : {StepKind::f_half, StepKind::f_one, StepKind::l_xi, StepKind::t_sum,
                       StepKind::p_over_u, StepKind::unit}) {
        if (name == to_string(k)) return k;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// StepFunction

StepFunction StepFunction::build(StepKind kind, const LiouvilleTable& table, std::uint64_t limit,
                                 const XiSequence& xi_seq)
{
    if (kind == StepKind::unit) return unit(limit);
    if (limit < 2) throw DomainError("StepFunction: limit must be >= 2");
    if (table.lo() != 1 || table.hi() < limit)
        throw DomainError("StepFunction: table must cover [1, " + std::to_string(limit - 1) + "]");

    std::vector<double> values(limit - 1);
    const auto signs = table.signs(1, limit);
    if (kind == StepKind::p_over_u) {
        std::int64_t p = 0;
        for (std::uint64_t n = 1; n < limit; ++n) {
            p += signs[n - 1];
            values[n - 1] = static_cast<double>(p);
        }
    } else {
        CompensatedSum acc;
        for (std::uint64_t n = 1; n < limit; ++n) {
            const double lambda = signs[n - 1];
            const auto m = static_cast<double>(n);
            switch (kind) {
            case StepKind::t_sum: acc.add(lambda / m); break;
            case StepKind::f_half:
                if (n > 1) acc.add(lambda / std::sqrt(m));
                break;
            case StepKind::f_one:
                if (n > 1) acc.add(lambda / m);
                break;
            case StepKind::l_xi:
                if (n > 1) acc.add(lambda * mvt_weight(n, xi_seq));
                break;
            default: break;
            }
            values[n - 1] = acc.value();
        }
    }
    return StepFunction(kind, limit, std::move(values));
}

StepFunction StepFunction::unit(std::uint64_t limit)
{
    if (limit < 2) throw DomainError("StepFunction: limit must be >= 2");
    return StepFunction(StepKind::unit, limit, std::vector<double>(limit - 1, 1.0));
}

double StepFunction::default_shift() const noexcept
{
    switch (kind_) {
    case StepKind::f_half:
    case StepKind::f_one:
    case StepKind::l_xi: return 0.5;
    default: return 0.0;
    }
}

double StepFunction::growth_exponent() const noexcept
{
    switch (kind_) {
    case StepKind::f_half:
    case StepKind::l_xi:
    case StepKind::p_over_u: return 0.5;
    default: return 0.0;
    }
}

// ---------------------------------------------------------------------------
// Integration

Complex segment_weight(std::uint64_t n, Complex p)
{
    if (p == Complex(1.0, 0.0)) throw DomainError("segment_weight: exponent 1 is excluded");
    const double l1p = std::log1p(1.0 / static_cast<double>(n));
    // int_n^{n+1} u^-p du = n^(1-p) (1 - (1+1/n)^(1-p)) / (p - 1)
    return -power_neg(static_cast<double>(n), p - 1.0) * expm1((1.0 - p) * l1p) / (p - 1.0);
}

double tail_constant(const StepFunction& G, std::uint64_t X)
{
    const double gamma = G.growth_exponent();
    const std::uint64_t from = std::max<std::uint64_t>(1, X / 2);
    const std::uint64_t to = std::min(X, G.limit());
    double c = 0.0;
    for (std::uint64_t n = from; n < to; ++n) {
        const auto m = static_cast<double>(n);
        const double scale = gamma == 0.0 ? 1.0 : gamma == 0.5 ? 1.0 / std::sqrt(m) : std::pow(m, -gamma);
        c = std::max(c, std::fabs(G.coefficient(n)) * scale);
    }
    return c;
}

namespace {

std::optional<double> tail_from_constant(double c, double gamma, double re_p, std::uint64_t X)
{
    const double q = re_p - gamma - 1.0;
    if (!(q > 0.0)) return std::nullopt;
    return c * std::pow(static_cast<double>(X), -q) / q;
}

}  // namespace

std::optional<double> tail_bound(const StepFunction& G, double re_p, std::uint64_t X)
{
    if (!(re_p - G.growth_exponent() - 1.0 > 0.0)) return std::nullopt;
    return tail_from_constant(tail_constant(G, X), G.growth_exponent(), re_p, X);
}

std::vector<IntegralResult> integrate_steps(std::span<const StepFunction* const> gs, Complex s,
                                            std::uint64_t X, const IntegrateOptions& options)
{
    if (gs.empty()) return {};
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw DomainError("integrate_step: s must be finite");
    if (X < 2) throw DomainError("integrate_step: X must be >= 2");
    const double shift = options.kernel_shift.value_or(gs.front()->default_shift());
    const int extra = gs.front()->extra_power();
    for (const StepFunction* g : gs) {
        if (X > g->limit())
            throw DomainError("integrate_step: X=" + std::to_string(X) + " beyond step function limit " +
                              std::to_string(g->limit()));
        if (g->extra_power() != extra)
            throw DomainError("integrate_step: mixed integrand kinds in one batch");
    }
    const Complex p = s + shift + static_cast<double>(extra);
    if (p == Complex(1.0, 0.0))
        throw DomainError("integrate_step: kernel singularity (s + shift = " +
                          std::to_string(1.0 - extra) + ")");

    const std::uint64_t segments = X - 1;
    const std::uint64_t blocks = (segments + kBlock - 1) / kBlock;
    const std::size_t count = gs.size();
    std::vector<CompensatedComplexSum> partial(blocks * count);

    auto run_block = [&](std::uint64_t b) {
        const std::uint64_t first = 1 + b * kBlock;
        const std::uint64_t last = std::min(X - 1, first + kBlock - 1);
        for (std::uint64_t n = first; n <= last; ++n) {
            const Complex w = segment_weight(n, p);
            for (std::size_t j = 0; j < count; ++j) {
                const double g = gs[j]->coefficient(n);
                if (g != 0.0) partial[b * count + j].add(g * w);
            }
        }
    };
    const unsigned threads = static_cast<unsigned>(
        std::clamp<std::uint64_t>(options.threads == 0 ? 1 : options.threads, 1, blocks));
    if (threads == 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::uint64_t b = t; b < blocks; b += threads) run_block(b);
            });
    }

    std::vector<IntegralResult> results(count);
    for (std::size_t j = 0; j < count; ++j) {
        CompensatedComplexSum total;
        for (std::uint64_t b = 0; b < blocks; ++b) total.merge(partial[b * count + j]);
        IntegralResult& r = results[j];
        r.value = total.value();
        r.truncation = X;
        const auto tail = tail_bound(*gs[j], p.real(), X);
        r.tail_modeled = tail.has_value();
        r.tail_estimate = tail.value_or(kInf);
        r.converged = r.tail_modeled && r.tail_estimate < options.tolerance;
    }
    return results;
}

IntegralResult integrate_step(const StepFunction& G, Complex s, std::uint64_t X,
                              const IntegrateOptions& options)
{
    const StepFunction* one[] = {&G};
    return integrate_steps(one, s, X, options).front();
}

IntegralResult j_xi(const StepFunction& l_xi, Complex s, std::uint64_t X,
                    const IntegrateOptions& options)
{
    if (l_xi.kind() != StepKind::l_xi) throw DomainError("j_xi: step function must be L_xi");
    IntegrateOptions o = options;
    o.kernel_shift = 0.5;
    return integrate_step(l_xi, s, X, o);
}

IntegralResult j_xi(Complex s, std::uint64_t X, const IntegrateOptions& options)
{
    if (X < 2) throw DomainError("j_xi: X must be >= 2");
    const LiouvilleTable table = sieve_to(X);
    return j_xi(StepFunction::build(StepKind::l_xi, table, X), s, X, options);
}

// ---------------------------------------------------------------------------
// Abscissa of convergence

std::vector<std::vector<double>> partial_integral_traces(const StepFunction& G,
                                                         std::span<const double> sigmas,
                                                         std::span<const std::uint64_t> schedule,
                                                         double kernel_shift)
{
    if (schedule.empty()) return std::vector<std::vector<double>>(sigmas.size());
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        if (schedule[k] < 2 || (k > 0 && schedule[k] <= schedule[k - 1]))
            throw DomainError("partial_integral_traces: schedule must be increasing and >= 2");
    }
    if (schedule.back() > G.limit())
        throw DomainError("partial_integral_traces: schedule exceeds step function limit");

    const std::size_t m = sigmas.size();
    std::vector<double> a(m);  // 1 - p
    for (std::size_t i = 0; i < m; ++i) a[i] = 1.0 - (sigmas[i] + kernel_shift + G.extra_power());
    std::vector<CompensatedSum> acc(m);
    std::vector<std::vector<double>> traces(m, std::vector<double>(schedule.size()));
    std::size_t next = 0;
    const std::uint64_t last = schedule.back();
    for (std::uint64_t n = 1; n < last; ++n) {
        const double g = G.coefficient(n);
        if (g != 0.0) {
            const double log_n = std::log(static_cast<double>(n));
            const double l1p = std::log1p(1.0 / static_cast<double>(n));
            // a = 0 is the u^-1 kernel: the segment integral is log1p(1/n)
            for (std::size_t i = 0; i < m; ++i)
                acc[i].add(a[i] == 0.0 ? g * l1p
                                       : g * std::exp(a[i] * log_n) * std::expm1(a[i] * l1p) / a[i]);
        }
        while (next < schedule.size() && schedule[next] == n + 1) {
            for (std::size_t i = 0; i < m; ++i) traces[i][next] = acc[i].value();
            ++next;
        }
    }
    return traces;
}

SigmaCEstimate estimate_sigma_c(const StepFunction& G, std::span<const double> sigma_grid,
                                std::span<const std::uint64_t> schedule,
                                const SigmaCOptions& options)
{
    if (sigma_grid.empty()) throw DomainError("estimate_sigma_c: empty sigma grid");
    if (!std::is_sorted(sigma_grid.begin(), sigma_grid.end()) ||
        std::adjacent_find(sigma_grid.begin(), sigma_grid.end()) != sigma_grid.end())
        throw DomainError("estimate_sigma_c: sigma grid must be strictly ascending");
    if (schedule.size() < 3) throw DomainError("estimate_sigma_c: schedule needs >= 3 truncations");

    const double shift = options.kernel_shift.value_or(G.default_shift());
    SigmaCEstimate est;
    est.sigma_grid.assign(sigma_grid.begin(), sigma_grid.end());
    est.schedule.assign(schedule.begin(), schedule.end());
    est.traces = partial_integral_traces(G, sigma_grid, schedule, shift);

    const std::size_t K = schedule.size();
    const double ratio = std::sqrt(static_cast<double>(schedule[K - 1]) /
                                   static_cast<double>(schedule[K - 3]));
    std::vector<double> constants;
    for (std::uint64_t X : schedule) constants.push_back(tail_constant(G, X));
    for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
        const double re_p = sigma_grid[i] + shift + G.extra_power();
        std::vector<double> tails;
        for (std::size_t k = 0; k < K; ++k)
            tails.push_back(
                tail_from_constant(constants[k], G.growth_exponent(), re_p, schedule[k]).value_or(kInf));
        est.tail_estimates.push_back(std::move(tails));

        const auto& tr = est.traces[i];
        const double d1 = std::fabs(tr[K - 2] - tr[K - 3]);
        const double d2 = std::fabs(tr[K - 1] - tr[K - 2]);
        SigmaClassification c;
        c.sigma = sigma_grid[i];
        if (d2 == 0.0)
            c.decay_exponent = kInf;
        else if (d1 == 0.0)
            c.decay_exponent = -kInf;
        else
            c.decay_exponent = std::log(d1 / d2) / std::log(ratio);
        c.converging = c.decay_exponent > options.decay_threshold && d2 < d1;
        c.cauchy = d1 < options.cauchy_tolerance && d2 < options.cauchy_tolerance;
        est.classes.push_back(c);
    }

    std::optional<double> max_div, min_conv;
    std::vector<double> points;
    for (const auto& c : est.classes) {
        if (c.converging) {
            if (!min_conv) min_conv = c.sigma;
            if (std::isfinite(c.decay_exponent)) points.push_back(c.sigma - c.decay_exponent);
        } else {
            max_div = c.sigma;
        }
    }
    if (!min_conv) {
        est.lower = *max_div;
        est.upper = kInf;
        est.flags.push_back("no_converging_sigma");
    } else if (!max_div) {
        est.lower = -kInf;
        est.upper = *min_conv;
        est.flags.push_back("no_diverging_sigma");
    } else if (*max_div < *min_conv) {
        est.lower = *max_div;
        est.upper = *min_conv;
    } else {
        est.lower = *min_conv;
        est.upper = *max_div;
        est.flags.push_back("inconclusive");
    }
    if (!points.empty()) {
        std::sort(points.begin(), points.end());
        const std::size_t h = points.size() / 2;
        est.point_estimate =
            points.size() % 2 ? points[h] : 0.5 * (points[h - 1] + points[h]);
    }
    return est;
}

void write_sigma_c_csv(std::ostream& out, const SigmaCEstimate& est)
{
    out << "sigma,X,re,im,tail_estimate\n";
    char line[160];
    for (std::size_t i = 0; i < est.sigma_grid.size(); ++i) {
        for (std::size_t k = 0; k < est.schedule.size(); ++k) {
            std::snprintf(line, sizeof line, "%.17g,%llu,%.17g,0,%.17g\n", est.sigma_grid[i],
                          static_cast<unsigned long long>(est.schedule[k]), est.traces[i][k],
                          est.tail_estimates[i][k]);
            out << line;
        }
    }
}

}  // namespace zid
