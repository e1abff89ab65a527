#include "zid/mvt_xi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "zid/errors.hpp"

namespace zid {

XiSequence::XiSequence(double alpha, double beta) : alpha_(alpha), beta_(beta)
{
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !(beta > alpha))
        throw DomainError("XiSequence: require finite alpha < beta");
}

double xi(std::uint64_t n, const XiSequence& seq)
{
    if (n <= 1) throw DomainError("xi: n must be >= 2 (got " + std::to_string(n) + ")");
    const double log_n = std::log(static_cast<double>(n));
    const double decay = std::exp(-seq.width() * log_n);  // n^(alpha - beta)
    return std::log(log_n) / log_n + (std::log(seq.width()) - std::log1p(-decay)) / log_n +
           seq.alpha();
}

double defining_equation_residual(std::uint64_t n, double exponent, const XiSequence& seq)
{
    if (n <= 1) throw DomainError("xi_residual: n must be >= 2");
    const double log_n = std::log(static_cast<double>(n));
    return std::exp(-seq.beta() * log_n) - std::exp(-seq.alpha() * log_n) +
           seq.width() * log_n * std::exp(-exponent * log_n);
}

double xi_residual(std::uint64_t n, const XiSequence& seq)
{
    return defining_equation_residual(n, xi(n, seq), seq);
}

MonotoneReport check_monotone_limit(const XiSequence& seq, std::uint64_t n_max)
{
    if (n_max < 3) throw DomainError("check_monotone_limit: n_max must be >= 3");
    MonotoneReport report;
    report.n_max = n_max;
    double prev = xi(2, seq);
    for (std::uint64_t n = 3; n <= n_max; ++n) {
        const double cur = xi(n, seq);
        if (!(cur < prev) && !report.first_failure) {
            report.monotone = false;
            report.first_failure = n - 1;
        }
        prev = cur;
    }
    report.gap = prev - seq.alpha();
    return report;
}

std::vector<std::uint64_t> log_grid(std::uint64_t n_max, unsigned per_decade)
{
    std::vector<std::uint64_t> grid;
    if (n_max < 2) return grid;
    per_decade = std::max(1u, per_decade);
    const double top = std::log10(static_cast<double>(n_max));
    const double base = std::log10(2.0);
    const auto steps = static_cast<std::uint64_t>(std::ceil((top - base) * per_decade));
    for (std::uint64_t k = 0; k <= steps; ++k) {
        const double e = std::min(top, base + static_cast<double>(k) / per_decade);
        auto n = static_cast<std::uint64_t>(std::llround(std::pow(10.0, e)));
        n = std::clamp<std::uint64_t>(n, 2, n_max);
        if (grid.empty() || grid.back() != n) grid.push_back(n);
    }
    if (grid.back() != n_max) grid.push_back(n_max);
    return grid;
}

void write_xi_csv(std::ostream& out, const XiSequence& seq, std::uint64_t n_max,
                  unsigned per_decade)
{
    out << "n,xi,residual\n";
    char line[128];
    for (std::uint64_t n : log_grid(n_max, per_decade)) {
        std::snprintf(line, sizeof line, "%llu,%.17g,%.17g\n", static_cast<unsigned long long>(n),
                      xi(n, seq), xi_residual(n, seq));
        out << line;
    }
}

}  // namespace zid
