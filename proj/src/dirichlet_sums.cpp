#include "zid/dirichlet_sums.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "zid/errors.hpp"
#include "zid/kernels.hpp"

namespace zid {
namespace {

void require_coverage(const LiouvilleTable& table, std::uint64_t x, const char* who)
{
    if (x >= 2 && (table.lo() > 2 || table.hi() <= x))
        throw DomainError(std::string(who) + ": table [" + std::to_string(table.lo()) + ", " +
                          std::to_string(table.hi()) + ") does not cover [2, " +
                          std::to_string(x) + "]");
}

double power_weight(std::uint64_t n, double alpha)
{
    const auto m = static_cast<double>(n);
    if (alpha == 1.0) return 1.0 / m;
    if (alpha == 0.5) return 1.0 / std::sqrt(m);
    return std::pow(m, -alpha);
}

}  // namespace

double f_x(const LiouvilleTable& table, double alpha, std::uint64_t x, SumOrder order)
{
    if (x <= 1) return 0.0;
    require_coverage(table, x, "f_x");
    const auto signs = table.signs(2, x + 1);
    if (order == SumOrder::ascending && (alpha == 1.0 || alpha == 0.5)) {
        const auto w = alpha == 1.0 ? kernels::Weight::reciprocal : kernels::Weight::reciprocal_sqrt;
        return kernels::weighted_sign_sum(signs, 2, w).value();
    }
    CompensatedSum acc;
    if (order == SumOrder::ascending) {
        for (std::uint64_t n = 2; n <= x; ++n) acc.add(signs[n - 2] * power_weight(n, alpha));
    } else {
        for (std::uint64_t n = x; n >= 2; --n) acc.add(signs[n - 2] * power_weight(n, alpha));
    }
    return acc.value();
}

double f_x(double alpha, std::uint64_t x)
{
    if (x <= 1) return 0.0;
    return f_x(sieve_to(x), alpha, x);
}

double mvt_weight(std::uint64_t n, const XiSequence& seq)
{
    if (n <= 1) throw DomainError("mvt_weight: n must be >= 2 (got " + std::to_string(n) + ")");
    const auto m = static_cast<double>(n);
    if (seq.is_half_one()) return 1.0 / std::sqrt(m) - 1.0 / m;
    return std::pow(m, -seq.alpha()) - std::pow(m, -seq.beta());
}

double l_x(const LiouvilleTable& table, const XiSequence& seq, std::uint64_t x, LMode mode)
{
    if (x == 0) throw DomainError("l_x: x must be >= 1");
    if (x == 1) return 0.0;
    require_coverage(table, x, "l_x");
    const auto signs = table.signs(2, x + 1);
    if (mode == LMode::exact_rearrangement && seq.is_half_one())
        return kernels::weighted_sign_sum(signs, 2, kernels::Weight::mvt_half_one).value();

    CompensatedSum acc;
    for (std::uint64_t n = 2; n <= x; ++n) {
        double w;
        if (mode == LMode::exact_rearrangement) {
            w = mvt_weight(n, seq);
        } else {
            const double log_n = std::log(static_cast<double>(n));
            w = seq.width() * log_n * std::exp(-xi(n, seq) * log_n);
        }
        acc.add(signs[n - 2] * w);
    }
    return acc.value();
}

double l_x(const XiSequence& seq, std::uint64_t x, LMode mode)
{
    if (x == 0) throw DomainError("l_x: x must be >= 1");
    if (x == 1) return 0.0;
    return l_x(sieve_to(x), seq, x, mode);
}

PrefixEvaluator::PrefixEvaluator(double alpha, HistoryPolicy policy)
    : alpha_(alpha), policy_(policy)
{
    if (policy_.records(1)) history_.emplace_back(1, 0.0);
}

void PrefixEvaluator::extend(const LiouvilleTable& table, std::uint64_t x)
{
    if (x <= limit_) return;
    require_coverage(table, x, "PrefixEvaluator");
    for (std::uint64_t n = limit_ + 1; n <= x; ++n) {
        sum_.add(table.at(n) * power_weight(n, alpha_));
        if (policy_.records(n)) history_.emplace_back(n, sum_.value());
    }
    limit_ = x;
}

void write_sums_csv(std::ostream& out, const LiouvilleTable& table, std::uint64_t x_max,
                    HistoryPolicy policy)
{
    require_coverage(table, x_max, "write_sums_csv");
    const XiSequence seq = XiSequence::half_one();
    CompensatedSum half, one, l;
    out << "x,F_half,F_one,L\n";
    char line[160];
    for (std::uint64_t x = 1; x <= x_max; ++x) {
        if (x >= 2) {
            const int a = table.at(x);
            half.add(a * power_weight(x, 0.5));
            one.add(a * power_weight(x, 1.0));
            l.add(a * mvt_weight(x, seq));
        }
        if (policy.records(x)) {
            std::snprintf(line, sizeof line, "%llu,%.17g,%.17g,%.17g\n",
                          static_cast<unsigned long long>(x), half.value(), one.value(), l.value());
            out << line;
        }
    }
}

}  // namespace zid
