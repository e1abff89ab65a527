#pragma once

// Dirichlet polynomials over a(n) (lambda with the n = 1 term removed):
//
//     F_x(alpha) = sum_{n<=x} a(n) n^-alpha
//     L_x(xi)    = sum_{n<=x} a(n) (beta - alpha) log(n) n^-xi(n)
//
// For xi built on (alpha, beta) the identity F_x(alpha) = F_x(beta) + L_x(xi)
// is exact term by term.

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "zid/compensated.hpp"
#include "zid/liouville.hpp"
#include "zid/mvt_xi.hpp"

namespace zid {

enum class SumOrder { ascending, descending };

// F_x(alpha). `table` must cover [2, x] (any table starting at 1 or 2).
double f_x(const LiouvilleTable& table, double alpha, std::uint64_t x,
           SumOrder order = SumOrder::ascending);
// Sieves [1, x] internally.
double f_x(double alpha, std::uint64_t x);

// (beta - alpha) log(n) n^-xi(n), computed as n^-alpha - n^-beta.
// Throws DomainError for n <= 1.
double mvt_weight(std::uint64_t n, const XiSequence& seq);

enum class LMode {
    exact_rearrangement,    // mvt_weight
    direct_exponentiation,  // evaluates xi(n) and n^-xi(n); cross-validation only
};

// L_x(xi). Throws DomainError for x = 0.
double l_x(const LiouvilleTable& table, const XiSequence& seq, std::uint64_t x,
           LMode mode = LMode::exact_rearrangement);
double l_x(const XiSequence& seq, std::uint64_t x, LMode mode = LMode::exact_rearrangement);

// Which prefixes a PrefixEvaluator keeps.
struct HistoryPolicy {
    enum class Kind { none, powers_of_two, stride };
    Kind kind = Kind::powers_of_two;
    std::uint64_t stride = 1;

    bool records(std::uint64_t n) const noexcept
    {
        switch (kind) {
        case Kind::none: return false;
        case Kind::powers_of_two: return (n & (n - 1)) == 0;
        case Kind::stride: return stride != 0 && n % stride == 0;
        }
        return false;
    }
};

// Streaming F_x(alpha): extend() advances x, value() is the compensated sum.
class PrefixEvaluator {
public:
    explicit PrefixEvaluator(double alpha, HistoryPolicy policy = {});

    // Advances the limit to x (no-op if x <= limit()).
    void extend(const LiouvilleTable& table, std::uint64_t x);

    double alpha() const noexcept { return alpha_; }
    std::uint64_t limit() const noexcept { return limit_; }
    double value() const noexcept { return sum_.value(); }
    const std::vector<std::pair<std::uint64_t, double>>& history() const noexcept
    {
        return history_;
    }

private:
    double alpha_;
    HistoryPolicy policy_;
    std::uint64_t limit_ = 1;
    CompensatedSum sum_;
    std::vector<std::pair<std::uint64_t, double>> history_;
};

// Generic Dirichlet polynomial sum_{1<=n<=x} b(n) n^-alpha.
template <class Coefficients>
double dirichlet_polynomial(Coefficients&& b, double alpha, std::uint64_t x)
{
    CompensatedSum acc;
    for (std::uint64_t n = 1; n <= x; ++n)
        acc.add(static_cast<double>(b(n)) * std::pow(static_cast<double>(n), -alpha));
    return acc.value();
}

// CSV rows `x,F_half,F_one,L` at the x selected by `policy`, for x <= x_max.
void write_sums_csv(std::ostream& out, const LiouvilleTable& table, std::uint64_t x_max,
                    HistoryPolicy policy = {});

}  // namespace zid
