#pragma once

// The mean-value exponent sequence xi(n) in (alpha, beta) defined by
//
//     n^-beta - n^-alpha = -(beta - alpha) * log(n) * n^-xi(n),   n >= 2,
//
// evaluated in closed form.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace zid {

class XiSequence {
public:
    // Throws DomainError unless beta > alpha (both finite).
    XiSequence(double alpha, double beta);

    // (1/2, 1): the pair linking F_x(1/2) and F_x(1).
    static XiSequence half_one() { return XiSequence(0.5, 1.0); }

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double width() const noexcept { return beta_ - alpha_; }
    bool is_half_one() const noexcept { return alpha_ == 0.5 && beta_ == 1.0; }

private:
    double alpha_;
    double beta_;
};

// xi(n) = log(log n)/log n + (log(beta-alpha) - log1p(-n^(alpha-beta)))/log n + alpha.
// Throws DomainError for n <= 1.
double xi(std::uint64_t n, const XiSequence& seq);

// n^-beta - n^-alpha + (beta - alpha) log(n) n^-xi(n); zero up to rounding.
double xi_residual(std::uint64_t n, const XiSequence& seq);

// Same residual with an explicit exponent, for sensitivity checks.
double defining_equation_residual(std::uint64_t n, double exponent, const XiSequence& seq);

struct MonotoneReport {
    std::uint64_t n_max = 0;
    bool monotone = true;                        // xi(n+1) < xi(n) for 2 <= n < n_max
    std::optional<std::uint64_t> first_failure;  // smallest n with xi(n+1) >= xi(n)
    double gap = 0.0;                            // xi(n_max) - alpha
};

// Throws DomainError for n_max < 3.
MonotoneReport check_monotone_limit(const XiSequence& seq, std::uint64_t n_max);

// About `per_decade` log-spaced integers from 2 to n_max (deduplicated, ascending).
std::vector<std::uint64_t> log_grid(std::uint64_t n_max, unsigned per_decade);

// CSV rows `n,xi,residual` over log_grid(n_max, per_decade).
void write_xi_csv(std::ostream& out, const XiSequence& seq, std::uint64_t n_max,
                  unsigned per_decade);

}  // namespace zid
