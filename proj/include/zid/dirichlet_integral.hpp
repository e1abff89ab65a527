#pragma once

// Dirichlet integrals of integer-breakpoint step functions,
//
//     I_X(G, s) = int_1^X G(u) u^-(s + shift) du,
//
// computed exactly segment by segment, with an empirical tail model and an
// empirical estimate of the abscissa of convergence.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zid/liouville.hpp"
#include "zid/mvt_xi.hpp"
#include "zid/zeta.hpp"

namespace zid {

enum class StepKind {
    f_half,    // u -> F_u(1/2)
    f_one,     // u -> F_u(1)
    l_xi,      // u -> L_u(xi)
    t_sum,     // u -> T(u)
    p_over_u,  // u -> P(u)/u (P(n)/u on [n, n+1), not piecewise constant)
    unit,      // u -> 1
};

std::string_view to_string(StepKind kind) noexcept;
std::optional<StepKind> parse_step_kind(std::string_view name) noexcept;

class StepFunction {
public:
    // Values for n in [1, limit), enough to integrate up to u = limit.
    // `table` must start at 1 and cover limit - 1. `xi_seq` is used by l_xi.
    static StepFunction build(StepKind kind, const LiouvilleTable& table, std::uint64_t limit,
                              const XiSequence& xi_seq = XiSequence::half_one());
    static StepFunction unit(std::uint64_t limit);

    StepKind kind() const noexcept { return kind_; }
    std::uint64_t limit() const noexcept { return limit_; }

    // Coefficient on [n, n+1): G_n, or P(n) for p_over_u (integrand P(n)/u).
    double coefficient(std::uint64_t n) const { return values_.at(n - 1); }
    std::span<const double> coefficients() const noexcept { return values_; }

    // Kernel shift used when none is given: 1/2 for f_half, f_one, l_xi
    // (kernel u^-(s+1/2)), 0 otherwise (kernel u^-s).
    double default_shift() const noexcept;
    // Growth exponent gamma of the tail model |coefficient_n| <= c n^gamma.
    double growth_exponent() const noexcept;
    // 1 for p_over_u (extra 1/u in the integrand), else 0.
    int extra_power() const noexcept { return kind_ == StepKind::p_over_u ? 1 : 0; }

private:
    StepFunction(StepKind kind, std::uint64_t limit, std::vector<double> values)
        : kind_(kind), limit_(limit), values_(std::move(values))
    {
    }

    StepKind kind_;
    std::uint64_t limit_;
    std::vector<double> values_;
};

struct IntegrateOptions {
    std::optional<double> kernel_shift;  // defaults to StepFunction::default_shift()
    double tolerance = 1e-6;             // for IntegralResult::converged
    unsigned threads = 1;                // speed only; results do not depend on it
};

struct IntegralResult {
    Complex value;
    std::uint64_t truncation = 0;
    // Modelled bound on |int_X^inf ...|; +inf when the model does not apply
    // (the tail is then conditional or divergent).
    double tail_estimate = 0.0;
    bool tail_modeled = false;
    bool converged = false;  // tail_modeled && tail_estimate < tolerance
};

// Exact int_1^X. Throws DomainError if X < 2, X > G.limit(), or the
// effective exponent s + shift (+1 for p_over_u) equals 1.
IntegralResult integrate_step(const StepFunction& G, Complex s, std::uint64_t X,
                              const IntegrateOptions& options = {});

// Several step functions against one kernel; the segment weights are shared.
// All functions use options.kernel_shift or, if unset, the first one's default.
std::vector<IntegralResult> integrate_steps(std::span<const StepFunction* const> gs, Complex s,
                                            std::uint64_t X, const IntegrateOptions& options = {});

// int_n^{n+1} u^-p du.
Complex segment_weight(std::uint64_t n, Complex p);

// c = max |coefficient_n| n^-gamma over [X/2, X).
double tail_constant(const StepFunction& G, std::uint64_t X);

// Tail bound c X^(gamma + 1 - Re p)/(Re p - gamma - 1); nullopt when
// Re p <= gamma + 1.
std::optional<double> tail_bound(const StepFunction& G, double re_p, std::uint64_t X);

// J_xi(s) truncated at X: integrate_step(L_xi, s, X) with kernel u^-(s+1/2).
IntegralResult j_xi(const StepFunction& l_xi, Complex s, std::uint64_t X,
                    const IntegrateOptions& options = {});
IntegralResult j_xi(Complex s, std::uint64_t X, const IntegrateOptions& options = {});

// Partial integrals I_X(G, sigma) for real sigma at each X of `schedule`,
// one row per sigma. Shares logarithms across the grid. Unlike integrate_step,
// the exponent 1 is allowed (segment integral log(1 + 1/n)).
std::vector<std::vector<double>> partial_integral_traces(const StepFunction& G,
                                                         std::span<const double> sigmas,
                                                         std::span<const std::uint64_t> schedule,
                                                         double kernel_shift);

struct SigmaCOptions {
    std::optional<double> kernel_shift;
    // A sigma counts as converging when successive increments of its trace
    // decay like X^-d with d above this threshold.
    double decay_threshold = 0.025;
    // Reported only: last two increments both below this.
    double cauchy_tolerance = 1e-3;
};

struct SigmaClassification {
    double sigma = 0.0;
    bool converging = false;
    double decay_exponent = 0.0;  // d in |increment| ~ X^-d
    bool cauchy = false;
};

struct SigmaCEstimate {
    std::vector<double> sigma_grid;
    std::vector<std::uint64_t> schedule;
    std::vector<std::vector<double>> traces;  // traces[i][k] = I_{schedule[k]}(sigma_grid[i])
    std::vector<std::vector<double>> tail_estimates;  // same shape; +inf when unmodelled
    std::vector<SigmaClassification> classes;
    double lower = 0.0;  // bracket for sigma_c (may be -inf / +inf)
    double upper = 0.0;
    std::optional<double> point_estimate;  // median of sigma - d over converging sigmas
    std::vector<std::string> flags;
};

// Throws DomainError unless the grid is non-empty and ascending and the
// schedule has >= 3 increasing entries with schedule.back() <= G.limit().
SigmaCEstimate estimate_sigma_c(const StepFunction& G, std::span<const double> sigma_grid,
                                std::span<const std::uint64_t> schedule,
                                const SigmaCOptions& options = {});

// CSV rows `sigma,X,re,im,tail_estimate`.
void write_sigma_c_csv(std::ostream& out, const SigmaCEstimate& estimate);

}  // namespace zid
