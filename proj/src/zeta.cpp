#include "zid/zeta.hpp"

#include <array>
#include <cmath>
#include <string>

#include "zid/compensated.hpp"
#include "zid/errors.hpp"

namespace zid {
namespace {

// B_{2k} / (2k)! for k = 1..16.
constexpr std::array<double, 16> kBernoulliOverFactorial = [] {
    constexpr std::array<double, 16> b2k{
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
        43867.0 / 798.0,
        -174611.0 / 330.0,
        854513.0 / 138.0,
        -236364091.0 / 2730.0,
        8553103.0 / 6.0,
        -23749461029.0 / 870.0,
        8615841276005.0 / 14322.0,
        -7709321041217.0 / 510.0,
    };
    std::array<double, 16> out{};
    double factorial = 1.0;
    for (std::size_t k = 1; k <= 16; ++k) {
        factorial *= static_cast<double>((2 * k - 1) * (2 * k));
        out[k - 1] = b2k[k - 1] / factorial;
    }
    return out;
}();

std::string format_complex(Complex s)
{
    return std::to_string(s.real()) + (s.imag() < 0 ? "" : "+") + std::to_string(s.imag()) + "i";
}

void require_finite(Complex s, const char* who)
{
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw DomainError(std::string(who) + ": argument must be finite");
}

}  // namespace

Complex power_neg(double n, Complex s)
{
    const double log_n = std::log(n);
    const double mag = std::exp(-s.real() * log_n);
    const double phase = s.imag() * log_n;
    return {mag * std::cos(phase), -mag * std::sin(phase)};
}

ZetaValue zeta(Complex s, const ZetaParams& params)
{
    require_finite(s, "zeta");
    if (s == Complex(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
    if (s.real() <= -1.0) throw DomainError("zeta: Re(s) must exceed -1 (got " + format_complex(s) + ")");
    if (params.bernoulli_terms < 2 || params.bernoulli_terms > 15)
        throw DomainError("zeta: bernoulli_terms must lie in [2, 15]");

    const double t = std::fabs(s.imag());
    const double min_cutoff = 2.0 * (t + 10.0);
    std::uint64_t N = params.cutoff;
    if (N == 0) {
        N = std::max<std::uint64_t>(50, static_cast<std::uint64_t>(std::ceil(min_cutoff)));
    } else if (static_cast<double>(N) < min_cutoff) {
        throw DomainError("zeta: cutoff N=" + std::to_string(N) + " below 2(|t|+10)");
    }
    const unsigned m = params.bernoulli_terms;

    CompensatedComplexSum acc;
    for (std::uint64_t n = 1; n < N; ++n) acc.add(power_neg(static_cast<double>(n), s));

    const auto n_real = static_cast<double>(N);
    const Complex n_pow = power_neg(n_real, s);  // N^-s
    acc.add(n_pow * n_real / (s - 1.0));
    acc.add(0.5 * n_pow);

    // T_k = B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
    Complex rising = s;
    double n_inv_pow = 1.0 / n_real;
    Complex term;
    for (unsigned k = 1; k <= m + 1; ++k) {
        if (k > 1) {
            rising *= (s + static_cast<double>(2 * k - 3)) * (s + static_cast<double>(2 * k - 2));
            n_inv_pow /= n_real * n_real;
        }
        term = kBernoulliOverFactorial[k - 1] * rising * n_pow * n_inv_pow;
        if (k <= m) acc.add(term);
    }
    const double sigma_tail = s.real() + 2.0 * m + 1.0;
    const double error =
        std::abs(term) * std::abs(s + static_cast<double>(2 * m + 1)) / sigma_tail;

    ZetaValue out{acc.value(), error, N, m};
    if (!(error <= params.target_abs_error))
        throw PrecisionError("zeta: error estimate " + std::to_string(error) + " exceeds target at s=" +
                             format_complex(s));
    return out;
}

Complex zeta_ratio(Complex s, const ZetaParams& params)
{
    require_finite(s, "zeta_ratio");
    if (s == Complex(1.0, 0.0)) throw PoleError("zeta_ratio: zeta(s) has a pole at s = 1");
    if (s == Complex(0.5, 0.0)) throw PoleError("zeta_ratio: zeta(2s) has a pole at s = 1/2");
    const Complex denom = zeta(s, params).value;
    if (std::abs(denom) < 1e-14)
        throw InstabilityError("zeta_ratio: |zeta(s)| < 1e-14 at s=" + format_complex(s));
    return zeta(2.0 * s, params).value / denom;
}

Complex shifted_ratio(Complex s, const ZetaParams& params)
{
    require_finite(s, "shifted_ratio");
    if (s == Complex(0.5, 0.0)) throw PoleError("shifted_ratio: zeta(s+1/2) has a pole at s = 1/2");
    if (s == Complex(0.0, 0.0)) throw PoleError("shifted_ratio: zeta(2s+1) has a pole at s = 0");
    const Complex denom = zeta(s + 0.5, params).value;
    if (std::abs(denom) < 1e-14)
        throw InstabilityError("shifted_ratio: |zeta(s+1/2)| < 1e-14 at s=" + format_complex(s));
    return zeta(2.0 * s + 1.0, params).value / denom;
}

Complex lambda_series(const LiouvilleTable& table, Complex s, std::uint64_t N)
{
    require_finite(s, "lambda_series");
    if (N < 1) throw DomainError("lambda_series: N must be >= 1");
    if (table.lo() != 1 || table.hi() <= N)
        throw DomainError("lambda_series: table must cover [1, " + std::to_string(N) + "]");
    const auto signs = table.signs(1, N + 1);
    CompensatedComplexSum acc;
    for (std::uint64_t n = 1; n <= N; ++n)
        acc.add(static_cast<double>(signs[n - 1]) * power_neg(static_cast<double>(n), s));
    return acc.value();
}

Complex lambda_series(Complex s, std::uint64_t N)
{
    if (N < 1) throw DomainError("lambda_series: N must be >= 1");
    return lambda_series(sieve_to(N), s, N);
}

RealBoundsReport real_bounds_check(double sigma)
{
    if (!(sigma > 0.0)) throw DomainError("real_bounds_check: sigma must be > 0");
    if (sigma == 1.0) throw PoleError("real_bounds_check: pole at sigma = 1");
    RealBoundsReport r;
    r.sigma = sigma;
    r.lower = 1.0 / (sigma - 1.0);
    r.upper = sigma / (sigma - 1.0);
    r.value = zeta(Complex(sigma, 0.0)).value.real();
    r.pass = r.lower < r.value && r.value < r.upper;
    return r;
}

}  // namespace zid
