#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's evaluation paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace zid::oracle {

// Omega(n) by plain trial division.
inline unsigned big_omega(std::uint64_t n)
{
    unsigned count = 0;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        while (n % d == 0) {
            n /= d;
            ++count;
        }
    }
    return count + (n > 1 ? 1 : 0);
}

inline int liouville(std::uint64_t n) { return big_omega(n) % 2 == 0 ? 1 : -1; }

// Exact fraction with 128-bit parts; enough for sums over n <= ~40.
struct Rational {
    __int128 num = 0;
    __int128 den = 1;

    static __int128 gcd(__int128 a, __int128 b)
    {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    Rational& operator+=(const Rational& o)
    {
        num = num * o.den + o.num * den;
        den *= o.den;
        const __int128 g = gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        return *this;
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    int sign() const { return (num > 0) - (num < 0); }
};

// Root of (beta-alpha) log(n) n^-x = n^-alpha - n^-beta in (alpha, beta).
// The left side decreases in x.
inline double xi_bisection(std::uint64_t n, double alpha, double beta)
{
    const long double ln = std::log(static_cast<long double>(n));
    const long double target =
        std::exp(-static_cast<long double>(alpha) * ln) - std::exp(-static_cast<long double>(beta) * ln);
    long double lo = alpha, hi = beta;
    for (int i = 0; i < 200; ++i) {
        const long double mid = 0.5L * (lo + hi);
        const long double f = (static_cast<long double>(beta) - alpha) * ln * std::exp(-mid * ln) - target;
        if (f > 0)
            lo = mid;
        else
            hi = mid;
    }
    return static_cast<double>(0.5L * (lo + hi));
}

// Composite 4-point Gauss-Legendre over [a, b] with `pieces` subintervals.
template <class F>
auto gauss_legendre(F&& f, double a, double b, int pieces)
{
    static constexpr double x[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                    0.8611363115940526};
    static constexpr double w[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                    0.3478548451374538};
    using R = decltype(f(a));
    R total{};
    const double h = (b - a) / pieces;
    for (int k = 0; k < pieces; ++k) {
        const double mid = a + (k + 0.5) * h;
        R part{};
        for (int i = 0; i < 4; ++i) part += w[i] * f(mid + 0.5 * h * x[i]);
        total += 0.5 * h * part;
    }
    return total;
}

// u^-p by std::pow on complex arguments.
inline std::complex<double> upow(double u, std::complex<double> p)
{
    return std::pow(std::complex<double>(u, 0.0), -p);
}

}  // namespace zid::oracle
