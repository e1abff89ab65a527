#pragma once

// Riemann zeta by Euler-Maclaurin summation, plus the ratios
// zeta(2s)/zeta(s) and zeta(2s+1)/zeta(s+1/2) and the truncated series
// sum lambda(n) n^-s that represents the first of them.

#include <complex>
#include <cstdint>

#include "zid/liouville.hpp"

namespace zid {

using Complex = std::complex<double>;

struct ZetaParams {
    // Euler-Maclaurin cutoff N; 0 selects max(50, 2(|t| + 10)).
    std::uint64_t cutoff = 0;
    unsigned bernoulli_terms = 8;  // in [2, 15]
    double target_abs_error = 1e-12;
};

struct ZetaValue {
    Complex value;
    double error_estimate = 0.0;  // magnitude bound from the first omitted term
    std::uint64_t cutoff = 0;
    unsigned bernoulli_terms = 0;
};

// n^-s, exactly conjugate-symmetric in s.
Complex power_neg(double n, Complex s);

// Throws PoleError at s = 1, DomainError for non-finite s, Re s <= -1 or an
// invalid ZetaParams, PrecisionError if the error estimate exceeds
// params.target_abs_error.
ZetaValue zeta(Complex s, const ZetaParams& params = {});

// zeta(2s)/zeta(s). PoleError at s = 1 and s = 1/2; InstabilityError when
// |zeta(s)| < 1e-14.
Complex zeta_ratio(Complex s, const ZetaParams& params = {});

// zeta(2s+1)/zeta(s+1/2). PoleError at s = 0 and s = 1/2; InstabilityError
// when |zeta(s+1/2)| < 1e-14.
Complex shifted_ratio(Complex s, const ZetaParams& params = {});

// sum_{n<=N} lambda(n) n^-s. `table` must start at 1 and cover N.
Complex lambda_series(const LiouvilleTable& table, Complex s, std::uint64_t N);
Complex lambda_series(Complex s, std::uint64_t N);

struct RealBoundsReport {
    double sigma = 0.0;
    double lower = 0.0;  // 1/(sigma - 1)
    double value = 0.0;  // zeta(sigma)
    double upper = 0.0;  // sigma/(sigma - 1)
    bool pass = false;   // lower < value < upper
};

// Throws DomainError for sigma <= 0, PoleError at sigma = 1.
RealBoundsReport real_bounds_check(double sigma);

}  // namespace zid
