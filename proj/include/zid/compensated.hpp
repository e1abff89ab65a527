#pragma once

#include <cmath>
#include <complex>

namespace zid {

// Neumaier's variant of Kahan summation. The running error term is carried
// separately so that value() is accurate even when the sum hovers near zero.
class CompensatedSum {
public:
    constexpr CompensatedSum() = default;
    constexpr CompensatedSum(double sum, double comp) : sum_(sum), comp_(comp) {}

    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    void merge(const CompensatedSum& other) noexcept
    {
        add(other.sum_);
        add(other.comp_);
    }

    CompensatedSum& operator+=(double x) noexcept
    {
        add(x);
        return *this;
    }

    double value() const noexcept { return sum_ + comp_; }
    double raw_sum() const noexcept { return sum_; }
    double compensation() const noexcept { return comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(std::complex<double> z) noexcept
    {
        re_.add(z.real());
        im_.add(z.imag());
    }
    void merge(const CompensatedComplexSum& other) noexcept
    {
        re_.merge(other.re_);
        im_.merge(other.im_);
    }
    std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

}  // namespace zid
