#include <cmath>

#include "zid/kernels.hpp"

namespace zid::kernels {
namespace {

std::int64_t sign_sum_scalar(const std::int8_t* signs, std::size_t count)
{
    std::int64_t total = 0;
    for (std::size_t i = 0; i < count; ++i) total += signs[i];
    return total;
}

CompensatedSum weighted_sign_sum_scalar(const std::int8_t* signs, std::size_t count,
                                        std::uint64_t first_n, Weight weight)
{
    CompensatedSum acc;
    for (std::size_t i = 0; i < count; ++i) {
        const double n = static_cast<double>(first_n + i);
        double w = 0.0;
        switch (weight) {
        case Weight::reciprocal: w = 1.0 / n; break;
        case Weight::reciprocal_sqrt: w = 1.0 / std::sqrt(n); break;
        case Weight::mvt_half_one: w = 1.0 / std::sqrt(n) - 1.0 / n; break;
        }
        acc.add(signs[i] * w);
    }
    return acc;
}

void finalize_signs_scalar(const std::uint64_t* product, const std::uint8_t* parity,
                           std::size_t count, std::uint64_t first_n, std::int8_t* out)
{
    for (std::size_t i = 0; i < count; ++i) {
        const unsigned odd = (parity[i] ^ (product[i] != first_n + i ? 1u : 0u)) & 1u;
        out[i] = odd ? std::int8_t{-1} : std::int8_t{1};
    }
}

}  // namespace

const KernelTable& scalar_kernels() noexcept
{
    static const KernelTable table{Isa::scalar, "scalar", &sign_sum_scalar,
                                   &weighted_sign_sum_scalar, &finalize_signs_scalar};
    return table;
}

}  // namespace zid::kernels
