#pragma once

// Data-parallel inner loops over Liouville sign tables. Each kernel has a
// scalar reference implementation and, on x86-64, an AVX2 variant chosen at
// runtime. Variants are interchangeable: integer kernels agree exactly,
// floating-point kernels agree to compensated-summation accuracy.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "zid/compensated.hpp"

namespace zid::kernels {

enum class Isa { scalar, avx2 };

// Per-term weight w(n) for weighted_sign_sum.
enum class Weight {
    reciprocal,       // 1/n
    reciprocal_sqrt,  // 1/sqrt(n)
    mvt_half_one,     // 1/sqrt(n) - 1/n
};

struct KernelTable {
    Isa isa;
    std::string_view name;
    std::int64_t (*sign_sum)(const std::int8_t* signs, std::size_t count);
    CompensatedSum (*weighted_sign_sum)(const std::int8_t* signs, std::size_t count,
                                        std::uint64_t first_n, Weight weight);
    // out[i] = (-1)^(parity[i] + [cofactor_product[i] != first_n + i])
    void (*finalize_signs)(const std::uint64_t* cofactor_product, const std::uint8_t* parity,
                           std::size_t count, std::uint64_t first_n, std::int8_t* out);
};

const KernelTable& scalar_kernels() noexcept;

// nullptr when the variant is not compiled in or the CPU lacks the feature.
const KernelTable* avx2_kernels() noexcept;

// Kernels used by the library. Defaults to the best supported ISA; the
// environment variable ZID_KERNELS=scalar forces the reference path.
const KernelTable& active() noexcept;

// Returns false (and leaves the selection untouched) if `isa` is unsupported.
bool select(Isa isa) noexcept;

std::int64_t sign_sum(std::span<const std::int8_t> signs) noexcept;
CompensatedSum weighted_sign_sum(std::span<const std::int8_t> signs, std::uint64_t first_n,
                                 Weight weight) noexcept;

}  // namespace zid::kernels
