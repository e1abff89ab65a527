// AVX2 variants. This translation unit is compiled with -mavx2; nothing in
// it may run before dispatch.cpp has confirmed CPU support.

#include "zid/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <array>
#include <cstring>

namespace zid::kernels {
namespace {

std::int64_t sign_sum_avx2(const std::int8_t* signs, std::size_t count)
{
    // signs are +-1, so (s + 1) is 0 or 2 and fits an unsigned byte; SAD
    // against zero folds 8 bytes into each 64-bit lane.
    const __m256i one = _mm256_set1_epi8(1);
    const __m256i zero = _mm256_setzero_si256();
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 32 <= count; i += 32) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(signs + i));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(_mm256_add_epi8(v, one), zero));
    }
    alignas(32) std::array<std::int64_t, 4> lanes{};
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes.data()), acc);
    std::int64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3] - static_cast<std::int64_t>(i);
    for (; i < count; ++i) total += signs[i];
    return total;
}

inline __m256d load_signs4(const std::int8_t* p)
{
    std::int32_t packed;
    std::memcpy(&packed, p, sizeof packed);
    return _mm256_cvtepi32_pd(_mm_cvtepi8_epi32(_mm_cvtsi32_si128(packed)));
}

CompensatedSum weighted_sign_sum_avx2(const std::int8_t* signs, std::size_t count,
                                      std::uint64_t first_n, Weight weight)
{
    // Four independent TwoSum-compensated lanes, merged in lane order.
    // Indices stay exact in double below 2^53.
    __m256d sum = _mm256_setzero_pd();
    __m256d comp = _mm256_setzero_pd();
    __m256d n = _mm256_setr_pd(static_cast<double>(first_n), static_cast<double>(first_n + 1),
                               static_cast<double>(first_n + 2), static_cast<double>(first_n + 3));
    const __m256d step = _mm256_set1_pd(4.0);
    const __m256d one = _mm256_set1_pd(1.0);

    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d w;
        switch (weight) {
        case Weight::reciprocal: w = _mm256_div_pd(one, n); break;
        case Weight::reciprocal_sqrt: w = _mm256_div_pd(one, _mm256_sqrt_pd(n)); break;
        default:
            w = _mm256_sub_pd(_mm256_div_pd(one, _mm256_sqrt_pd(n)), _mm256_div_pd(one, n));
            break;
        }
        const __m256d x = _mm256_mul_pd(load_signs4(signs + i), w);
        const __m256d s = _mm256_add_pd(sum, x);
        const __m256d bp = _mm256_sub_pd(s, sum);
        const __m256d err =
            _mm256_add_pd(_mm256_sub_pd(sum, _mm256_sub_pd(s, bp)), _mm256_sub_pd(x, bp));
        comp = _mm256_add_pd(comp, err);
        sum = s;
        n = _mm256_add_pd(n, step);
    }

    alignas(32) std::array<double, 4> s_lanes{};
    alignas(32) std::array<double, 4> c_lanes{};
    _mm256_store_pd(s_lanes.data(), sum);
    _mm256_store_pd(c_lanes.data(), comp);
    CompensatedSum acc;
    for (double v : s_lanes) acc.add(v);
    for (double v : c_lanes) acc.add(v);
    for (; i < count; ++i) {
        const double m = static_cast<double>(first_n + i);
        double w = 0.0;
        switch (weight) {
        case Weight::reciprocal: w = 1.0 / m; break;
        case Weight::reciprocal_sqrt: w = 1.0 / __builtin_sqrt(m); break;
        case Weight::mvt_half_one: w = 1.0 / __builtin_sqrt(m) - 1.0 / m; break;
        }
        acc.add(signs[i] * w);
    }
    return acc;
}

// Four packed int8 signs for every 4-bit odd/even pattern.
constexpr std::array<std::uint32_t, 16> kSignPatterns = [] {
    std::array<std::uint32_t, 16> t{};
    for (unsigned m = 0; m < 16; ++m) {
        std::uint32_t word = 0;
        for (unsigned b = 0; b < 4; ++b) {
            const std::uint8_t byte = (m >> b) & 1u ? 0xFF : 0x01;
            word |= static_cast<std::uint32_t>(byte) << (8 * b);
        }
        t[m] = word;
    }
    return t;
}();

void finalize_signs_avx2(const std::uint64_t* product, const std::uint8_t* parity,
                         std::size_t count, std::uint64_t first_n, std::int8_t* out)
{
    __m256i n = _mm256_setr_epi64x(static_cast<long long>(first_n),
                                   static_cast<long long>(first_n + 1),
                                   static_cast<long long>(first_n + 2),
                                   static_cast<long long>(first_n + 3));
    const __m256i step = _mm256_set1_epi64x(4);
    const __m256i one = _mm256_set1_epi64x(1);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256i prod = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(product + i));
        // eq -> all ones; +1 turns that into 0 and "not equal" into 1.
        const __m256i unfactored = _mm256_add_epi64(_mm256_cmpeq_epi64(prod, n), one);
        std::int32_t packed;
        std::memcpy(&packed, parity + i, sizeof packed);
        const __m256i par = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
        const __m256i odd = _mm256_and_si256(_mm256_xor_si256(par, unfactored), one);
        const int mask = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_slli_epi64(odd, 63)));
        std::memcpy(out + i, &kSignPatterns[static_cast<unsigned>(mask)], 4);
        n = _mm256_add_epi64(n, step);
    }
    for (; i < count; ++i) {
        const unsigned odd = (parity[i] ^ (product[i] != first_n + i ? 1u : 0u)) & 1u;
        out[i] = odd ? std::int8_t{-1} : std::int8_t{1};
    }
}

}  // namespace

namespace detail {
const KernelTable* avx2_table_if_compiled() noexcept
{
    static const KernelTable table{Isa::avx2, "avx2", &sign_sum_avx2, &weighted_sign_sum_avx2,
                                   &finalize_signs_avx2};
    return &table;
}
}  // namespace detail

}  // namespace zid::kernels

#endif
