#include <atomic>
#include <cstdlib>
#include <string_view>

#include "zid/kernels.hpp"

namespace zid::kernels {

namespace detail {
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable* avx2_table_if_compiled() noexcept;
#else
inline const KernelTable* avx2_table_if_compiled() noexcept { return nullptr; }
#endif
}  // namespace detail

namespace {

bool cpu_has_avx2() noexcept
{
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelTable* initial_selection() noexcept
{
    if (const char* env = std::getenv("ZID_KERNELS"); env && std::string_view(env) == "scalar")
        return &scalar_kernels();
    if (const KernelTable* t = avx2_kernels()) return t;
    return &scalar_kernels();
}

std::atomic<const KernelTable*>& current() noexcept
{
    static std::atomic<const KernelTable*> table{initial_selection()};
    return table;
}

}  // namespace

const KernelTable* avx2_kernels() noexcept
{
    static const KernelTable* table = cpu_has_avx2() ? detail::avx2_table_if_compiled() : nullptr;
    return table;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

bool select(Isa isa) noexcept
{
    const KernelTable* t = isa == Isa::scalar ? &scalar_kernels() : avx2_kernels();
    if (!t) return false;
    current().store(t, std::memory_order_release);
    return true;
}

std::int64_t sign_sum(std::span<const std::int8_t> signs) noexcept
{
    return active().sign_sum(signs.data(), signs.size());
}

CompensatedSum weighted_sign_sum(std::span<const std::int8_t> signs, std::uint64_t first_n,
                                 Weight weight) noexcept
{
    return active().weighted_sign_sum(signs.data(), signs.size(), first_n, weight);
}

}  // namespace zid::kernels
