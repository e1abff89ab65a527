#include "zid/liouville.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "zid/errors.hpp"
#include "zid/kernels.hpp"

namespace zid {

std::uint64_t isqrt(std::uint64_t n) noexcept
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && (r > 0xFFFFFFFFu || r * r > n)) --r;
    while (r < 0xFFFFFFFFu && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit)
{
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

// ---------------------------------------------------------------------------
// Single-value evaluation

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Deterministic Miller-Rabin for all 64-bit n.
bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2, 325, 9375, 28178, 450775, 9780504, 1795265022}) {
        a %= n;
        if (a == 0) continue;
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Pollard-Brent; n must be odd, composite and free of tiny factors.
std::uint64_t find_factor(std::uint64_t n)
{
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t y = 2, x = 2, q = 1, g = 1, ys = 2;
        const std::uint64_t m = 128;
        auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        for (std::uint64_t r = 1; g == 1; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            for (std::uint64_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

unsigned omega_of_cofactor(std::uint64_t n)
{
    if (n == 1) return 0;
    if (is_prime(n)) return 1;
    const std::uint64_t d = find_factor(n);
    return omega_of_cofactor(d) + omega_of_cofactor(n / d);
}

}  // namespace

unsigned big_omega(std::uint64_t n)
{
    if (n == 0) throw DomainError("big_omega: n must be >= 1");
    unsigned count = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++count;
    }
    for (std::uint64_t p = 3; p < 1000 && p * p <= n; p += 2) {
        while (n % p == 0) {
            n /= p;
            ++count;
        }
    }
    return count + omega_of_cofactor(n);
}

int liouville(std::uint64_t n)
{
    if (n == 0) throw DomainError("liouville: n must be >= 1 (got 0)");
    return big_omega(n) % 2 == 0 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Table

LiouvilleTable::LiouvilleTable(std::uint64_t lo, std::uint64_t hi, std::vector<std::int8_t> values)
    : lo_(lo), hi_(hi), values_(std::move(values))
{
    if (lo < 1 || hi <= lo) throw DomainError("LiouvilleTable: require 1 <= lo < hi");
    if (values_.size() != hi - lo) throw DomainError("LiouvilleTable: value count mismatch");
}

int LiouvilleTable::at(std::uint64_t n) const
{
    if (!contains(n))
        throw DomainError("LiouvilleTable: n=" + std::to_string(n) + " outside [" +
                          std::to_string(lo_) + ", " + std::to_string(hi_) + ")");
    return values_[n - lo_];
}

std::span<const std::int8_t> LiouvilleTable::signs(std::uint64_t from, std::uint64_t to) const
{
    from = std::clamp(from, lo_, hi_);
    to = std::clamp(to, from, hi_);
    return std::span<const std::int8_t>(values_).subspan(from - lo_, to - from);
}

// ---------------------------------------------------------------------------
// Segmented sieve

namespace {

struct SegmentBuffers {
    std::vector<std::uint64_t> product;
    std::vector<std::uint8_t> parity;
};

class SegmentSiever {
public:
    explicit SegmentSiever(std::uint64_t hi)
    {
        const std::uint64_t root = isqrt(hi - 1);
        if (root > 0xFFFFFFFFull) throw CapacityError("sieve: base primes beyond 2^32 required");
        primes_ = primes_up_to(static_cast<std::uint32_t>(root));
    }

    // Fills out[i] = lambda(a + i) for i in [0, b - a).
    void run(std::uint64_t a, std::uint64_t b, std::int8_t* out, SegmentBuffers& buf) const
    {
        const std::size_t len = b - a;
        buf.product.assign(len, 1);
        buf.parity.assign(len, 0);
        const std::uint64_t last = b - 1;
        for (std::uint64_t p : primes_) {
            if (p * p > last) break;
            for (std::uint64_t pk = p;; pk *= p) {
                const std::uint64_t start = (a + pk - 1) / pk * pk;
                for (std::uint64_t m = start; m < b; m += pk) {
                    const std::size_t i = m - a;
                    buf.parity[i] ^= 1u;
                    buf.product[i] *= p;
                }
                if (pk > last / p) break;
            }
        }
        kernels::active().finalize_signs(buf.product.data(), buf.parity.data(), len, a, out);
    }

private:
    std::vector<std::uint32_t> primes_;
};

void validate_range(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options)
{
    if (lo < 1 || hi <= lo)
        throw DomainError("sieve: require 1 <= lo < hi (got lo=" + std::to_string(lo) +
                          ", hi=" + std::to_string(hi) + ")");
    if (hi > (std::uint64_t{1} << 63)) throw DomainError("sieve: hi above 2^63 is not supported");
    if (options.segment_size == 0) throw DomainError("sieve: segment_size must be positive");
}

}  // namespace

LiouvilleTable sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options)
{
    validate_range(lo, hi, options);
    if (hi - lo > options.max_entries)
        throw CapacityError("sieve: range of " + std::to_string(hi - lo) +
                            " entries exceeds the budget of " + std::to_string(options.max_entries));

    const SegmentSiever siever(hi);
    std::vector<std::int8_t> values(hi - lo);
    const std::uint64_t seg = options.segment_size;
    const std::uint64_t segments = (hi - lo + seg - 1) / seg;
    std::atomic<std::uint64_t> next{0};

    auto worker = [&] {
        SegmentBuffers buf;
        for (std::uint64_t k = next++; k < segments; k = next++) {
            const std::uint64_t a = lo + k * seg;
            const std::uint64_t b = std::min(hi, a + seg);
            siever.run(a, b, values.data() + (a - lo), buf);
        }
    };
    const unsigned threads =
        static_cast<unsigned>(std::clamp<std::uint64_t>(options.threads, 1, segments));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return LiouvilleTable(lo, hi, std::move(values));
}

LiouvilleTable sieve_to(std::uint64_t limit, const SieveOptions& options)
{
    if (limit < 1) throw DomainError("sieve_to: limit must be >= 1");
    return sieve_range(1, limit + 1, options);
}

void for_each_segment(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options,
                      const SegmentVisitor& visit, std::uint64_t first_segment)
{
    validate_range(lo, hi, options);
    const SegmentSiever siever(hi);
    const std::uint64_t seg = options.segment_size;
    const std::uint64_t segments = (hi - lo + seg - 1) / seg;
    const unsigned batch = std::max(1u, options.threads);

    std::vector<std::vector<std::int8_t>> out(batch);
    std::vector<SegmentBuffers> bufs(batch);

    for (std::uint64_t k0 = first_segment; k0 < segments; k0 += batch) {
        const std::uint64_t count = std::min<std::uint64_t>(batch, segments - k0);
        auto job = [&](std::uint64_t j) {
            const std::uint64_t a = lo + (k0 + j) * seg;
            const std::uint64_t b = std::min(hi, a + seg);
            out[j].resize(b - a);
            siever.run(a, b, out[j].data(), bufs[j]);
        };
        if (count == 1) {
            job(0);
        } else {
            std::vector<std::jthread> pool;
            for (std::uint64_t j = 0; j < count; ++j) pool.emplace_back(job, j);
        }
        for (std::uint64_t j = 0; j < count; ++j) {
            if (!visit(k0 + j, lo + (k0 + j) * seg, out[j])) return;
        }
    }
}

}  // namespace zid
