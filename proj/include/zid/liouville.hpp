#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace zid {

// Omega(n): number of prime factors of n counted with multiplicity.
unsigned big_omega(std::uint64_t n);

// lambda(n) = (-1)^Omega(n). Works for any 64-bit n >= 1 (Pollard-Brent
// factorisation above the trial-division range). Throws DomainError for n = 0.
int liouville(std::uint64_t n);

// a(n): lambda(n) with the n = 1 term removed.
inline int liouville_tail(std::uint64_t n) { return n == 1 ? 0 : liouville(n); }

struct SieveOptions {
    std::uint64_t segment_size = 1u << 18;
    unsigned threads = 1;
    // Upper bound on hi - lo for materialised tables (one byte per entry).
    std::uint64_t max_entries = std::uint64_t{1} << 31;
};

// lambda over the half-open range [lo, hi). Immutable once built.
class LiouvilleTable {
public:
    LiouvilleTable() = default;
    LiouvilleTable(std::uint64_t lo, std::uint64_t hi, std::vector<std::int8_t> values);

    std::uint64_t lo() const noexcept { return lo_; }
    std::uint64_t hi() const noexcept { return hi_; }
    std::uint64_t size() const noexcept { return hi_ - lo_; }
    bool contains(std::uint64_t n) const noexcept { return n >= lo_ && n < hi_; }

    // lambda(n); throws DomainError outside [lo, hi).
    int at(std::uint64_t n) const;
    // a(n) (zero at n = 1).
    int tail_at(std::uint64_t n) const { return n == 1 ? 0 : at(n); }

    std::span<const std::int8_t> signs() const noexcept { return values_; }
    // Signs for n in [from, to), clipped to the table.
    std::span<const std::int8_t> signs(std::uint64_t from, std::uint64_t to) const;

    friend bool operator==(const LiouvilleTable&, const LiouvilleTable&) = default;

private:
    std::uint64_t lo_ = 1;
    std::uint64_t hi_ = 1;
    std::vector<std::int8_t> values_;
};

// Segmented sieve. Output is independent of segment size and thread count.
// Throws DomainError unless 1 <= lo < hi, CapacityError if hi - lo exceeds
// options.max_entries.
LiouvilleTable sieve_range(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options = {});

// Convenience: lambda(n) for 1 <= n <= limit.
LiouvilleTable sieve_to(std::uint64_t limit, const SieveOptions& options = {});

// Streams [lo, hi) segment by segment, in ascending order, without
// materialising the whole range. Segments are numbered from 0 relative to
// lo; processing starts at `first_segment`. The callback may return false to
// stop early.
using SegmentVisitor = std::function<bool(std::uint64_t segment_index, std::uint64_t first_n,
                                          std::span<const std::int8_t> signs)>;
void for_each_segment(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options,
                      const SegmentVisitor& visit, std::uint64_t first_segment = 0);

// Primes p <= limit (plain Eratosthenes).
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

std::uint64_t isqrt(std::uint64_t n) noexcept;

}  // namespace zid
