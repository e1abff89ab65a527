#include <cstdint>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "zid/errors.hpp"
#include "zid/liouville.hpp"

using namespace zid;

TEST_CASE("liouville on small values")
{
    CHECK(liouville(1) == 1);
    CHECK(liouville(2) == -1);
    CHECK(liouville(4) == 1);
    CHECK(liouville(12) == -1);
    CHECK(big_omega(1) == 0);
    CHECK(big_omega(12) == 3);
    CHECK(big_omega(1024) == 10);
    CHECK_THROWS_AS(liouville(0), DomainError);
    CHECK(liouville_tail(1) == 0);
    CHECK(liouville_tail(2) == -1);
}

TEST_CASE("liouville beyond the trial-division range")
{
    const std::uint64_t m61 = (std::uint64_t{1} << 61) - 1;  // prime
    CHECK(liouville(m61) == -1);
    CHECK(big_omega(std::uint64_t{1} << 40) == 40);
    // 4294967291 and 4294967279 are the two largest primes below 2^32
    const std::uint64_t semiprime = 4294967291ULL * 4294967279ULL;
    CHECK(big_omega(semiprime) == 2);
    CHECK(liouville(semiprime) == 1);
    CHECK(liouville(3ULL * semiprime) == -1);
    CHECK(big_omega((std::uint64_t{1} << 40) + 1) == oracle::big_omega((std::uint64_t{1} << 40) + 1));
    CHECK(liouville(18446744073709551557ULL) == -1);  // largest 64-bit prime
    CHECK(big_omega(18446744073709551615ULL) == 7);    // 3*5*17*257*641*65537*6700417
}

TEST_CASE("single-value path matches trial division on a random sample")
{
    std::uint64_t x = 88172645463325252ULL;
    for (int i = 0; i < 300; ++i) {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        const std::uint64_t n = (x % 1000000000000ULL) + 1;  // trial division stays cheap
        INFO("n = " << n);
        CHECK(big_omega(n) == oracle::big_omega(n));
    }
}

TEST_CASE("sieve_range examples")
{
    const auto t = sieve_range(1, 11);
    const std::vector<std::int8_t> expect = {1, -1, -1, 1, -1, 1, -1, -1, 1, 1};
    CHECK(std::vector<std::int8_t>(t.signs().begin(), t.signs().end()) == expect);
    CHECK(t.lo() == 1);
    CHECK(t.hi() == 11);

    const auto one = sieve_range(1, 2);
    REQUIRE(one.size() == 1);
    CHECK(one.at(1) == 1);

    const auto mid = sieve_range(5, 8);
    CHECK(std::vector<std::int8_t>(mid.signs().begin(), mid.signs().end()) ==
          std::vector<std::int8_t>{-1, 1, -1});
    CHECK_THROWS_AS(mid.at(4), DomainError);
    CHECK_THROWS_AS(mid.at(8), DomainError);
    CHECK(mid.signs(0, 100).size() == 3);
    CHECK(mid.signs(6, 7).size() == 1);
}

TEST_CASE("sieve matches trial division for n <= 1e5")
{
    const auto t = sieve_to(100000);
    int mismatches = 0;
    for (std::uint64_t n = 1; n <= 100000; ++n)
        if (t.at(n) != oracle::liouville(n)) ++mismatches;
    CHECK(mismatches == 0);
}

TEST_CASE("complete multiplicativity for m*n <= 1e4")
{
    const auto t = sieve_to(10000);
    int failures = 0;
    for (std::uint64_t m = 1; m <= 10000; ++m)
        for (std::uint64_t n = 1; m * n <= 10000; ++n)
            if (t.at(m * n) != t.at(m) * t.at(n)) ++failures;
    CHECK(failures == 0);
}

TEST_CASE("sieve is independent of segment size and thread count")
{
    const std::uint64_t hi = 300001;
    SieveOptions base;
    base.segment_size = 1000;
    const auto reference = sieve_range(1, hi, base);
    for (std::uint64_t seg : {1000u, 10000u, 100000u}) {
        for (unsigned threads : {1u, 4u}) {
            SieveOptions o;
            o.segment_size = seg;
            o.threads = threads;
            CHECK(sieve_range(1, hi, o) == reference);
        }
    }
}

TEST_CASE("offset ranges agree with single-value evaluation")
{
    const std::uint64_t lo = (std::uint64_t{1} << 40) - 500;
    SieveOptions o;
    o.segment_size = 256;
    o.threads = 2;
    const auto t = sieve_range(lo, lo + 1000, o);
    for (std::uint64_t n = lo; n < lo + 1000; ++n) CHECK(t.at(n) == liouville(n));
}

TEST_CASE("streamed segments match the table and the prefix sums")
{
    const std::uint64_t limit = 1000000;
    const auto t = sieve_to(limit);
    std::int64_t table_sum = 0;
    for (auto s : t.signs()) table_sum += s;

    SieveOptions o;
    o.segment_size = 65536;
    o.threads = 3;
    std::int64_t streamed = 0;
    std::uint64_t next = 1;
    bool aligned = true;
    for_each_segment(1, limit + 1, o, [&](std::uint64_t, std::uint64_t first, auto signs) {
        aligned = aligned && first == next;
        for (std::size_t i = 0; i < signs.size(); ++i)
            aligned = aligned && signs[i] == t.at(first + i);
        for (auto s : signs) streamed += s;
        next = first + signs.size();
        return true;
    });
    CHECK(aligned);
    CHECK(next == limit + 1);
    CHECK(streamed == table_sum);
}

TEST_CASE("segment visitor can stop early and start late")
{
    SieveOptions o;
    o.segment_size = 100;
    std::vector<std::uint64_t> seen;
    for_each_segment(
        1, 1001, o,
        [&](std::uint64_t index, std::uint64_t first, auto) {
            seen.push_back(index);
            CHECK(first == 1 + 100 * index);
            return index < 5;
        },
        3);
    CHECK(seen == std::vector<std::uint64_t>{3, 4, 5});
}

TEST_CASE("sieve preconditions")
{
    CHECK_THROWS_AS(sieve_range(0, 10), DomainError);
    CHECK_THROWS_AS(sieve_range(5, 5), DomainError);
    SieveOptions small;
    small.max_entries = 100;
    CHECK_THROWS_AS(sieve_range(1, 1000, small), CapacityError);
    CHECK_THROWS_AS(sieve_range(1, (std::uint64_t{1} << 63) + 2), DomainError);
}

TEST_CASE("helpers")
{
    CHECK(primes_up_to(30) == std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(primes_up_to(1).empty());
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(15) == 3);
    CHECK(isqrt(16) == 4);
    CHECK(isqrt(18446744073709551615ULL) == 4294967295ULL);
}
