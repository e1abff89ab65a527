#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "zid/dirichlet_sums.hpp"
#include "zid/errors.hpp"
#include "zid/kernels.hpp"

using namespace zid;

namespace {

const XiSequence half_one = XiSequence::half_one();

const LiouvilleTable& table_1e6()
{
    static const LiouvilleTable t = sieve_to(1000000);
    return t;
}

// Direct long-double summation with trial-division signs.
double oracle_f(double alpha, std::uint64_t x)
{
    long double acc = 0;
    for (std::uint64_t n = 2; n <= x; ++n)
        acc += oracle::liouville(n) * std::pow(static_cast<long double>(n), -static_cast<long double>(alpha));
    return static_cast<double>(acc);
}

}  // namespace

TEST_CASE("f_x examples")
{
    CHECK(f_x(0.5, 1) == 0.0);
    CHECK(f_x(1.0, 1) == 0.0);
    CHECK(f_x(2.7, 1) == 0.0);
    CHECK(f_x(0.5, 3) == doctest::Approx(-1 / std::sqrt(2.0) - 1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(f_x(0.5, 3) == doctest::Approx(-1.284457).epsilon(1e-6));
    CHECK(std::abs(f_x(table_1e6(), 1.0, 1000000) + 1) < 0.01);
}

TEST_CASE("f_x against direct summation")
{
    const auto& t = table_1e6();
    for (double alpha : {0.0, 0.5, 0.75, 1.0, 2.0}) {
        for (std::uint64_t x : {2u, 10u, 1000u, 20000u}) {
            INFO("alpha = " << alpha << " x = " << x);
            const double expect = oracle_f(alpha, x);
            CHECK(f_x(t, alpha, x) == doctest::Approx(expect).epsilon(1e-13).scale(1));
            CHECK(f_x(t, alpha, x, SumOrder::descending) ==
                  doctest::Approx(expect).epsilon(1e-13).scale(1));
        }
    }
    // the table may start at 2
    const auto from2 = sieve_range(2, 101);
    CHECK(f_x(from2, 0.5, 100) == doctest::Approx(f_x(t, 0.5, 100)).epsilon(1e-15));
    CHECK_THROWS_AS(f_x(sieve_range(3, 100), 0.5, 50), DomainError);
    CHECK_THROWS_AS(f_x(t, 0.5, 2000000), DomainError);
}

TEST_CASE("F_x(1) = T(x) - 1")
{
    const auto& t = table_1e6();
    CompensatedSum T;
    for (std::uint64_t n = 1; n <= 5000; ++n) {
        T.add(t.at(n) / static_cast<double>(n));
        if (n % 997 == 0 || n == 5000)
            CHECK(f_x(t, 1.0, n) == doctest::Approx(T.value() - 1).epsilon(1e-14).scale(1));
    }
}

TEST_CASE("ascending and descending orders agree")
{
    const auto& t = table_1e6();
    for (double alpha : {0.5, 1.0}) {
        for (std::uint64_t x : {1000u, 123457u, 1000000u}) {
            const double a = f_x(t, alpha, x, SumOrder::ascending);
            const double d = f_x(t, alpha, x, SumOrder::descending);
            CHECK(std::abs(a - d) <= 1e-11 * std::abs(a));
        }
    }
}

TEST_CASE("mvt weight")
{
    CHECK(mvt_weight(4, half_one) == 0.25);
    CHECK(mvt_weight(2, half_one) == doctest::Approx(0.2071067811865476).epsilon(1e-15));
    CHECK(mvt_weight(100, half_one) == doctest::Approx(0.09).epsilon(1e-15));
    CHECK_THROWS_AS(mvt_weight(1, half_one), DomainError);
    CHECK_THROWS_AS(mvt_weight(0, half_one), DomainError);
    // agrees with (beta - alpha) log(n) n^-xi(n)
    for (std::uint64_t n : {2u, 3u, 17u, 1000u, 999983u}) {
        const double direct = 0.5 * std::log(double(n)) * std::pow(double(n), -xi(n, half_one));
        CHECK(mvt_weight(n, half_one) == doctest::Approx(direct).epsilon(1e-13));
    }
}

TEST_CASE("l_x examples")
{
    CHECK(l_x(half_one, 1) == 0.0);
    CHECK(l_x(half_one, 2) == doctest::Approx(-0.2071067811865476).epsilon(1e-15));
    CHECK_THROWS_AS(l_x(half_one, 0), DomainError);

    const auto& t = table_1e6();
    const double f_half = oracle_f(0.5, 10000);
    const double f_one = oracle_f(1.0, 10000);
    const double l = l_x(t, half_one, 10000);
    CHECK(std::abs(l - (f_half - f_one)) <= 1e-12 * std::abs(f_half - f_one));

    const double direct = l_x(t, half_one, 10000, LMode::direct_exponentiation);
    CHECK(direct == doctest::Approx(l).epsilon(1e-11));
}

TEST_CASE("exact decomposition F(1/2) = F(1) + L")
{
    const auto& t = table_1e6();
    std::mt19937_64 rng(11);
    std::vector<std::uint64_t> xs = {1, 2, 10, 1000, 1000000};
    for (int i = 0; i < 40; ++i) xs.push_back(1 + rng() % 1000000);
    for (std::uint64_t x : xs) {
        const double fh = f_x(t, 0.5, x);
        const double fo = f_x(t, 1.0, x);
        const double l = l_x(t, half_one, x);
        INFO("x = " << x);
        CHECK(std::abs(fh - fo - l) <= 1e-10 * (1 + std::abs(fh)));
    }
    // general (alpha, beta)
    const XiSequence seq(0.3, 1.7);
    for (std::uint64_t x : {10u, 5000u, 300000u}) {
        const double diff = f_x(t, 0.3, x) - f_x(t, 1.7, x);
        CHECK(std::abs(diff - l_x(t, seq, x)) <= 1e-10 * (1 + std::abs(diff)));
    }
}

TEST_CASE("triangle bound on random pairs")
{
    const auto& t = table_1e6();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 30; ++i) {
        std::uint64_t a = 2 + rng() % 200000, b = 2 + rng() % 200000;
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        for (double alpha : {0.5, 1.0, 1.5}) {
            long double bound = 0;
            for (std::uint64_t n = a + 1; n <= b; ++n)
                bound += std::pow(static_cast<long double>(n), -static_cast<long double>(alpha));
            CHECK(std::abs(f_x(t, alpha, b) - f_x(t, alpha, a)) <= static_cast<double>(bound) + 1e-12);
        }
    }
}

TEST_CASE("prefix evaluator streams the same values")
{
    const auto& t = table_1e6();
    PrefixEvaluator ev(0.5);
    CHECK(ev.limit() == 1);
    CHECK(ev.value() == 0.0);
    ev.extend(t, 1000);
    CHECK(ev.value() == doctest::Approx(f_x(t, 0.5, 1000)).epsilon(1e-14));
    ev.extend(t, 500);  // no-op
    CHECK(ev.limit() == 1000);
    ev.extend(t, 100000);
    CHECK(ev.value() == doctest::Approx(f_x(t, 0.5, 100000)).epsilon(1e-13));
    const auto& h = ev.history();
    REQUIRE(!h.empty());
    CHECK(h.front().first == 1);
    CHECK(h.back().first == 65536);
    for (auto [n, v] : h) CHECK(v == doctest::Approx(f_x(t, 0.5, n)).epsilon(1e-13).scale(1));

    HistoryPolicy stride;
    stride.kind = HistoryPolicy::Kind::stride;
    stride.stride = 250;
    PrefixEvaluator ev2(1.0, stride);
    ev2.extend(t, 1000);
    CHECK(ev2.history().size() == 4);

    HistoryPolicy none;
    none.kind = HistoryPolicy::Kind::none;
    PrefixEvaluator ev3(1.0, none);
    ev3.extend(t, 1000);
    CHECK(ev3.history().empty());
}

TEST_CASE("generic dirichlet polynomial")
{
    // b = 1: harmonic numbers
    const double h10 = dirichlet_polynomial([](std::uint64_t) { return 1; }, 1.0, 10);
    CHECK(h10 == doctest::Approx(7381.0 / 2520.0).epsilon(1e-15));
    // b = a reproduces F_x
    const auto& t = table_1e6();
    const double via_generic =
        dirichlet_polynomial([&](std::uint64_t n) { return t.tail_at(n); }, 0.5, 5000);
    CHECK(via_generic == doctest::Approx(f_x(t, 0.5, 5000)).epsilon(1e-14));
}

TEST_CASE("sums csv")
{
    const auto& t = table_1e6();
    std::ostringstream out;
    write_sums_csv(out, t, 16);
    std::istringstream in(out.str());
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 6);  // header, x = 1, 2, 4, 8, 16
    CHECK(lines[0] == "x,F_half,F_one,L");
    CHECK(lines[1] == "1,0,0,0");
}

TEST_CASE("results do not depend on the kernel variant")
{
    const auto& t = table_1e6();
    const kernels::Isa before = kernels::active().isa;
    kernels::select(kernels::Isa::scalar);
    const double fh = f_x(t, 0.5, 1000000), fo = f_x(t, 1.0, 1000000), l = l_x(t, half_one, 1000000);
    if (kernels::select(kernels::Isa::avx2)) {
        CHECK(f_x(t, 0.5, 1000000) == doctest::Approx(fh).epsilon(1e-14));
        CHECK(f_x(t, 1.0, 1000000) == doctest::Approx(fo).epsilon(1e-14));
        CHECK(l_x(t, half_one, 1000000) == doctest::Approx(l).epsilon(1e-14));
    }
    kernels::select(before);
}
