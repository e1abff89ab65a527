#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "zid/errors.hpp"
#include "zid/mvt_xi.hpp"

using namespace zid;

namespace {
const XiSequence half_one = XiSequence::half_one();
}

TEST_CASE("xi at n = 2 against the bisection root")
{
    const double root = oracle::xi_bisection(2, 0.5, 1.0);
    CHECK(root == doctest::Approx(0.7427869297).epsilon(1e-9));
    CHECK(std::abs(xi(2, half_one) - root) < 1e-12);
}

TEST_CASE("closed form matches bisection on random n")
{
    std::mt19937_64 rng(2024);
    const XiSequence other(0.25, 2.0);
    for (int i = 0; i < 50; ++i) {
        const std::uint64_t n = 2 + rng() % 1000000000ULL;
        INFO("n = " << n);
        CHECK(std::abs(xi(n, half_one) - oracle::xi_bisection(n, 0.5, 1.0)) < 1e-12);
        CHECK(std::abs(xi(n, other) - oracle::xi_bisection(n, 0.25, 2.0)) < 1e-12);
    }
}

TEST_CASE("defining equation and range on a log grid to 1e9")
{
    for (const XiSequence& seq : {half_one, XiSequence(0.0, 0.5), XiSequence(1.0, 3.0)}) {
        for (std::uint64_t n : log_grid(1000000000ULL, 40)) {
            const double x = xi(n, seq);
            const double scale = std::pow(static_cast<double>(n), -seq.alpha());
            INFO("n = " << n << " alpha = " << seq.alpha());
            CHECK(x > seq.alpha());
            CHECK(x < seq.beta());
            CHECK(std::abs(xi_residual(n, seq)) <= 1e-14 * scale);
        }
    }
}

TEST_CASE("residual examples and sensitivity")
{
    CHECK(std::abs(xi_residual(2, half_one)) <= 1e-15);
    CHECK(std::abs(xi_residual(1000000, half_one)) <= 1e-14 * 1e-3);
    const double perturbed = defining_equation_residual(3, xi(3, half_one) + 1e-3, half_one);
    CHECK(std::abs(perturbed) > 1e-5);
}

TEST_CASE("monotone decrease and slow approach to alpha")
{
    const auto r = check_monotone_limit(half_one, 1000000);
    CHECK(r.monotone);
    CHECK_FALSE(r.first_failure);
    CHECK(r.gap > 0);
    CHECK(r.gap == doctest::Approx(xi(1000000, half_one) - 0.5));
    CHECK(xi(1000000, half_one) < xi(100000, half_one));

    const auto two = check_monotone_limit(half_one, 3);
    CHECK(two.monotone == (xi(3, half_one) < xi(2, half_one)));

    const double gap8 = xi(100000000ULL, half_one) - 0.5;
    CHECK(std::abs(gap8 - (oracle::xi_bisection(100000000ULL, 0.5, 1.0) - 0.5)) < 1e-12);
    CHECK(gap8 > 0.1);
    CHECK(gap8 < 0.13);
}

TEST_CASE("preconditions")
{
    CHECK_THROWS_AS(XiSequence(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(XiSequence(1.0, 0.5), DomainError);
    CHECK_THROWS_AS(XiSequence(0.0, INFINITY), DomainError);
    CHECK_THROWS_AS(xi(1, half_one), DomainError);
    CHECK_THROWS_AS(xi(0, half_one), DomainError);
    CHECK_THROWS_AS(xi_residual(1, half_one), DomainError);
    CHECK_THROWS_AS(check_monotone_limit(half_one, 2), DomainError);
    CHECK(half_one.is_half_one());
    CHECK(half_one.width() == 0.5);
}

TEST_CASE("log grid and csv")
{
    const auto g = log_grid(1000, 10);
    REQUIRE(!g.empty());
    CHECK(g.front() == 2);
    CHECK(g.back() == 1000);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);

    std::ostringstream out;
    write_xi_csv(out, half_one, 100, 5);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,xi,residual");
    std::getline(in, line);
    CHECK(line.rfind("2,0.7427869", 0) == 0);
}
