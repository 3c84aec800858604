#include "doctest.h"

#include <random>
#include <vector>

#include "equidist/numtheory.hpp"

using namespace eqd;

namespace {

// Independent oracle: plain trial division by every integer.
Factorization trial_division(i64 n)
{
    Factorization f;
    for (i64 d = 2; d * d <= n; ++d) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) f.push_back({d, e});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

std::vector<char> eratosthenes(i64 x)
{
    std::vector<char> is_p(x + 1, 1);
    is_p[0] = 0;
    if (x >= 1) is_p[1] = 0;
    for (i64 i = 2; i * i <= x; ++i)
        if (is_p[i])
            for (i64 j = i * i; j <= x; j += i) is_p[j] = 0;
    return is_p;
}

// Legendre symbol by exhaustive square search.
int legendre_bruteforce(i64 a, i64 p)
{
    const i64 r = ((a % p) + p) % p;
    if (r == 0) return 0;
    for (i64 x = 1; x < p; ++x)
        if (x * x % p == r) return 1;
    return -1;
}

}  // namespace

TEST_CASE("spf table small values")
{
    PrimeTables t12(12);
    CHECK(t12.spf(12) == 2);
    CHECK(t12.spf(9) == 3);
    CHECK(t12.spf(11) == 11);

    PrimeTables t100(100);
    CHECK(t100.spf(97) == 97);
    CHECK(t100.spf(91) == 7);
    CHECK(t100.primes().size() == 25);
}

TEST_CASE("spf invariants hold across segment boundaries")
{
    const i64 limit = 700'000;  // spans several sieve segments
    PrimeTables t(limit);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<i64> dist(2, limit);
    for (int k = 0; k < 20000; ++k) {
        const i64 n = dist(rng);
        const i64 s = t.spf(n);
        REQUIRE(n % s == 0);
        REQUIRE(trial_division(s).size() == 1);
        REQUIRE(trial_division(n).front().prime == s);
    }
}

TEST_CASE("sieve limit above the ceiling is a resource error")
{
    CHECK_THROWS_AS(PrimeTables(1000, 500), resource_error);
    try {
        PrimeTables(1000, 500);
    } catch (const resource_error& e) {
        CHECK(std::string(e.what()).find("500") != std::string::npos);
    }
    CHECK_THROWS_AS(PrimeTables(1), std::invalid_argument);
}

TEST_CASE("factorize examples")
{
    PrimeTables t(2000);
    CHECK(factorize(1, t).empty());
    CHECK(factorize(360, t) == Factorization{{2, 3}, {3, 2}, {5, 1}});
    CHECK(factorize(1000003, t) == trial_division(1000003));
    CHECK_THROWS_AS(factorize(0, t), std::domain_error);
}

TEST_CASE("factorize reconstructs n for all n <= 1e6")
{
    PrimeTables t(1'000'000);
    for (i64 n = 1; n <= 1'000'000; ++n) {
        const auto f = factorize(n, t);
        i64 m = 1;
        i64 last = 1;
        for (const auto& [p, e] : f) {
            REQUIRE(p > last);
            REQUIRE(t.is_prime(p));
            last = p;
            for (int k = 0; k < e; ++k) m *= p;
        }
        REQUIRE(m == n);
    }
}

TEST_CASE("factorize beyond the table matches trial division")
{
    PrimeTables t(1000);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<i64> dist(1'000'000, 60'000'000'000LL);
    for (int k = 0; k < 300; ++k) {
        const i64 n = dist(rng);
        REQUIRE(factorize(n, t) == trial_division(n));
    }
    // two large prime factors, neither found by trial division
    const i64 n = 1'000'003LL * 999'983LL;
    CHECK(factorize(n, t) == Factorization{{999'983, 1}, {1'000'003, 1}});
}

TEST_CASE("kronecker examples")
{
    CHECK(kronecker(2, 7) == 1);
    CHECK(kronecker(2, 5) == -1);
    CHECK(kronecker(-14, 3) == 1);
    CHECK(kronecker(3, 0) == 0);
    CHECK(kronecker(-1, 0) == 1);
    CHECK(kronecker(5, -1) == 1);
    CHECK(kronecker(-5, -1) == -1);
    CHECK(kronecker(4, 2) == 0);
    CHECK(kronecker(3, 2) == -1);
    CHECK(kronecker(7, 2) == 1);
}

TEST_CASE("kronecker agrees with exhaustive squares for odd primes")
{
    PrimeTables t(200);
    for (i64 p : primes_in(2, 200, t)) {
        for (i64 a = -60; a <= 60; ++a) REQUIRE(kronecker(a, p) == legendre_bruteforce(a, p));
    }
}

TEST_CASE("kronecker is multiplicative in the top argument")
{
    for (i64 n = 1; n <= 99; n += 2)
        for (i64 a = -50; a <= 50; ++a)
            for (i64 b = -50; b <= 50; ++b)
                REQUIRE(kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n));
}

TEST_CASE("chi4")
{
    CHECK(chi4(5) == 1);
    CHECK(chi4(7) == -1);
    CHECK(chi4(6) == 0);
    CHECK(chi4(-1) == -1);
    for (i64 n = 1; n <= 10000; ++n) REQUIRE(chi4(n) == kronecker(-4, n));
}

TEST_CASE("primes_in")
{
    PrimeTables t(100'000);
    CHECK(primes_in(1, 10, t) == std::vector<i64>{2, 3, 5, 7});
    CHECK(primes_in(10, 10, t).empty());
    CHECK(primes_in(90, 100, t) == std::vector<i64>{97});
    CHECK_THROWS_AS(primes_in(1, 100'001, t), resource_error);

    const auto sieve = eratosthenes(100'000);
    std::size_t expected = 0;
    for (i64 x = 1; x <= 100'000; ++x) {
        expected += sieve[x];
        if (x % 997 == 0 || x == 100'000) REQUIRE(primes_in(1, x, t).size() == expected);
    }
}

TEST_CASE("checked arithmetic reports overflow")
{
    CHECK_THROWS_AS(checked_mul(i64{1} << 40, i64{1} << 40), std::overflow_error);
    CHECK_THROWS_AS(checked_add(INT64_MAX, i64{1}), std::overflow_error);
    CHECK_THROWS_AS(narrow(i128{1} << 80), std::overflow_error);
    CHECK(checked_mul(i64{3}, i64{-7}) == -21);
}

TEST_CASE("modular square roots")
{
    PrimeTables t(5000);
    for (i64 p : primes_in(2, 5000, t)) {
        if (p % 4 == 1) {
            const u64 r = sqrt_minus_one(p);
            REQUIRE(mulmod(r, r, p) == static_cast<u64>(p - 1));
        }
        if (p > 2 && kronecker(2, p) == 1) {
            const u64 r = sqrt_mod(2, p);
            REQUIRE(mulmod(r, r, p) == 2);
        }
    }
    CHECK(is_prime_u64(1'000'000'007ULL));
    CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2,3,5,7
}
