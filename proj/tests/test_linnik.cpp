#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "equidist/linnik.hpp"

using namespace eqd;

namespace {

bool prime_bruteforce(i64 n)
{
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

double arg_atan2(i64 x, i64 y)
{
    double a = std::atan2(static_cast<double>(y), static_cast<double>(x));
    if (a < 0) a += kTwoPi;
    return a;
}

// Oracle: scan every lattice point of norm < N.
i64 count_scan(i64 N, const SectorQuery& q)
{
    i64 count = 0;
    const i64 r = static_cast<i64>(std::sqrt(static_cast<double>(N))) + 1;
    for (i64 x = -r; x <= r; ++x) {
        for (i64 y = -r; y <= r; ++y) {
            const i64 n = x * x + y * y;
            if (n == 0 || n >= N) continue;
            const i64 p = N - n;
            if (!prime_bruteforce(p)) continue;
            if (!(p > q.a * N && p <= q.b * N)) continue;
            double theta = arg_atan2(x, y);
            if (theta == 0.0) theta = kTwoPi;
            if (q.c < theta && theta <= q.d) ++count;
        }
    }
    return count;
}

}  // namespace

TEST_CASE("count_solutions examples")
{
    PrimeTables t(1000);
    CHECK(count_solutions(7, SectorQuery{}, t) == 16);
    CHECK(count_solutions(2, SectorQuery{}, t) == 0);
    CHECK(count_solutions(7, SectorQuery{0, 1, 0, kHalfPi}, t) == 4);
    CHECK_THROWS_AS(count_solutions(7, SectorQuery{0.5, 0.2, 0, 1}, t), std::invalid_argument);
    CHECK_THROWS_AS(count_solutions(7, SectorQuery{0, 1, 0, 7}, t), std::invalid_argument);
    CHECK_THROWS_AS(count_solutions(1001, SectorQuery{}, t), resource_error);
}

TEST_CASE("count_solutions agrees with the lattice scan")
{
    PrimeTables t(3000);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const i64 N = 3 + static_cast<i64>(u(rng) * 2500);
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        double c = u(rng) * kTwoPi, d = u(rng) * kTwoPi;
        if (c > d) std::swap(c, d);
        if (k % 5 == 0) {
            a = 0;
            b = 1;
        }
        if (k % 7 == 0) {
            c = 0;
            d = kTwoPi;
        }
        if (a == b || c == d) continue;
        const SectorQuery q{a, b, c, d};
        REQUIRE(count_solutions(N, q, t) == count_scan(N, q));
    }
}

TEST_CASE("sector symmetries")
{
    PrimeTables t(10000);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 40; ++k) {
        const i64 N = 3 + static_cast<i64>(u(rng) * 9990);
        const double c = u(rng) * M_PI;
        const double d = c + u(rng) * (1.5 * M_PI - c);
        const double e = d + u(rng) * (kTwoPi - d);
        const SectorQuery q{0, 1, c, d};
        const SectorQuery rotated{0, 1, c + kHalfPi, d + kHalfPi};
        REQUIRE(count_solutions(N, q, t) == count_solutions(N, rotated, t));

        // additivity over (c, d] and (d, e]
        const i64 left = count_solutions(N, {0, 1, c, d}, t);
        const i64 right = count_solutions(N, {0, 1, d, e}, t);
        REQUIRE(left + right == count_solutions(N, {0, 1, c, e}, t));
    }

    // total count is the sum of representation counts
    for (i64 N : {100, 1001, 5003}) {
        i64 expected = 0;
        for (i64 p : primes_in(1, N - 1, t)) expected += representations(N - p, t).size();
        CHECK(count_solutions(N, SectorQuery{}, t) == expected);
    }
}

TEST_CASE("singular series")
{
    PrimeTables t(200000);
    // Oracle: independent truncated product over trial-division primes.
    auto truncated = [](i64 cut) {
        long double v = 1;
        for (i64 p = 3; p <= cut; ++p) {
            if (!prime_bruteforce(p)) continue;
            const int c = (p % 4 == 1) ? 1 : -1;
            v *= 1.0L + static_cast<long double>(c) / (static_cast<long double>(p) * (p - 1));
        }
        return static_cast<double>(v);
    };
    const double K = truncated(1000);
    CHECK(singular_series(4, 1000, t) == doctest::Approx(M_PI * K).epsilon(1e-13));
    for (int k = 1; k <= 20; ++k) {
        CHECK(singular_series(i64{1} << k, 1000, t) == doctest::Approx(M_PI * K).epsilon(1e-13));
    }
    CHECK(singular_series(3, 100000, t) == singular_series(9, 100000, t));
    CHECK(singular_series(15, 1000, t) == singular_series(45, 1000, t));
    // N = 15: factors p = 3 and p = 5
    const double f3 = 2.0 * 4.0 / (9 - 3 - 1);
    const double f5 = 4.0 * 4.0 / (25 - 5 + 1);
    CHECK(singular_series(15, 1000, t) == doctest::Approx(M_PI * K * f3 * f5).epsilon(1e-13));
    // truncation error is O(1/p_cut)
    const double big = singular_series(4, 200000, t);
    CHECK(std::abs(singular_series(4, 1000, t) - big) < 10.0 / 1000);
    CHECK_THROWS_AS(singular_series(4, 2, t), std::invalid_argument);
}

TEST_CASE("theorem2_sum")
{
    PrimeTables t(200000);
    CHECK(theorem2_sum(7, 4, t) == doctest::Approx(64.0 / 25).epsilon(1e-14));
    CHECK(theorem2_sum(3, 4, t) == doctest::Approx(1.0));
    CHECK_THROWS_AS(theorem2_sum(7, 100, t), std::invalid_argument);
    CHECK_THROWS_AS(theorem2_sum(2, 4, t), std::invalid_argument);

    // Oracle at N = 1e5: enumerate the lattice points of each N - p directly.
    const i64 N = 100000;
    long double oracle = 0;
    for (i64 p : primes_in(1, N - 1, t)) {
        const i64 n = N - p;
        std::complex<long double> s = 0;
        const i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
        for (i64 x = -r; x <= r; ++x) {
            i64 y = 0;
            if (!is_square(n - x * x, &y)) continue;
            for (i64 yy : {y, -y}) {
                const long double a = std::atan2(static_cast<long double>(yy), static_cast<long double>(x));
                s += std::polar(1.0L, 4 * a);
                if (y == 0) break;
            }
        }
        oracle += std::abs(s) / 4;
    }
    CHECK(theorem2_sum(N, 4, t) == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-11));
    CHECK(theorem2_sum(N, 4, t, 8) == theorem2_sum(N, 4, t, 1));
}

TEST_CASE("et_terms")
{
    const std::vector<double> four{0, kHalfPi, M_PI, 1.5 * M_PI};
    const auto a = et_terms(four, 0, kHalfPi, 1);
    CHECK(a.main == doctest::Approx(1.0));
    CHECK(a.count == 1);
    CHECK(a.char_sums.size() == 1);
    CHECK(a.char_sums[0] < 1e-12);
    CHECK(a.exact_discrepancy == doctest::Approx(0.0));

    const std::vector<double> one{0.0};
    const auto b = et_terms(one, 0, kTwoPi, 2);
    CHECK(b.char_sums[0] == doctest::Approx(1.0));
    CHECK(b.char_sums[1] == doctest::Approx(1.0));
    CHECK(b.count == 1);

    PrimeTables t(100);
    std::vector<double> five;
    for (auto z : representations(5, t)) five.push_back(z.arg());
    const auto c = et_terms(five, 0, kTwoPi, 4);
    CHECK(c.char_sums[3] == doctest::Approx(4 * 14.0 / 25));
    CHECK(c.char_sums[0] < 1e-12);
    CHECK_THROWS_AS(et_terms(five, 0, 1, 0), std::invalid_argument);
}

TEST_CASE("residue_counts")
{
    PrimeTables t(200000);
    const auto c7 = residue_counts(7, 2, t);
    CHECK(c7.size() == 4);
    CHECK(c7.at({1, 0}) == 4);
    CHECK(c7.at({0, 1}) == 4);
    CHECK(c7.at({0, 0}) == 4);
    CHECK(c7.at({1, 1}) == 4);

    for (i64 k : {1, 3, 5}) {
        const auto c2 = residue_counts(2, k, t);
        CHECK(c2.size() == static_cast<std::size_t>(k * k));
        for (const auto& [cls, n] : c2) CHECK(n == 0);
    }

    // N(alpha) mod 3 fixes p mod 3: classes of norm 1 mod 3 only see p = 3,
    // so equidistribution holds among the classes of norm 2 mod 3.
    const auto big = residue_counts(100003, 3, t);
    i64 lo = INT64_MAX, hi = 0;
    for (const auto& [cls, n] : big) {
        const i64 norm_mod = (cls.first * cls.first + cls.second * cls.second) % 3;
        if (norm_mod != 2) continue;
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }
    CHECK(lo > 1000);
    CHECK(hi <= 1.1 * lo);
    // p = 3 is the only prime reaching the norm-1 classes
    i64 norm_one = 0;
    for (const auto& [cls, n] : big)
        if ((cls.first * cls.first + cls.second * cls.second) % 3 == 1) norm_one += n;
    CHECK(norm_one == count_solutions(100003, SectorQuery{0, 3.5 / 100003, 0, kTwoPi}, t) -
                          count_solutions(100003, SectorQuery{0, 2.5 / 100003, 0, kTwoPi}, t));

    i64 total = 0;
    for (const auto& [cls, n] : big) total += n;
    CHECK(total == count_solutions(100003, SectorQuery{}, t));
    CHECK(residue_counts(100003, 3, t, 8) == big);
}

TEST_CASE("theorem1_report")
{
    PrimeTables t(100000);
    const std::vector<SectorQuery> qs{SectorQuery{}, {0, 1, 0, kHalfPi}, {0, 1, kHalfPi, M_PI}};
    const auto rows = theorem1_report(7, qs, 1000, t);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].empirical == 16);
    const double main = 7 / std::log(7.0) * singular_series(7, 1000, t);
    CHECK(rows[0].main_term == doctest::Approx(main));
    CHECK(rows[0].relative_deviation == doctest::Approx((16 - main) / main));
    CHECK(rows[1].empirical == rows[2].empirical);

    // conjugation: (c, d] <-> [2pi - d, 2pi - c); endpoints avoid lattice arguments
    for (i64 N : {1000, 4099, 9001}) {
        const double c = 0.3, d = 1.1;
        const i64 x = count_solutions(N, {0, 1, c, d}, t);
        const i64 y = count_solutions(N, {0, 1, kTwoPi - d, kTwoPi - c}, t);
        CHECK(x == y);
    }
}
