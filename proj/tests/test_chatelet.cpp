#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "equidist/chatelet.hpp"

using namespace eqd;

namespace {

const QuarticForm kPhi5(1, 1, 1, 1, 1);

double arg_atan2(i64 x, i64 y)
{
    double a = std::atan2(static_cast<double>(y), static_cast<double>(x));
    if (a <= 0) a += kTwoPi;  // arg 0 sits at 2pi
    return a;
}

// 2u sqrt(t) >= k sqrt(B) on integers
bool half_ge(i64 u, i64 k, i64 t, i64 B)
{
    if (u >= 0 && k <= 0) return true;
    if (u < 0 && k >= 0) return false;
    const i64 lhs = 4 * u * u * t, rhs = k * k * B;
    return u >= 0 ? lhs >= rhs : lhs <= rhs;
}

// Region with corners at multiples of 1/2: {u_lo, u_hi, v_lo, v_hi} in halves.
struct HalfRegion {
    i64 ul, uh, vl, vh;
    Region region() const { return {ul / 2.0, uh / 2.0, vl / 2.0, vh / 2.0}; }
};

// Oracle: loop over t, u, v, x and solve for y.
i64 five_loop(const QuarticForm& F, i64 B, const HalfRegion& R, double lo, double hi)
{
    i64 count = 0;
    for (i64 t = 1; t <= B; ++t) {
        for (i64 u = -B; u <= B; ++u) {
            if (!half_ge(u, R.ul, t, B) || !half_ge(-u, -R.uh, t, B)) continue;
            for (i64 v = -B; v <= B; ++v) {
                if (!half_ge(v, R.vl, t, B) || !half_ge(-v, -R.vh, t, B)) continue;
                if (std::gcd(u, v) != 1) continue;
                const i128 n = i128{t} * t * F.eval(u, v);
                if (n <= 0) continue;
                const i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
                for (i64 x = -r - 1; x <= r + 1; ++x) {
                    i64 y = 0;
                    const i128 rest = n - i128{x} * x;
                    if (rest < 0 || !is_square(static_cast<i64>(rest), &y)) continue;
                    for (i64 yy : {y, -y}) {
                        if (std::gcd(t, std::gcd(x, yy)) == 1) {
                            const double theta = arg_atan2(x, yy);
                            if (lo < theta && theta <= hi) ++count;
                        }
                        if (y == 0) break;
                    }
                }
            }
        }
    }
    return count;
}

}  // namespace

TEST_CASE("quartic forms")
{
    CHECK_THROWS_AS(QuarticForm(1, 0, 2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(QuarticForm(0, 0, 1, 0, 1), std::invalid_argument);  // double root at infinity
    CHECK(kPhi5.discriminant() == 125);
    CHECK(kPhi5.eval(i64{1}, i64{-1}) == 1);
    CHECK(kPhi5.eval(i64{2}, i64{1}) == 31);
    CHECK(QuarticForm::parse("1,0,0,0,-2").coeffs() == std::array<i64, 5>{1, 0, 0, 0, -2});
    CHECK_THROWS_AS(QuarticForm::parse("1,1,1,1"), std::invalid_argument);
    CHECK_THROWS_AS(QuarticForm::parse("1,1,1,1,1,"), std::invalid_argument);
    CHECK_THROWS_AS(QuarticForm::parse("1,1,x,1,1"), std::invalid_argument);
}

TEST_CASE("irreducible_over_qi")
{
    CHECK(irreducible_over_qi(kPhi5));
    CHECK_FALSE(irreducible_over_qi(QuarticForm(1, 0, 0, 0, 1)));   // (X^2+i)(X^2-i)
    CHECK_FALSE(irreducible_over_qi(QuarticForm(1, 0, 0, 0, 4)));   // (X^2+2X+2)(X^2-2X+2)
    CHECK_FALSE(irreducible_over_qi(QuarticForm(1, 0, 1, 0, 1)));   // (X^2+X+1)(X^2-X+1)
    CHECK_FALSE(irreducible_over_qi(QuarticForm(1, 1, 2, 1, 1)));   // (X^2+1)(X^2+X+1)
    CHECK_FALSE(irreducible_over_qi(QuarticForm(1, 0, 0, 0, -1)));  // roots +-1, +-i
    CHECK_FALSE(irreducible_over_qi(QuarticForm(0, 1, 0, 0, 1)));
    CHECK(irreducible_over_qi(QuarticForm(1, 0, 0, 0, -2)));
    CHECK(irreducible_over_qi(QuarticForm(1, 0, 0, 1, 1)));
    CHECK_THROWS_AS(irreducible_over_qi(QuarticForm(1, 0, 0, 0, 1000003)), indeterminate_error);
}

TEST_CASE("rho")
{
    CHECK(rho(kPhi5, 11) == Rational{4, 1});
    CHECK(rho(kPhi5, 7) == Rational{0, 1});
    CHECK(rho(kPhi5, 5) == Rational{1, 1});
    CHECK(rho(kPhi5, 101) == Rational{4, 1});
    CHECK(rho(kPhi5, 103) == Rational{0, 1});
    CHECK_THROWS_AS(rho(kPhi5, 9), std::invalid_argument);

    const std::vector<QuarticForm> forms{kPhi5, {1, 0, 0, 0, -2}, {3, -1, 4, 1, -5}, {2, 0, 0, 7, 0}, {0, 1, 0, 0, 6}};
    for (const auto& F : forms) {
        for (i64 p = 2; p <= 200; ++p) {
            if (!is_prime_u64(static_cast<u64>(p))) continue;
            const Rational lit = rho_literal(F, p);
            REQUIRE(lit.den == 1);
            REQUIRE(projective_root_count(F, p) == lit.num);
            REQUIRE(rho(F, p) == lit);
        }
    }
    // F vanishing identically mod p
    CHECK(projective_root_count(QuarticForm(3, 0, 3, 0, 6), 3) == 4);
    CHECK(rho_literal(QuarticForm(3, 0, 3, 0, 6), 3) == Rational{4, 1});
}

TEST_CASE("enumerate_NB examples")
{
    PrimeTables t(1000);
    const Region box;
    CHECK(enumerate_NB(kPhi5, 1, box, {}, t).tuples == 40);
    CHECK(enumerate_NB(kPhi5, 1, box, {}, t).half() == 20);
    CHECK(enumerate_NB(kPhi5, 0.5, box, {}, t).tuples == 0);
    CHECK(enumerate_NB(QuarticForm(1, 0, 0, 0, -2), 0.5, box, {}, t).tuples == 0);
    CHECK(enumerate_NB(kPhi5, 1, box, {0, kHalfPi}, t).half() == 5);
    CHECK(five_loop(kPhi5, 1, {-2, 2, -2, 2}, 0, kHalfPi) == 10);
    CHECK_THROWS_AS(enumerate_NB(kPhi5, 1, {0, 2, 0, 1}, {}, t), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_NB(kPhi5, 1, box, {1, 1}, t), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_NB(kPhi5, 2000, box, {}, t), resource_error);
}

TEST_CASE("enumerate_NB agrees with the five-loop oracle")
{
    PrimeTables t(1000);
    const std::vector<QuarticForm> forms{kPhi5, {1, 0, 0, 0, -2}, {2, -1, 3, 0, 1}};
    const std::vector<HalfRegion> regions{{-2, 2, -2, 2}, {0, 2, 0, 2}, {-1, 2, -2, 1}, {0, 1, -2, 0}};
    const std::vector<std::pair<double, double>> sectors{{0, kTwoPi}, {0.3, 2.1}, {0, kHalfPi}, {4.0, kTwoPi}};
    for (const auto& F : forms) {
        for (i64 B : {1, 2, 7, 20, 50}) {
            for (const auto& R : regions) {
                for (const auto& [lo, hi] : sectors) {
                    const i64 fast = enumerate_NB(F, static_cast<double>(B), R.region(), {lo, hi}, t).tuples;
                    REQUIRE(fast == five_loop(F, B, R, lo, hi));
                }
            }
        }
    }
}

TEST_CASE("enumerate_NB structure")
{
    PrimeTables t(100000);
    const Region box;
    // sector additivity and rotation by i
    const i64 full = enumerate_NB(kPhi5, 300, box, {}, t).tuples;
    const i64 lower = enumerate_NB(kPhi5, 300, box, {0, M_PI}, t).tuples;
    const i64 upper = enumerate_NB(kPhi5, 300, box, {M_PI, kTwoPi}, t).tuples;
    CHECK(lower + upper == full);
    CHECK(enumerate_NB(kPhi5, 300, box, {0.2, 0.9}, t).tuples ==
          enumerate_NB(kPhi5, 300, box, {0.2 + kHalfPi, 0.9 + kHalfPi}, t).tuples);

    // streamed solutions satisfy the equations and match the count
    std::vector<ChateletSolution> seen;
    const auto r = enumerate_NB(kPhi5, 60, box, {0.5, 2.5}, t, 1, [&](const ChateletSolution& s) { seen.push_back(s); });
    CHECK(static_cast<i64>(seen.size()) == r.tuples);
    CHECK(r.tuples == enumerate_NB(kPhi5, 60, box, {0.5, 2.5}, t).tuples);
    for (const auto& s : seen) {
        REQUIRE(i128{s.t} * s.t * kPhi5.eval(s.u, s.v) == i128{s.x} * s.x + i128{s.y} * s.y);
        REQUIRE(std::gcd(s.u, s.v) == 1);
        REQUIRE(std::gcd(s.t, std::gcd(s.x, s.y)) == 1);
    }

    // partition independence
    CHECK(enumerate_NB(kPhi5, 3000, {0, 1, 0, 1}, {}, t, 8).tuples ==
          enumerate_NB(kPhi5, 3000, {0, 1, 0, 1}, {}, t, 1).tuples);
    CHECK(enumerate_NB(kPhi5, 3000, box, {1, 2}, t, 8).tuples == enumerate_NB(kPhi5, 3000, box, {1, 2}, t, 1).tuples);

    // the closed-form full count matches explicit enumeration
    CHECK(enumerate_NB(kPhi5, 2000, box, {}, t).tuples ==
          enumerate_NB(kPhi5, 2000, box, {0, 3}, t).tuples + enumerate_NB(kPhi5, 2000, box, {3, kTwoPi}, t).tuples);
}

TEST_CASE("sigma_infinity")
{
    CHECK(sigma_infinity(kPhi5, Region{}, 100) == doctest::Approx(kTwoPi).epsilon(1e-12));
    CHECK(sigma_infinity(kPhi5, Region{0, 1, 0, 1}, 200) == doctest::Approx(kHalfPi).epsilon(1e-12));
    // {|u| > 2^{1/4}|v|} has area 2^{3/4} in [-1,1]^2
    const double exact = M_PI * std::pow(2.0, -0.25);
    CHECK(std::abs(sigma_infinity(QuarticForm(1, 0, 0, 0, -2), Region{}, 2000) - exact) < 2e-3);
    CHECK(std::abs(sigma_infinity(QuarticForm(1, 0, 0, 0, -2), Region{}, 10000) - exact) < 5e-4);
    CHECK_THROWS_AS(sigma_infinity(kPhi5, Region{}, 99), std::invalid_argument);
}

TEST_CASE("mu_decomposition")
{
    PrimeTables t(1000);
    auto a = mu_decomposition(5, -3, 1, t);
    CHECK(a.mu == GaussianInt{-1, 2});
    CHECK(a.alpha == GaussianInt{1, 1});
    auto b = mu_decomposition(5, -7, -14, t);
    CHECK(b.mu == GaussianInt{-1, -2});
    CHECK(b.alpha == GaussianInt{7, 0});
    auto c = mu_decomposition(1, 12, -5, t);
    CHECK(c.mu == GaussianInt{1, 0});
    CHECK(c.alpha == GaussianInt{12, -5});
    CHECK_THROWS_AS(mu_decomposition(5, 5, 10, t), std::domain_error);
    CHECK_THROWS_AS(mu_decomposition(5, 1, 1, t), std::domain_error);
    CHECK_THROWS_AS(mu_decomposition(3, 3, 1, t), std::domain_error);
    CHECK_THROWS_AS(mu_decomposition(1, 0, 0, t), std::domain_error);
}

TEST_CASE("lt2 character sums over the box")
{
    PrimeTables t(1000000);
    CHECK(lemma_lt2_sum(kPhi5, 1, 1, t) == doctest::Approx(712.0 / 25).epsilon(1e-12));
    CHECK(lemma_lt2_sum(kPhi5, 1, 1, t, 1, InnerSumPath::Direct) == doctest::Approx(712.0 / 25).epsilon(1e-12));
    CHECK(lemma_lt2_sum(kPhi5, 0.5, 3, t) == 0.0);
    CHECK(lemma_lt2_trivial(kPhi5, 1, t) == 40);

    const double fast = lemma_lt2_sum(kPhi5, 1000, 1, t);
    const double direct = lemma_lt2_sum(kPhi5, 1000, 1, t, 1, InnerSumPath::Direct);
    CHECK(fast == doctest::Approx(direct).epsilon(1e-10));
    CHECK(lemma_lt2_sum(kPhi5, 1000, 2, t) ==
          doctest::Approx(lemma_lt2_sum(kPhi5, 1000, 2, t, 1, InnerSumPath::Direct)).epsilon(1e-10));
    CHECK(lemma_lt2_sum(kPhi5, 1000, 1, t, 8) == fast);
    CHECK(fast < lemma_lt2_trivial(kPhi5, 1000, t));

    // inner identity on random admissible triples
    std::mt19937_64 rng(5);
    int checked = 0;
    while (checked < 1000) {
        const i64 tt = 1 + static_cast<i64>(rng() % 400);
        const i64 u = static_cast<i64>(rng() % 41) - 20, v = static_cast<i64>(rng() % 41) - 20;
        if (std::gcd(u, v) != 1) continue;
        const i128 n = kPhi5.eval(u, v);
        if (primary_mu_list(tt, t).empty()) continue;
        const i64 h = 1 + static_cast<i64>(rng() % 4);
        const auto x = lt2_inner_sum(tt, static_cast<i64>(n), static_cast<int>(h), t);
        const auto y = lt2_inner_sum(tt, static_cast<i64>(n), static_cast<int>(h), t, InnerSumPath::Direct);
        REQUIRE(std::abs(x - y) < 1e-8);
        ++checked;
    }
}

TEST_CASE("s_sums")
{
    PrimeTables t(1000000);
    const auto s = s_sums(kPhi5, 10, 1, t);
    CHECK(s.s1 == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(s.s2 == doctest::Approx(0.2).epsilon(1e-15));
    // g_8(5) = 2 cos(8 arg(2+i))
    CHECK(s.s3.re == doctest::Approx(0.2 * 2 * std::cos(8 * std::atan2(1.0, 2.0))).epsilon(1e-12));

    // oracle: literal rho and direct g_8 over the primes up to 2000
    const auto m = s_sums(kPhi5, 2000, 1, t);
    double s1 = 0, s3 = 0;
    for (i64 p : primes_in(2, 2000, t)) {
        const double r = rho_literal(kPhi5, p).value() / p;
        s1 += r;
        s3 += r * g_h(p, 8, t).re;
    }
    CHECK(m.s1 == doctest::Approx(s1).epsilon(1e-12));
    CHECK(m.s3.re == doctest::Approx(s3).epsilon(1e-9));
    CHECK_THROWS_AS(s_sums(kPhi5, 2000000, 1, t), resource_error);
}
