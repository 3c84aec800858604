// gaussian.hpp
//
// Arithmetic in Z[i]: norms, primary normalization, gcds, factorization,
// the set of lattice points of a given norm, and the Grossencharacter sums
//
//     g_h(n) = 1/4 * sum_{N(alpha) = n} (alpha / |alpha|)^h,   f_h(n) = |g_h(n)|,
//
// together with the gcd-restricted variant and the von Mangoldt weighted
// character sum over Gaussian prime powers.

#ifndef EQUIDIST_GAUSSIAN_HPP
#define EQUIDIST_GAUSSIAN_HPP

#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "equidist/numtheory.hpp"

namespace eqd {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kHalfPi = 1.5707963267948966192313216916398;

struct GaussianInt {
    i64 re = 0;
    i64 im = 0;

    constexpr GaussianInt() = default;
    constexpr GaussianInt(i64 r, i64 i = 0) : re(r), im(i) {}

    bool operator==(const GaussianInt&) const = default;
    auto operator<=>(const GaussianInt&) const = default;

    i64 norm() const;
    constexpr GaussianInt conj() const { return {re, -im}; }
    constexpr bool is_zero() const { return re == 0 && im == 0; }
    constexpr bool is_unit() const
    {
        return (re == 0 && (im == 1 || im == -1)) || (im == 0 && (re == 1 || re == -1));
    }

    /// Argument in [0, 2*pi). Computed by quadrant reduction so that
    /// arg(i*z) == arg(z) + pi/2 up to the final rounding.
    double arg() const;
};

GaussianInt operator+(GaussianInt a, GaussianInt b);
GaussianInt operator-(GaussianInt a, GaussianInt b);
GaussianInt operator*(GaussianInt a, GaussianInt b);

/// True iff d divides z in Z[i]. d must be nonzero.
bool divides(GaussianInt d, GaussianInt z);

/// z / d, which must be exact.
GaussianInt exact_div(GaussianInt z, GaussianInt d);

/// Membership in the half-open arc (c, d] for an argument in [0, 2*pi).
/// The circle is cut at 0, so arg 0 is identified with 2*pi: a point on the
/// positive real axis lies in (c, 2*pi] but not in (0, d] for d < 2*pi.
bool in_arc(double theta, double c, double d);

/// z == 1 (mod 2+2i). Only odd-normed elements can be primary.
bool is_primary(GaussianInt z);

/// The primary associate of an odd-normed z. Even-normed nonzero z get the
/// associate with re > 0, im >= 0.
GaussianInt normalize_associate(GaussianInt z);

/// Euclidean gcd, normalized with normalize_associate. Throws
/// std::domain_error when both arguments are zero.
GaussianInt gaussian_gcd(GaussianInt a, GaussianInt b);

/// The Gaussian prime a+bi with a > b > 0 above a rational prime p == 1 (mod 4).
GaussianInt split_prime(i64 p);

struct GaussianFactorization {
    GaussianInt unit{1, 0};
    /// Odd primes are primary; the even prime is stored as 1+i.
    std::vector<std::pair<GaussianInt, int>> factors;
};

GaussianFactorization factor_gaussian(GaussianInt z, const PrimeTables& tables);

GaussianInt reconstruct(const GaussianFactorization& f);

/// All lattice points alpha with N(alpha) = n, sorted by (re, im).
std::vector<GaussianInt> representations(i64 n, const Factorization& f);
std::vector<GaussianInt> representations(i64 n, const PrimeTables& tables);

/// Number of lattice points of norm n: 4 * prod (e+1) over p == 1 (mod 4),
/// zero if a prime == 3 (mod 4) occurs to an odd power.
i64 representation_count(const Factorization& f);

struct CharSumValue {
    double re = 0.0;
    double im = 0.0;

    double abs() const { return std::hypot(re, im); }
    std::complex<double> value() const { return {re, im}; }
};

/// 1/4 * sum (alpha/|alpha|)^h as an exact Gaussian rational.
struct ExactCharSum {
    i128 re = 0;
    i128 im = 0;
    i128 den = 1;

    CharSumValue to_value() const;
};

/// Exact evaluation of 1/4 * sum_{alpha in points} (alpha / sqrt(n))^h for
/// points all of norm n and h divisible by 4. Empty if the powers overflow
/// 128 bits.
std::optional<ExactCharSum> char_sum_exact(std::span<const GaussianInt> points, i64 n, int h);

/// 1/4 * sum (alpha/|alpha|)^h over points of common norm n: exact path when
/// it fits, otherwise accumulated from h*arg(alpha) in double precision.
CharSumValue char_sum(std::span<const GaussianInt> points, i64 n, int h);

/// g_h(n). Exactly zero whenever 4 does not divide h.
CharSumValue g_h(i64 n, int h, const PrimeTables& tables);
CharSumValue g_h(i64 n, const Factorization& f, int h);

/// g_h(n) from its Euler factors; used for bulk evaluation over ranges.
CharSumValue g_h_multiplicative(const Factorization& f, int h);

/// f_h(n) = |g_h(n)|.
double f_h(i64 n, int h, const PrimeTables& tables);

/// g_h restricted to alpha with gcd(alpha, conj(mu)) a unit.
CharSumValue g_h_coprime(i64 n, int h, GaussianInt mu, const PrimeTables& tables);

/// All primary mu of norm t with gcd(mu, conj(mu)) a unit, sorted.
std::vector<GaussianInt> primary_mu_list(i64 t, const PrimeTables& tables);

/// sum_{0 < N(alpha) <= x} Lambda(alpha) (alpha/|alpha|)^{4k}. Needs x <= tables.limit().
CharSumValue lambda_gross_sum(i64 x, i64 k, const PrimeTables& tables);

}  // namespace eqd

#endif
