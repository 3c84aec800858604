// quad_fields.hpp
//
// Two quadratic fields next to Q(i):
//
//   Z[sqrt2]     ideal counts r2(n), one generator per ideal in the window
//                [sqrt n, eps sqrt n) with eps = 1 + sqrt2, and the character
//                chi(I) = sgn N(b) exp(pi i (log|b'| - log|b|) / (2 log eps)).
//   Q(sqrt-14)   the four reduced forms of discriminant -56, ideal counts,
//                class group characters of the cyclic class group of order 4,
//                and the distribution of split primes among the classes.

#ifndef EQUIDIST_QUAD_FIELDS_HPP
#define EQUIDIST_QUAD_FIELDS_HPP

#include <array>
#include <vector>

#include "equidist/chatelet.hpp"
#include "equidist/gaussian.hpp"
#include "equidist/numtheory.hpp"

namespace eqd {

// ---------------------------------------------------------------------------
// Z[sqrt2]

/// x + y sqrt2.
struct RealQuadInt {
    i64 x = 0;
    i64 y = 0;

    bool operator==(const RealQuadInt&) const = default;
    auto operator<=>(const RealQuadInt&) const = default;

    /// x^2 - 2y^2.
    i64 norm() const;
    RealQuadInt conj() const { return {x, -y}; }
    long double value() const;
};

RealQuadInt operator*(RealQuadInt a, RealQuadInt b);

inline constexpr RealQuadInt kFundamentalUnit{1, 1};

/// An ideal of Z[sqrt2] given by its generator in the window.
struct IdealRepZ2 {
    RealQuadInt generator;

    bool operator==(const IdealRepZ2&) const = default;
};

/// sum over odd d | n of (2/d): the number of ideals of norm n.
i64 r2(i64 n, const Factorization& f);

/// Generators b of all ideals of norm n with sqrt n <= b < eps sqrt n,
/// sorted by (x, y). Found by a scan over x.
std::vector<IdealRepZ2> ideals_of_norm_z2(i64 n);

/// chi at the ideal generated by b; any generator of the ideal gives the
/// same value. Throws std::domain_error for b = 0.
CharSumValue gross_char_z2(RealQuadInt b);
inline CharSumValue gross_char_z2(const IdealRepZ2& I) { return gross_char_z2(I.generator); }

/// A generator of one of the two prime ideals above p == +-1 (mod 8).
RealQuadInt split_prime_z2(i64 p);

enum class SumPath {
    Fast,    ///< Euler product over the prime ideals dividing t^2 |F(u,v)|
    Direct,  ///< ideals_of_norm_z2 and gross_char_z2, filtered by gcd(t, x, y) = 1
};

/// sum over t >= 1 and coprime (u,v) with t^{1/2} max(|u|,|v|) <= B^{1/2},
/// F(u,v) != 0, of |sum_{N(I) = t^2 |F(u,v)|, gcd(t, I, I') = 1} chi(I)^h|.
double lemma_z2_sum(const QuarticForm& F, double B, int h, const PrimeTables& tables,
                    unsigned workers = 1, SumPath path = SumPath::Fast);

/// The inner sum at one (t, m) with m = |F(u,v)|.
std::complex<double> z2_inner_sum(i64 t, i64 m, int h, const PrimeTables& tables,
                                  SumPath path = SumPath::Fast);

// ---------------------------------------------------------------------------
// Q(sqrt-14)

/// A x^2 + B x y + C y^2.
struct BinaryQuadForm {
    i64 A;
    i64 B;
    i64 C;

    i64 discriminant() const { return B * B - 4 * A * C; }
};

/// f0 = x^2+14y^2 (principal), f1 = 2x^2+7y^2 (order 2),
/// f2 = 3x^2+2xy+5y^2 (a generator), f3 = 3x^2-2xy+5y^2 (its inverse).
/// With C2 the class of f2: C2^2 = C1, C2^3 = C3.
inline constexpr std::array<BinaryQuadForm, 4> kForms56{{{1, 0, 14}, {2, 0, 7}, {3, 2, 5}, {3, -2, 5}}};

/// #{(x, y) in Z^2 : f_j(x, y) = n}.
i64 reps_by_form56(int j, i64 n);

/// sum over d | n, gcd(d, 14) = 1 of (-14/d).
i64 ideal_count_m14(i64 n, const Factorization& f);

enum class PrimeType56 {
    Ramified,   ///< 2 and 7; the prime ideal lies in C1
    Inert,
    Principal,  ///< split, represented by f0
    Order2,     ///< split, represented by f1
    Generator,  ///< split, represented by f2 and f3
};

/// Splitting type of p, deciding f0 against f1 by Cornacchia.
PrimeType56 classify_prime_m14(i64 p);

/// chi_j at the class C_m of form f_m: chi_j(C2^k) = i^{jk}, so
/// chi_j(C0) = 1, chi_j(C1) = (-1)^j, chi_j(C2) = i^j, chi_j(C3) = (-i)^j.
GaussianInt class_character(int j, int m);

/// sum_{N(I) = n} chi_j(I), exact.
GaussianInt ideal_char_sum_m14(i64 n, int j, const Factorization& f);

/// Number of principal ideals of norm n, as (1/4) sum_j ideal_char_sum_m14.
i64 principal_ideal_count_m14(i64 n, const Factorization& f);

/// sum over the box (t, coprime u, v) with F(u,v) > 0 of
/// |sum_{N(I) = t^2 F(u,v), gcd(t, I, I') = 1} chi_j(I)|, j in 1..3.
double class_char_sum_m14(const QuarticForm& F, double B, int j, const PrimeTables& tables,
                          unsigned workers = 1);

/// Split primes p <= x bucketed by the form that represents them:
/// {f0, f1, f2 or f3}. Classified by lattice scans.
std::array<i64, 3> prime_class_distribution(i64 x, const PrimeTables& tables);

}  // namespace eqd

#endif
