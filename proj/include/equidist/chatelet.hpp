// chatelet.hpp
//
// Counting points on t^2 F(u,v) = x^2 + y^2 with gcd(u,v) = gcd(t,x,y) = 1,
// t > 0, for a separable binary quartic F, together with the local data
// (rho(p), sigma_infinity) and the character sums that control arg(x+iy).
//
// Every (x, y) counted here factors uniquely as x + iy = mu^2 * alpha with mu
// primary, N(mu) = t, gcd(mu, conj mu) = 1, N(alpha) = F(u,v) and
// gcd(alpha, conj mu) = 1. The fast paths are built on that factorization.

#ifndef EQUIDIST_CHATELET_HPP
#define EQUIDIST_CHATELET_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "equidist/gaussian.hpp"
#include "equidist/numtheory.hpp"

namespace eqd {

/// F(u,v) = f4 u^4 + f3 u^3 v + f2 u^2 v^2 + f1 u v^3 + f0 v^4.
class QuarticForm {
  public:
    /// Throws std::invalid_argument if the form is not separable.
    QuarticForm(i64 f4, i64 f3, i64 f2, i64 f1, i64 f0);

    /// Parse "f4,f3,f2,f1,f0".
    static QuarticForm parse(const std::string& text);

    /// Coefficients from f4 down to f0.
    const std::array<i64, 5>& coeffs() const { return c_; }

    i128 eval(i64 u, i64 v) const;
    double eval(double u, double v) const;

    /// Discriminant of the binary form (equals disc F(X,1) when f4 != 0).
    i128 discriminant() const;

    std::string to_string() const;

  private:
    std::array<i64, 5> c_;
};

/// Thrown when a bounded search cannot decide a question.
class indeterminate_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Whether F(X,1) is irreducible over Q(i), decided by exhaustive search over
/// Gaussian-integer factor candidates within the Mahler bound. Forms with
/// f4 == 0 are divisible by v and count as reducible.
bool irreducible_over_qi(const QuarticForm& F);

/// Rectangle of (u, v) scaled by sqrt(B/t): t^{1/2}(u,v) in B^{1/2} R.
struct Region {
    double u_lo = -1.0;
    double u_hi = 1.0;
    double v_lo = -1.0;
    double v_hi = 1.0;

    /// Throws std::invalid_argument unless R is a nonempty subset of [-1,1]^2.
    void validate() const;
    double area() const { return (u_hi - u_lo) * (v_hi - v_lo); }
};

struct ChateletSolution {
    i64 t = 0;
    i64 u = 0;
    i64 v = 0;
    i64 x = 0;
    i64 y = 0;
};

struct Rational {
    i64 num = 0;
    i64 den = 1;

    bool operator==(const Rational&) const = default;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// rho(p) = #{(u,v) in (0,p]^2 : p | F(u,v), (u,v) != (0,0) mod p} / (p - 1).
/// Literal double loop for p <= 100, projective root count above.
Rational rho(const QuarticForm& F, i64 p);

/// The literal O(p^2) count, always.
Rational rho_literal(const QuarticForm& F, i64 p);

/// Number of points of P^1(F_p) where F vanishes, via gcd(F(X,1), X^p - X).
i64 projective_root_count(const QuarticForm& F, i64 p);

/// Arc (lo, hi] for arg(x + iy), same convention as in_arc.
struct ArgSector {
    double lo = 0.0;
    double hi = kTwoPi;

    bool is_full() const { return lo <= 0.0 && hi >= kTwoPi; }
};

struct NBResult {
    i64 tuples = 0;  ///< number of 5-tuples (t,u,v,x,y)

    /// N(B): half the tuple count.
    double half() const { return static_cast<double>(tuples) / 2.0; }
};

using SolutionVisitor = std::function<void(const ChateletSolution&)>;

/// Count 5-tuples with t^{1/2}(u,v) in B^{1/2} R and arg(x+iy) in the sector.
/// Points with F(u,v) <= 0 contribute nothing. When a visitor is given, the
/// solutions are produced in (t, u, v, arg) order on the calling thread.
NBResult enumerate_NB(const QuarticForm& F, double B, const Region& R, const ArgSector& sector,
                      const PrimeTables& tables, unsigned workers = 1,
                      const SolutionVisitor& visit = nullptr);

/// (pi/2) * meas{(u,v) in R : F(u,v) > 0} by the midpoint rule on a
/// resolution x resolution grid.
double sigma_infinity(const QuarticForm& F, const Region& R, int resolution);

enum class InnerSumPath {
    MuDecomposition,  ///< sum over mu of (mu/|mu|)^{8h} times restricted alpha sums
    Direct,           ///< enumerate x + iy of norm t^2 F(u,v) and filter gcd(t,x,y) = 1
};

/// sum_{(x,y): x^2+y^2 = t^2 n, gcd(t,x,y) = 1} ((x+iy)/|x+iy|)^{4h}.
std::complex<double> lt2_inner_sum(i64 t, i64 n, int h, const PrimeTables& tables,
                                   InnerSumPath path = InnerSumPath::MuDecomposition);

/// sum over t >= 1 and coprime (u,v) with t^{1/2} max(|u|,|v|) <= B^{1/2} of
/// |lt2_inner_sum(t, F(u,v), h)|.
double lemma_lt2_sum(const QuarticForm& F, double B, int h, const PrimeTables& tables,
                     unsigned workers = 1, InnerSumPath path = InnerSumPath::MuDecomposition);

/// The same box with the character replaced by 1 inside the absolute value:
/// the trivial bound the character sum is compared against.
double lemma_lt2_trivial(const QuarticForm& F, double B, const PrimeTables& tables,
                         unsigned workers = 1);

struct MuSplit {
    GaussianInt mu;
    GaussianInt alpha;
};

/// For t | x^2 + y^2 with gcd(t,x,y) = 1: the unique primary mu of norm t with
/// gcd(mu, conj mu) = 1 dividing x + iy, and alpha = (x + iy) / mu.
/// Throws std::domain_error when the preconditions fail.
MuSplit mu_decomposition(i64 t, i64 x, i64 y, const PrimeTables& tables);

struct SSums {
    double s1 = 0.0;
    double s2 = 0.0;
    CharSumValue s3;
};

/// S1 = sum_{2<p<=B} rho(p)/p, S2 the same over p == 1 (mod 4),
/// S3 = sum_{2<p<=B} rho(p) g_{8h}(p) / p.
SSums s_sums(const QuarticForm& F, i64 B, int h, const PrimeTables& tables);

}  // namespace eqd

#endif
