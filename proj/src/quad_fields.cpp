#include "equidist/quad_fields.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "box.hpp"
#include "equidist/parallel.hpp"

namespace eqd {

using namespace detail;

namespace {

constexpr long double kSqrt2 = 1.41421356237309504880168872420969808L;
constexpr long double kPiL = 3.14159265358979323846264338327950288L;

// sign of c + d sqrt2, exact
int sign_sqrt2(i128 c, i128 d)
{
    if (c >= 0 && d >= 0) return (c == 0 && d == 0) ? 0 : 1;
    if (c <= 0 && d <= 0) return -1;
    const i128 c2 = checked_mul(c, c), d2 = checked_mul(checked_mul(d, d), i128{2});
    if (c > 0) return c2 > d2 ? 1 : -1;
    return d2 > c2 ? 1 : -1;
}

// b^2 compared with n, for b > 0: sign of b^2 - n
int square_vs(RealQuadInt b, i64 n)
{
    const i128 c = checked_sub(checked_add(checked_mul(i128{b.x}, i128{b.x}), checked_mul(i128{2} * b.y, i128{b.y})), i128{n});
    const i128 d = checked_mul(i128{2} * b.x, i128{b.y});
    return sign_sqrt2(c, d);
}

Factorization merge(const Factorization& t, const Factorization& m)
{
    std::map<i64, int> e;
    for (const auto& [p, k] : t) e[p] += 2 * k;
    for (const auto& [p, k] : m) e[p] += k;
    Factorization out;
    for (const auto& [p, k] : e) out.push_back({p, k});
    return out;
}

bool divides_t(i64 t, i64 p) { return t % p == 0; }

}  // namespace

// ---------------------------------------------------------------------------
// Z[sqrt2]

i64 RealQuadInt::norm() const { return checked_sub(checked_mul(x, x), checked_mul(checked_mul(i64{2}, y), y)); }

long double RealQuadInt::value() const { return static_cast<long double>(x) + kSqrt2 * static_cast<long double>(y); }

RealQuadInt operator*(RealQuadInt a, RealQuadInt b)
{
    const i128 x = checked_add(checked_mul(i128{a.x}, i128{b.x}), checked_mul(i128{2} * a.y, i128{b.y}));
    const i128 y = checked_add(checked_mul(i128{a.x}, i128{b.y}), checked_mul(i128{a.y}, i128{b.x}));
    return {narrow(x), narrow(y)};
}

i64 r2(i64 n, const Factorization& f)
{
    if (n < 1) throw std::domain_error("r2: n must be positive");
    i64 count = 1;
    for (const auto& [p, e] : f) {
        if (p == 2) continue;
        const i64 r = p % 8;
        if (r == 1 || r == 7) {
            count *= e + 1;
        } else if (e & 1) {
            return 0;
        }
    }
    return count;
}

std::vector<IdealRepZ2> ideals_of_norm_z2(i64 n)
{
    if (n < 1) throw std::domain_error("ideals_of_norm_z2: n must be positive");
    // b in [sqrt n, eps sqrt n) and |b'| = n / b in (sqrt n / eps, sqrt n]
    const long double root = std::sqrt(static_cast<long double>(n));
    const i64 x_max = static_cast<i64>((2 + kSqrt2) * root / 2) + 1;
    std::vector<IdealRepZ2> out;
    for (i64 x = -x_max; x <= x_max; ++x) {
        const i128 xx = i128{x} * x;
        for (i128 target : {i128{n}, i128{-n}}) {
            const i128 twice = xx - target;  // 2 y^2
            if (twice < 0 || (twice & 1)) continue;
            i64 y = 0;
            if (twice / 2 > INT64_MAX || !is_square(static_cast<i64>(twice / 2), &y)) continue;
            for (i64 yy : {y, -y}) {
                const RealQuadInt b{x, yy};
                if (sign_sqrt2(b.x, b.y) > 0 && square_vs(b, n) >= 0) {
                    // b / eps = b (sqrt2 - 1)
                    const RealQuadInt c{2 * yy - x, x - yy};
                    if (square_vs(c, n) < 0) out.push_back({b});
                }
                if (y == 0) break;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const IdealRepZ2& a, const IdealRepZ2& b) { return a.generator < b.generator; });
    return out;
}

CharSumValue gross_char_z2(RealQuadInt b)
{
    if (b.x == 0 && b.y == 0) throw std::domain_error("gross_char_z2: zero generator");
    const long double N = static_cast<long double>(b.norm());
    long double big = static_cast<long double>(b.x) + kSqrt2 * b.y;
    long double small = static_cast<long double>(b.x) - kSqrt2 * b.y;
    // the smaller of b, b' suffers cancellation; recover it from the norm
    const bool swapped = std::fabs(big) < std::fabs(small);
    if (swapped) std::swap(big, small);
    small = N / big;
    const long double log_b = std::log(std::fabs(swapped ? small : big));
    const long double log_bc = std::log(std::fabs(swapped ? big : small));
    const long double phase = kPiL * (log_bc - log_b) / (2 * std::log(1 + kSqrt2));
    const long double sgn = N > 0 ? 1 : -1;
    return {static_cast<double>(sgn * std::cos(phase)), static_cast<double>(sgn * std::sin(phase))};
}

RealQuadInt split_prime_z2(i64 p)
{
    if (p < 3 || !is_prime_u64(static_cast<u64>(p)) || (p % 8 != 1 && p % 8 != 7)) {
        throw std::domain_error("split_prime_z2: " + std::to_string(p) + " is not a prime = +-1 mod 8");
    }
    const i64 r = static_cast<i64>(sqrt_mod(2, static_cast<u64>(p)));
    // Euclid in Z[sqrt2] on p and r + sqrt2
    RealQuadInt a{p, 0}, b{r, 1};
    while (b.x != 0 || b.y != 0) {
        const i128 nb = b.norm();
        const RealQuadInt bc = b.conj();
        const i128 px = checked_add(checked_mul(i128{a.x}, i128{bc.x}), checked_mul(i128{2} * a.y, i128{bc.y}));
        const i128 py = checked_add(checked_mul(i128{a.x}, i128{bc.y}), checked_mul(i128{a.y}, i128{bc.x}));
        auto nearest = [nb](i128 v) {
            const long double q = static_cast<long double>(v) / static_cast<long double>(nb);
            return static_cast<i64>(std::llround(q));
        };
        const RealQuadInt q{nearest(px), nearest(py)};
        const RealQuadInt qb = q * b;
        const RealQuadInt rem{checked_sub(a.x, qb.x), checked_sub(a.y, qb.y)};
        a = b;
        b = rem;
    }
    const i64 na = a.norm();
    if (na != p && na != -p) throw std::logic_error("split_prime_z2: Euclid did not reach a prime of norm p");
    return a;
}

namespace {

using cplx = std::complex<long double>;

cplx char_power(RealQuadInt b, int h)
{
    const auto c = gross_char_z2(b);
    return std::pow(cplx{c.re, c.im}, h);
}

cplx z2_fast(i64 t, const Factorization& fm, int h)
{
    cplx total = 1;
    for (const auto& [p, e] : fm) {
        const bool at_t = divides_t(t, p);
        if (p == 2) {
            if (at_t) return 0;
            total *= ((h * e) & 1) ? -1.0L : 1.0L;
            continue;
        }
        const i64 r = p % 8;
        if (r == 3 || r == 5) {
            if ((e & 1) || at_t) return 0;
            continue;
        }
        const cplx c = char_power(split_prime_z2(p), h);
        const cplx cc = std::conj(c);
        if (at_t) {
            total *= std::pow(c, e) + std::pow(cc, e);
        } else {
            cplx local = 0;
            for (int a = 0; a <= e; ++a) local += std::pow(c, a) * std::pow(cc, e - a);
            total *= local;
        }
    }
    return total;
}

cplx z2_direct(i64 t, i64 m, int h)
{
    const i64 n = checked_mul(checked_mul(t, t), m);
    cplx total = 0;
    for (const auto& I : ideals_of_norm_z2(n)) {
        const auto& b = I.generator;
        if (gcd(t, gcd(b.x, b.y)) != 1) continue;
        total += char_power(b, h);
    }
    return total;
}

bool t_splits_z2(i64 t, const PrimeTables& tables)
{
    for (const auto& [p, e] : factorize(t, tables))
        if (p % 8 != 1 && p % 8 != 7) return false;
    return true;
}

}  // namespace

std::complex<double> z2_inner_sum(i64 t, i64 m, int h, const PrimeTables& tables, SumPath path)
{
    if (t < 1 || m < 1) throw std::domain_error("z2_inner_sum: t and m must be positive");
    if (h < 1) throw std::invalid_argument("z2_inner_sum: h must be positive");
    const cplx v = path == SumPath::Fast ? z2_fast(t, merge(factorize(t, tables), factorize(m, tables)), h)
                                         : z2_direct(t, m, h);
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

double lemma_z2_sum(const QuarticForm& F, double B, int h, const PrimeTables& tables, unsigned workers,
                    SumPath path)
{
    if (h < 1) throw std::invalid_argument("lemma_z2_sum: h must be positive");
    require_B(B, tables, "lemma_z2_sum");
    const Region box;
    const bool fast = path == SumPath::Fast;
    const auto rows = box_rows(B, box, [&](i64 t) { return !fast || t_splits_z2(t, tables); });
    const auto parts = map_chunks<long double>(static_cast<i64>(rows.size()), workers, [&](i64 lo, i64 hi) {
        long double s = 0;
        for (i64 k = lo; k < hi; ++k) {
            const Row& row = rows[k];
            const auto ft = factorize(row.t, tables);
            for_each_v(row, B, box, [&](i64 v) {
                try {
                    const i128 value = F.eval(row.u, v);
                    if (value == 0) return;
                    const i64 m = narrow(value < 0 ? -value : value);
                    static_cast<void>(checked_mul(checked_mul(row.t, row.t), m));
                    const cplx inner = fast ? z2_fast(row.t, merge(ft, factorize(m, tables)), h) : z2_direct(row.t, m, h);
                    s += std::abs(inner);
                } catch (const std::overflow_error& e) {
                    rethrow_at(e, row.t, row.u, v);
                }
            });
        }
        return s;
    });
    long double total = 0;
    for (auto s : parts) total += s;
    return static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Q(sqrt-14)

i64 reps_by_form56(int j, i64 n)
{
    if (j < 0 || j > 3) throw std::invalid_argument("reps_by_form56: form index must be 0..3");
    if (n < 1) throw std::domain_error("reps_by_form56: n must be positive");
    const auto [A, B, C] = kForms56[j];
    static_cast<void>(C);
    // A x^2 + B y x + (C y^2 - n) = 0 has discriminant 4 A n - 56 y^2
    const i64 four_an = checked_mul(4 * A, n);
    const i64 y_max = static_cast<i64>(isqrt(static_cast<u64>(four_an / 56)));
    i64 count = 0;
    for (i64 y = -y_max; y <= y_max; ++y) {
        const i64 D = four_an - 56 * y * y;
        i64 s = 0;
        if (D < 0 || !is_square(D, &s)) continue;
        for (i64 root : {s, -s}) {
            const i64 num = -B * y + root;
            if (num % (2 * A) == 0) ++count;
            if (s == 0) break;
        }
    }
    return count;
}

i64 ideal_count_m14(i64 n, const Factorization& f)
{
    if (n < 1) throw std::domain_error("ideal_count_m14: n must be positive");
    i64 count = 1;
    for (const auto& [p, e] : f) {
        if (p == 2 || p == 7) continue;
        if (kronecker(-56, p) == 1) {
            count *= e + 1;
        } else if (e & 1) {
            return 0;
        }
    }
    return count;
}

namespace {

// x^2 + d y^2 = p by Cornacchia; -d must be a square mod p.
bool cornacchia(i64 d, i64 p)
{
    const u64 up = static_cast<u64>(p);
    i64 a = p, b = static_cast<i64>(sqrt_mod((up - static_cast<u64>(d) % up) % up, up));
    while (i128{b} * b >= p) {
        const i64 r = a % b;
        a = b;
        b = r;
    }
    const i64 rest = p - b * b;
    return rest % d == 0 && is_square(rest / d);
}

// i^k
GaussianInt i_power(int k)
{
    switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
    }
}

GaussianInt gpow(GaussianInt z, int e)
{
    GaussianInt r{1, 0};
    for (int k = 0; k < e; ++k) r = r * z;
    return r;
}

// Local factor of sum chi_j(I) over ideals of norm p^e. With at_t the ideals
// must not contain both primes above p.
GaussianInt local_m14(i64 p, int e, int j, bool at_t)
{
    const auto type = classify_prime_m14(p);
    if (type == PrimeType56::Ramified) return at_t ? GaussianInt{0, 0} : gpow(class_character(j, 1), e);
    if (type == PrimeType56::Inert) return ((e & 1) || at_t) ? GaussianInt{0, 0} : GaussianInt{1, 0};
    const int m = type == PrimeType56::Principal ? 0 : (type == PrimeType56::Order2 ? 1 : 2);
    const GaussianInt c = class_character(j, m);
    const GaussianInt cc = type == PrimeType56::Generator ? class_character(j, 3) : c;
    if (at_t) return gpow(c, e) + gpow(cc, e);
    GaussianInt s{0, 0};
    for (int a = 0; a <= e; ++a) s = s + gpow(c, a) * gpow(cc, e - a);
    return s;
}

bool t_splits_m14(i64 t, const PrimeTables& tables)
{
    for (const auto& [p, e] : factorize(t, tables))
        if (p == 2 || p == 7 || kronecker(-56, p) != 1) return false;
    return true;
}

}  // namespace

PrimeType56 classify_prime_m14(i64 p)
{
    if (p < 2 || !is_prime_u64(static_cast<u64>(p))) {
        throw std::domain_error("classify_prime_m14: " + std::to_string(p) + " is not prime");
    }
    if (p == 2 || p == 7) return PrimeType56::Ramified;
    if (kronecker(-56, p) == -1) return PrimeType56::Inert;
    // f2, f3 take only non-residues mod 7; f0, f1 only residues
    if (kronecker(p, 7) == -1) return PrimeType56::Generator;
    return cornacchia(14, p) ? PrimeType56::Principal : PrimeType56::Order2;
}

GaussianInt class_character(int j, int m)
{
    if (j < 0 || j > 3 || m < 0 || m > 3) throw std::invalid_argument("class_character: j and m must be in 0..3");
    static constexpr int kPowerOfC2[4] = {0, 2, 1, 3};
    return i_power(j * kPowerOfC2[m]);
}

GaussianInt ideal_char_sum_m14(i64 n, int j, const Factorization& f)
{
    if (n < 1) throw std::domain_error("ideal_char_sum_m14: n must be positive");
    GaussianInt total{1, 0};
    for (const auto& [p, e] : f) total = total * local_m14(p, e, j, false);
    return total;
}

i64 principal_ideal_count_m14(i64 n, const Factorization& f)
{
    GaussianInt s{0, 0};
    for (int j = 0; j < 4; ++j) s = s + ideal_char_sum_m14(n, j, f);
    if (s.im != 0 || s.re % 4 != 0) throw std::logic_error("principal_ideal_count_m14: character average not integral");
    return s.re / 4;
}

double class_char_sum_m14(const QuarticForm& F, double B, int j, const PrimeTables& tables, unsigned workers)
{
    if (j < 1 || j > 3) throw std::invalid_argument("class_char_sum_m14: j must be 1, 2 or 3");
    require_B(B, tables, "class_char_sum_m14");
    const Region box;
    const auto rows = box_rows(B, box, [&](i64 t) { return t_splits_m14(t, tables); });
    const auto parts = map_chunks<long double>(static_cast<i64>(rows.size()), workers, [&](i64 lo, i64 hi) {
        long double s = 0;
        for (i64 k = lo; k < hi; ++k) {
            const Row& row = rows[k];
            const auto ft = factorize(row.t, tables);
            for_each_v(row, B, box, [&](i64 v) {
                try {
                    const i128 value = F.eval(row.u, v);
                    if (value <= 0) return;
                    const i64 m = narrow(value);
                    static_cast<void>(checked_mul(checked_mul(row.t, row.t), m));
                    GaussianInt inner{1, 0};
                    for (const auto& [p, e] : merge(ft, factorize(m, tables))) {
                        inner = inner * local_m14(p, e, j, divides_t(row.t, p));
                        if (inner.is_zero()) break;
                    }
                    s += std::sqrt(static_cast<long double>(inner.norm()));
                } catch (const std::overflow_error& e) {
                    rethrow_at(e, row.t, row.u, v);
                }
            });
        }
        return s;
    });
    long double total = 0;
    for (auto s : parts) total += s;
    return static_cast<double>(total);
}

std::array<i64, 3> prime_class_distribution(i64 x, const PrimeTables& tables)
{
    if (x < 1) throw std::domain_error("prime_class_distribution: x must be positive");
    if (x > tables.limit()) {
        throw resource_error("prime_class_distribution: x = " + std::to_string(x) + " exceeds sieve limit " +
                             std::to_string(tables.limit()));
    }
    std::array<i64, 3> buckets{0, 0, 0};
    for (i64 p : primes_in(1, x, tables)) {
        if (p == 2 || p == 7 || kronecker(-56, p) != 1) continue;
        if (reps_by_form56(0, p) > 0) {
            ++buckets[0];
        } else if (reps_by_form56(1, p) > 0) {
            ++buckets[1];
        } else if (reps_by_form56(2, p) > 0) {
            ++buckets[2];
        } else {
            throw std::logic_error("prime_class_distribution: split prime " + std::to_string(p) +
                                   " represented by no form");
        }
    }
    return buckets;
}

}  // namespace eqd
