#include "equidist/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace eqd {

i64 GaussianInt::norm() const
{
    return checked_add(checked_mul(re, re), checked_mul(im, im));
}

double GaussianInt::arg() const
{
    if (is_zero()) throw std::domain_error("arg of zero Gaussian integer");
    GaussianInt w = *this;
    int quadrant = 0;
    while (!(w.re > 0 && w.im >= 0)) {
        w = {w.im, -w.re};
        ++quadrant;
    }
    const double phi = std::atan2(static_cast<double>(w.im), static_cast<double>(w.re));
    const double theta = quadrant * kHalfPi + phi;
    return theta < kTwoPi ? theta : std::nextafter(kTwoPi, 0.0);
}

GaussianInt operator+(GaussianInt a, GaussianInt b)
{
    return {checked_add(a.re, b.re), checked_add(a.im, b.im)};
}

GaussianInt operator-(GaussianInt a, GaussianInt b)
{
    return {checked_sub(a.re, b.re), checked_sub(a.im, b.im)};
}

GaussianInt operator*(GaussianInt a, GaussianInt b)
{
    const i128 re = i128{a.re} * b.re - i128{a.im} * b.im;
    const i128 im = i128{a.re} * b.im + i128{a.im} * b.re;
    return {narrow(re), narrow(im)};
}

namespace {

struct Gauss128 {
    i128 re = 0;
    i128 im = 0;
};

Gauss128 mul128(Gauss128 a, Gauss128 b)
{
    return {checked_sub(checked_mul(a.re, b.re), checked_mul(a.im, b.im)),
            checked_add(checked_mul(a.re, b.im), checked_mul(a.im, b.re))};
}

Gauss128 pow128(GaussianInt z, int e)
{
    Gauss128 base{z.re, z.im};
    Gauss128 result{1, 0};
    while (e > 0) {
        if (e & 1) result = mul128(result, base);
        e >>= 1;
        if (e > 0) base = mul128(base, base);
    }
    return result;
}

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b)
{
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Round num/den to the nearest integer, den > 0.
i128 round_div(i128 num, i128 den)
{
    i128 q = num / den;
    i128 r = num % den;
    if (r < 0) {
        r += den;
        --q;
    }
    if (2 * r >= den) ++q;
    return q;
}

constexpr GaussianInt kUnits[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

bool divides(GaussianInt d, GaussianInt z)
{
    if (d.is_zero()) throw std::domain_error("division by zero Gaussian integer");
    const i128 n = i128{d.re} * d.re + i128{d.im} * d.im;
    const i128 re = i128{z.re} * d.re + i128{z.im} * d.im;
    const i128 im = i128{z.im} * d.re - i128{z.re} * d.im;
    return re % n == 0 && im % n == 0;
}

GaussianInt exact_div(GaussianInt z, GaussianInt d)
{
    if (d.is_zero()) throw std::domain_error("division by zero Gaussian integer");
    const i128 n = i128{d.re} * d.re + i128{d.im} * d.im;
    const i128 re = i128{z.re} * d.re + i128{z.im} * d.im;
    const i128 im = i128{z.im} * d.re - i128{z.re} * d.im;
    if (re % n != 0 || im % n != 0) throw std::domain_error("inexact Gaussian division");
    return {narrow(re / n), narrow(im / n)};
}

bool in_arc(double theta, double c, double d)
{
    const double t = theta == 0.0 ? kTwoPi : theta;
    return c < t && t <= d;
}

bool is_primary(GaussianInt z)
{
    // (z - 1) / (2 + 2i) = (z - 1)(1 - i) / 4
    const i64 x = z.re - 1;
    const i64 y = z.im;
    return ((x + y) % 4 == 0) && ((y - x) % 4 == 0);
}

GaussianInt normalize_associate(GaussianInt z)
{
    if (z.is_zero()) return z;
    const bool odd = ((z.re + z.im) & 1) != 0;
    for (GaussianInt u : kUnits) {
        const GaussianInt w = z * u;
        if (odd ? is_primary(w) : (w.re > 0 && w.im >= 0)) return w;
    }
    throw std::logic_error("no normalized associate found");
}

GaussianInt gaussian_gcd(GaussianInt a, GaussianInt b)
{
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
    while (!b.is_zero()) {
        const i128 n = i128{b.re} * b.re + i128{b.im} * b.im;
        const i128 re = i128{a.re} * b.re + i128{a.im} * b.im;
        const i128 im = i128{a.im} * b.re - i128{a.re} * b.im;
        const GaussianInt q{narrow(round_div(re, n)), narrow(round_div(im, n))};
        const GaussianInt r = a - q * b;
        a = b;
        b = r;
    }
    return normalize_associate(a);
}

GaussianInt split_prime(i64 p)
{
    if (p % 4 != 1) throw std::invalid_argument("split_prime: p must be 1 mod 4");
    const u64 r = sqrt_minus_one(static_cast<u64>(p));
    // Hermite-Serret: run Euclid on (p, r) until the remainder drops below sqrt(p).
    u64 a = static_cast<u64>(p);
    u64 b = r;
    while (static_cast<u128>(b) * b > static_cast<u64>(p)) {
        const u64 t = a % b;
        a = b;
        b = t;
    }
    const i64 x = static_cast<i64>(b);
    i64 y = 0;
    if (!is_square(p - x * x, &y)) throw std::logic_error("split_prime: p is not prime");
    return x > y ? GaussianInt{x, y} : GaussianInt{y, x};
}

GaussianFactorization factor_gaussian(GaussianInt z, const PrimeTables& tables)
{
    if (z.is_zero()) throw std::domain_error("cannot factor zero");
    GaussianFactorization out;
    GaussianInt rest = z;
    for (const auto& [p, e] : factorize(z.norm(), tables)) {
        if (p == 2) {
            const GaussianInt pi{1, 1};
            for (int k = 0; k < e; ++k) rest = exact_div(rest, pi);
            out.factors.push_back({pi, e});
        } else if (p % 4 == 3) {
            const GaussianInt q{-p, 0};
            for (int k = 0; k < e / 2; ++k) rest = exact_div(rest, q);
            out.factors.push_back({q, e / 2});
        } else {
            const GaussianInt pi = normalize_associate(split_prime(p));
            const GaussianInt pi_bar = normalize_associate(pi.conj());
            int a = 0;
            while (divides(pi, rest)) {
                rest = exact_div(rest, pi);
                ++a;
            }
            const int b = e - a;
            for (int k = 0; k < b; ++k) rest = exact_div(rest, pi_bar);
            std::pair<GaussianInt, int> first{pi, a}, second{pi_bar, b};
            if (second.first < first.first) std::swap(first, second);
            if (first.second > 0) out.factors.push_back(first);
            if (second.second > 0) out.factors.push_back(second);
        }
    }
    if (!rest.is_unit()) throw std::logic_error("factor_gaussian: leftover is not a unit");
    out.unit = rest;
    return out;
}

GaussianInt reconstruct(const GaussianFactorization& f)
{
    GaussianInt z = f.unit;
    for (const auto& [pi, e] : f.factors) {
        for (int k = 0; k < e; ++k) z = z * pi;
    }
    return z;
}

i64 representation_count(const Factorization& f)
{
    i64 count = 4;
    for (const auto& [p, e] : f) {
        if (p % 4 == 1) count = checked_mul(count, e + 1);
        else if (p % 4 == 3 && (e & 1)) return 0;
    }
    return count;
}

std::vector<GaussianInt> representations(i64 n, const Factorization& f)
{
    if (n < 1) throw std::domain_error("representations: n must be positive");
    std::vector<GaussianInt> partial{{1, 0}};
    for (const auto& [p, e] : f) {
        if (p == 2) {
            GaussianInt w{1, 0};
            for (int k = 0; k < e; ++k) w = w * GaussianInt{1, 1};
            for (auto& z : partial) z = z * w;
        } else if (p % 4 == 3) {
            if (e & 1) return {};
            i64 w = 1;
            for (int k = 0; k < e / 2; ++k) w = checked_mul(w, p);
            for (auto& z : partial) z = z * GaussianInt{w, 0};
        } else {
            const GaussianInt pi = split_prime(p);
            std::vector<GaussianInt> pow_pi(e + 1), pow_bar(e + 1);
            pow_pi[0] = pow_bar[0] = {1, 0};
            for (int k = 1; k <= e; ++k) {
                pow_pi[k] = pow_pi[k - 1] * pi;
                pow_bar[k] = pow_bar[k - 1] * pi.conj();
            }
            std::vector<GaussianInt> next;
            next.reserve(partial.size() * (e + 1));
            for (const auto& z : partial) {
                for (int a = 0; a <= e; ++a) next.push_back(z * pow_pi[a] * pow_bar[e - a]);
            }
            partial = std::move(next);
        }
    }
    std::vector<GaussianInt> out;
    out.reserve(partial.size() * 4);
    for (const auto& z : partial) {
        for (GaussianInt u : kUnits) out.push_back(z * u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<GaussianInt> representations(i64 n, const PrimeTables& tables)
{
    return representations(n, factorize(n, tables));
}

CharSumValue ExactCharSum::to_value() const
{
    const long double d = static_cast<long double>(den);
    return {static_cast<double>(static_cast<long double>(re) / d),
            static_cast<double>(static_cast<long double>(im) / d)};
}

std::optional<ExactCharSum> char_sum_exact(std::span<const GaussianInt> points, i64 n, int h)
{
    if (h < 0) throw std::invalid_argument("char_sum_exact: h must be nonnegative");
    if (h % 4 != 0 || points.empty()) return ExactCharSum{0, 0, 1};
    try {
        i128 den = 4;
        for (int k = 0; k < h / 2; ++k) den = checked_mul(den, i128{n});
        ExactCharSum s{0, 0, den};
        for (const auto& z : points) {
            const Gauss128 w = pow128(z, h);
            s.re = checked_add(s.re, w.re);
            s.im = checked_add(s.im, w.im);
        }
        const i128 g = gcd128(gcd128(s.re, s.im), s.den);
        if (g > 1) {
            s.re /= g;
            s.im /= g;
            s.den /= g;
        }
        return s;
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
}

CharSumValue char_sum(std::span<const GaussianInt> points, i64 n, int h)
{
    if (h % 4 != 0 || points.empty()) return {};
    if (auto exact = char_sum_exact(points, n, h)) return exact->to_value();
    long double re = 0, im = 0;
    for (const auto& z : points) {
        const long double angle = static_cast<long double>(h) * z.arg();
        re += std::cos(angle);
        im += std::sin(angle);
    }
    return {static_cast<double>(re / 4), static_cast<double>(im / 4)};
}

CharSumValue g_h(i64 n, const Factorization& f, int h)
{
    if (h % 4 != 0) return {};
    const auto reps = representations(n, f);
    return char_sum(reps, n, h);
}

CharSumValue g_h(i64 n, int h, const PrimeTables& tables)
{
    if (n < 1) throw std::domain_error("g_h: n must be positive");
    if (h % 4 != 0) return {};
    return g_h(n, factorize(n, tables), h);
}

CharSumValue g_h_multiplicative(const Factorization& f, int h)
{
    if (h % 4 != 0) return {};
    long double value = 1;
    for (const auto& [p, e] : f) {
        if (p == 2) {
            if ((static_cast<i64>(e) * (h / 4)) & 1) value = -value;
        } else if (p % 4 == 3) {
            if (e & 1) return {};
        } else {
            const GaussianInt pi = split_prime(p);
            const long double theta =
                std::atan2(static_cast<long double>(pi.im), static_cast<long double>(pi.re));
            long double local = 0;
            for (int a = 0; a <= e; ++a) local += std::cos(static_cast<long double>(2 * a - e) * h * theta);
            value *= local;
        }
    }
    return {static_cast<double>(value), 0.0};
}

double f_h(i64 n, int h, const PrimeTables& tables) { return g_h(n, h, tables).abs(); }

CharSumValue g_h_coprime(i64 n, int h, GaussianInt mu, const PrimeTables& tables)
{
    if (mu.is_zero()) throw std::domain_error("g_h_coprime: mu must be nonzero");
    if (h % 4 != 0) return {};
    const GaussianInt mu_bar = mu.conj();
    std::vector<GaussianInt> kept;
    for (const auto& alpha : representations(n, tables)) {
        if (gaussian_gcd(alpha, mu_bar).is_unit()) kept.push_back(alpha);
    }
    return char_sum(kept, n, h);
}

std::vector<GaussianInt> primary_mu_list(i64 t, const PrimeTables& tables)
{
    if (t < 1) throw std::domain_error("primary_mu_list: t must be positive");
    std::vector<GaussianInt> partial{{1, 0}};
    for (const auto& [p, e] : factorize(t, tables)) {
        if (p % 4 != 1) return {};
        const GaussianInt pi = split_prime(p);
        GaussianInt w{1, 0};
        for (int k = 0; k < e; ++k) w = w * pi;
        std::vector<GaussianInt> next;
        next.reserve(partial.size() * 2);
        for (const auto& z : partial) {
            next.push_back(z * w);
            next.push_back(z * w.conj());
        }
        partial = std::move(next);
    }
    for (auto& z : partial) z = normalize_associate(z);
    std::sort(partial.begin(), partial.end());
    return partial;
}

CharSumValue lambda_gross_sum(i64 x, i64 k, const PrimeTables& tables)
{
    if (x < 2) throw std::domain_error("lambda_gross_sum: x must be at least 2");
    if (k < 1) throw std::domain_error("lambda_gross_sum: k must be positive");
    long double total = 0;
    for (i64 p : primes_in(1, x, tables)) {
        const long double logp = std::log(static_cast<long double>(p));
        if (p == 2) {
            // alpha = unit * (1+i)^m, character e^{i pi k m}
            i64 m = 1;
            for (i128 q = 2; q <= x; q *= 2, ++m) total += 4 * logp * (((k * m) & 1) ? -1 : 1);
        } else if (p % 4 == 3) {
            // alpha = unit * p^m, N = p^{2m}, character 1, Lambda = log p^2
            for (i128 q = i128{p} * p; q <= x; q *= i128{p} * p) total += 4 * 2 * logp;
        } else {
            const GaussianInt pi = split_prime(p);
            const long double theta =
                std::atan2(static_cast<long double>(pi.im), static_cast<long double>(pi.re));
            i64 m = 1;
            for (i128 q = p; q <= x; q *= p, ++m) {
                // pi^m and its conjugate, four associates each
                total += 4 * logp * 2 * std::cos(static_cast<long double>(4 * k * m) * theta);
            }
        }
    }
    return {static_cast<double>(total), 0.0};
}

}  // namespace eqd
