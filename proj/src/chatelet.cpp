#include "equidist/chatelet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "box.hpp"
#include "equidist/parallel.hpp"

namespace eqd {

using namespace detail;

// ---------------------------------------------------------------------------
// QuarticForm

QuarticForm::QuarticForm(i64 f4, i64 f3, i64 f2, i64 f1, i64 f0) : c_{f4, f3, f2, f1, f0}
{
    if (discriminant() == 0) {
        throw std::invalid_argument("quartic form " + to_string() + " is not separable");
    }
}

QuarticForm QuarticForm::parse(const std::string& text)
{
    std::vector<i64> c;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        try {
            c.push_back(std::stoll(item, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) {
            throw std::invalid_argument("form coefficient '" + item + "' is not an integer");
        }
    }
    if (c.size() != 5 || (!text.empty() && text.back() == ',')) {
        throw std::invalid_argument("form must be five comma-separated integers f4,f3,f2,f1,f0");
    }
    return QuarticForm(c[0], c[1], c[2], c[3], c[4]);
}

i128 QuarticForm::eval(i64 u, i64 v) const
{
    // Horner in u with powers of v
    i128 acc = c_[0];
    i128 vp = 1;
    for (int k = 1; k <= 4; ++k) {
        vp = checked_mul(vp, i128{v});
        acc = checked_add(checked_mul(acc, i128{u}), checked_mul(i128{c_[k]}, vp));
    }
    return acc;
}

double QuarticForm::eval(double u, double v) const
{
    double acc = static_cast<double>(c_[0]);
    double vp = 1.0;
    for (int k = 1; k <= 4; ++k) {
        vp *= v;
        acc = acc * u + static_cast<double>(c_[k]) * vp;
    }
    return acc;
}

i128 QuarticForm::discriminant() const
{
    // monomials of the quartic discriminant as coefficient exponent strings over a..e
    struct Term {
        i128 k;
        const char* vars;
    };
    static constexpr Term terms[] = {
        {256, "aaaeee"}, {-192, "aabdee"}, {-128, "aaccee"}, {144, "aacdde"}, {-27, "aadddd"},
        {144, "abbcee"}, {-6, "abbdde"},   {-80, "abccde"},  {18, "abcddd"},  {16, "acccce"},
        {-4, "acccdd"},  {-27, "bbbbee"},  {18, "bbbcde"},   {-4, "bbbddd"},  {-4, "bbccce"},
        {1, "bbccdd"},
    };
    i128 disc = 0;
    for (const auto& term : terms) {
        i128 m = term.k;
        for (const char* v = term.vars; *v; ++v) m = checked_mul(m, i128{c_[*v - 'a']});
        disc = checked_add(disc, m);
    }
    return disc;
}

std::string QuarticForm::to_string() const
{
    std::string s;
    for (int k = 0; k < 5; ++k) {
        if (k) s += ',';
        s += std::to_string(c_[k]);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Irreducibility over Q(i)

namespace {

struct G128 {
    i128 re = 0;
    i128 im = 0;

    bool is_zero() const { return re == 0 && im == 0; }
};

G128 g_add(G128 a, G128 b) { return {checked_add(a.re, b.re), checked_add(a.im, b.im)}; }
G128 g_sub(G128 a, G128 b) { return {checked_sub(a.re, b.re), checked_sub(a.im, b.im)}; }
G128 g_mul(G128 a, G128 b)
{
    return {checked_sub(checked_mul(a.re, b.re), checked_mul(a.im, b.im)),
            checked_add(checked_mul(a.re, b.im), checked_mul(a.im, b.re))};
}
G128 widen(GaussianInt z) { return {z.re, z.im}; }

constexpr GaussianInt kUnits[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// Divisors of a nonzero integer in Z[i], one per associate class.
std::vector<GaussianInt> gaussian_divisors(i64 m, const PrimeTables& tables)
{
    const auto f = factor_gaussian(GaussianInt{m < 0 ? -m : m, 0}, tables);
    std::vector<GaussianInt> out{{1, 0}};
    for (const auto& [pi, e] : f.factors) {
        std::vector<GaussianInt> next;
        for (const auto& d : out) {
            GaussianInt w = d;
            for (int k = 0; k <= e; ++k) {
                next.push_back(w);
                if (k < e) w = w * pi;
            }
        }
        out = std::move(next);
    }
    return out;
}

// Does g2 X^2 + g1 X + g0 divide the quartic over Q(i)? Pseudo-remainder.
bool quadratic_divides(const std::array<G128, 5>& f, G128 g2, G128 g1, G128 g0)
{
    // r[k] is the coefficient of X^k
    std::array<G128, 5> r{f[4], f[3], f[2], f[1], f[0]};
    for (int d = 4; d >= 2; --d) {
        const G128 lead = r[d];
        for (int k = 0; k <= d; ++k) r[k] = g_mul(r[k], g2);
        r[d] = {};
        r[d - 1] = g_sub(r[d - 1], g_mul(lead, g1));
        r[d - 2] = g_sub(r[d - 2], g_mul(lead, g0));
    }
    return r[0].is_zero() && r[1].is_zero();
}

constexpr double kMaxQuadraticCandidates = 4e7;

}  // namespace

bool irreducible_over_qi(const QuarticForm& F)
{
    const auto& c = F.coeffs();
    if (c[0] == 0 || c[4] == 0) return false;  // v | F or u | F

    const PrimeTables tables(1000);

    const auto lead_divs = gaussian_divisors(c[0], tables);
    const auto const_divs = gaussian_divisors(c[4], tables);
    std::array<G128, 5> f;
    for (int k = 0; k < 5; ++k) f[k] = {c[k], 0};

    try {
        // linear factors s X - r
        for (const auto& s : lead_divs) {
            for (const auto& d : const_divs) {
                for (const auto& u : kUnits) {
                    const G128 r = widen(d * u), sw = widen(s);
                    G128 acc = f[0];
                    for (int k = 1; k <= 4; ++k) {
                        // acc = acc * r + f[k] * s^k, evaluated as s^4 F(r/s, 1)
                        G128 sk{1, 0};
                        for (int j = 0; j < k; ++j) sk = g_mul(sk, sw);
                        acc = g_add(g_mul(acc, r), g_mul(f[k], sk));
                    }
                    if (acc.is_zero()) return false;
                }
            }
        }

        // quadratic factors g2 X^2 + g1 X + g0 with |g1| <= 2 * ||F||_2
        long double norm2 = 0;
        for (i64 x : c) norm2 += static_cast<long double>(x) * x;
        const long double R = 2 * std::sqrt(norm2);
        const double candidates = static_cast<double>(lead_divs.size() * const_divs.size() * 4) *
                                  3.2 * static_cast<double>(R * R);
        if (candidates > kMaxQuadraticCandidates) {
            throw indeterminate_error("irreducible_over_qi: coefficient bound too large for " +
                                      F.to_string() + "; verify irreducibility externally");
        }
        const i64 r = static_cast<i64>(std::ceil(R));
        const i128 r2 = static_cast<i128>(std::ceil(R * R));
        for (const auto& g2 : lead_divs) {
            for (const auto& d : const_divs) {
                for (const auto& u : kUnits) {
                    const G128 g0 = widen(d * u);
                    for (i64 a = -r; a <= r; ++a) {
                        for (i64 b = -r; b <= r; ++b) {
                            if (i128{a} * a + i128{b} * b > r2) continue;
                            if (quadratic_divides(f, widen(g2), {a, b}, g0)) return false;
                        }
                    }
                }
            }
        }
    } catch (const std::overflow_error&) {
        throw indeterminate_error("irreducible_over_qi: arithmetic overflow in factor search for " +
                                  F.to_string() + "; verify irreducibility externally");
    }
    return true;
}

// ---------------------------------------------------------------------------
// rho(p)

namespace {

using Poly = std::vector<u64>;  // low to high degree, coefficients mod p

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 inv_mod(u64 a, u64 p) { return powmod(a, p - 2, p); }

Poly poly_mod(Poly a, const Poly& m, u64 p)
{
    trim(a);
    const std::size_t dm = m.size() - 1;
    const u64 inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        const u64 q = mulmod(a.back(), inv, p);
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t k = 0; k <= dm; ++k) {
            a[shift + k] = (a[shift + k] + p - mulmod(q, m[k], p)) % p;
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p)
{
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    return poly_mod(std::move(r), m, p);
}

Poly poly_gcd(Poly a, Poly b, u64 p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

u64 reduce(i64 x, u64 p)
{
    const i64 r = x % static_cast<i64>(p);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
}

}  // namespace

i64 projective_root_count(const QuarticForm& F, i64 p)
{
    const auto& c = F.coeffs();
    const u64 up = static_cast<u64>(p);
    Poly f{reduce(c[4], up), reduce(c[3], up), reduce(c[2], up), reduce(c[1], up), reduce(c[0], up)};
    trim(f);
    if (f.empty()) return p + 1;
    const i64 at_infinity = (f.size() < 5) ? 1 : 0;
    if (f.size() == 1) return at_infinity;

    // X^p mod f by square and multiply
    Poly acc{1};
    Poly base = poly_mod(Poly{0, 1}, f, up);
    for (u64 e = up; e; e >>= 1) {
        if (e & 1) acc = poly_mulmod(acc, base, f, up);
        base = poly_mulmod(base, base, f, up);
    }
    acc.resize(std::max<std::size_t>(acc.size(), 2), 0);
    acc[1] = (acc[1] + up - 1) % up;
    const Poly g = poly_gcd(f, acc, up);
    return static_cast<i64>(g.size()) - 1 + at_infinity;
}

Rational rho_literal(const QuarticForm& F, i64 p)
{
    if (p < 2 || !is_prime_u64(static_cast<u64>(p))) {
        throw std::invalid_argument("rho: " + std::to_string(p) + " is not prime");
    }
    i64 count = 0;
    for (i64 u = 1; u <= p; ++u) {
        for (i64 v = 1; v <= p; ++v) {
            if (u == p && v == p) continue;
            if (F.eval(u, v) % p == 0) ++count;
        }
    }
    const i64 g = std::gcd(count, p - 1);
    return {count / g, (p - 1) / g};
}

Rational rho(const QuarticForm& F, i64 p)
{
    if (p <= 100) return rho_literal(F, p);
    if (!is_prime_u64(static_cast<u64>(p))) {
        throw std::invalid_argument("rho: " + std::to_string(p) + " is not prime");
    }
    return {projective_root_count(F, p), 1};
}

// ---------------------------------------------------------------------------
// Region and box enumeration

void Region::validate() const
{
    const bool inside = -1.0 <= u_lo && u_hi <= 1.0 && -1.0 <= v_lo && v_hi <= 1.0;
    if (!inside || !(u_lo < u_hi) || !(v_lo < v_hi)) {
        throw std::invalid_argument("region must be a nonempty rectangle inside [-1,1]^2");
    }
}

namespace {

// Tables of primary mu per t, indexed by t; empty where no mu exists.
std::vector<std::vector<GaussianInt>> mu_table(i64 t_max, const PrimeTables& tables)
{
    std::vector<std::vector<GaussianInt>> mus(static_cast<std::size_t>(t_max + 1));
    for (i64 t = 1; t <= t_max; ++t) mus[t] = primary_mu_list(t, tables);
    return mus;
}

// Solutions over all of (0, 2pi]: one alpha-side choice at primes of t,
// e + 1 choices elsewhere, times the units and the number of mu.
i64 full_count(const Factorization& fn, i64 t, i64 mu_count)
{
    i64 count = checked_mul(i64{4}, mu_count);
    for (const auto& [p, e] : fn) {
        if (p % 4 == 3 && (e & 1)) return 0;
        if (p % 4 == 1 && t % p != 0) count = checked_mul(count, i64{e + 1});
    }
    return count;
}

}  // namespace

NBResult enumerate_NB(const QuarticForm& F, double B, const Region& R, const ArgSector& sector,
                      const PrimeTables& tables, unsigned workers, const SolutionVisitor& visit)
{
    R.validate();
    if (!(0.0 <= sector.lo && sector.lo < sector.hi && sector.hi <= kTwoPi)) {
        throw std::invalid_argument("sector must satisfy 0 <= lo < hi <= 2*pi");
    }
    require_B(B, tables, "enumerate_NB");
    const i64 t_max = static_cast<i64>(std::floor(B));
    const auto mus = mu_table(t_max, tables);
    const auto rows = box_rows(B, R, [&](i64 t) { return !mus[t].empty(); });
    const bool explicit_points = visit || !sector.is_full();

    auto row_work = [&](const Row& row, const SolutionVisitor* sink) {
        i64 count = 0;
        for_each_v(row, B, R, [&](i64 v) {
            try {
                const i128 value = F.eval(row.u, v);
                if (value <= 0) return;
                const i64 n = narrow(value);
                const auto fn = factorize(n, tables);
                static_cast<void>(checked_mul(checked_mul(row.t, row.t), n));
                if (!explicit_points) {
                    count += full_count(fn, row.t, static_cast<i64>(mus[row.t].size()));
                    return;
                }
                const auto alphas = representations(n, fn);
                std::vector<std::pair<double, GaussianInt>> hits;
                for (const auto& mu : mus[row.t]) {
                    const GaussianInt mu2 = mu * mu;
                    for (const auto& alpha : alphas) {
                        const GaussianInt z = mu2 * alpha;
                        if (gcd(row.t, gcd(z.re, z.im)) != 1) continue;
                        const double theta = z.arg();
                        if (in_arc(theta, sector.lo, sector.hi)) hits.emplace_back(theta, z);
                    }
                }
                count += static_cast<i64>(hits.size());
                if (sink) {
                    std::sort(hits.begin(), hits.end());
                    for (const auto& [theta, z] : hits) (*sink)({row.t, row.u, v, z.re, z.im});
                }
            } catch (const std::overflow_error& e) {
                rethrow_at(e, row.t, row.u, v);
            }
        });
        return count;
    };

    NBResult out;
    if (visit) {
        for (const auto& row : rows) out.tuples += row_work(row, &visit);
        return out;
    }
    const auto parts = map_chunks<i64>(static_cast<i64>(rows.size()), workers, [&](i64 lo, i64 hi) {
        i64 c = 0;
        for (i64 k = lo; k < hi; ++k) c += row_work(rows[k], nullptr);
        return c;
    });
    out.tuples = std::accumulate(parts.begin(), parts.end(), i64{0});
    return out;
}

double sigma_infinity(const QuarticForm& F, const Region& R, int resolution)
{
    R.validate();
    if (resolution < 100) throw std::invalid_argument("sigma_infinity: resolution must be at least 100");
    const double du = (R.u_hi - R.u_lo) / resolution;
    const double dv = (R.v_hi - R.v_lo) / resolution;
    i64 positive = 0;
    for (int i = 0; i < resolution; ++i) {
        const double u = R.u_lo + (i + 0.5) * du;
        for (int j = 0; j < resolution; ++j) {
            const double v = R.v_lo + (j + 0.5) * dv;
            if (F.eval(u, v) > 0) ++positive;
        }
    }
    return kHalfPi * static_cast<double>(positive) * du * dv;
}

// ---------------------------------------------------------------------------
// Character sums over t^2 F(u,v) = x^2 + y^2

namespace {

using cplx = std::complex<long double>;

cplx unit_power(double theta, long double k) { return std::polar(1.0L, k * static_cast<long double>(theta)); }

// sum over alpha of norm n with gcd(alpha, conj mu) = 1 of (alpha/|alpha|)^k, 4 | k
cplx restricted_alpha_sum(const Factorization& fn, GaussianInt mu, i64 t, long double k)
{
    cplx total = 4;
    for (const auto& [p, e] : fn) {
        if (p == 2) {
            // (1+i)^e has argument e pi/4
            total *= unit_power(M_PI / 4, k * e);
        } else if (p % 4 == 3) {
            if (e & 1) return 0;
        } else {
            const GaussianInt pi = split_prime(p);
            const double theta = pi.arg();
            if (t % p == 0) {
                const long double side = divides(pi, mu) ? 1 : -1;
                total *= unit_power(theta, side * k * e);
            } else {
                cplx local = 0;
                for (int a = 0; a <= e; ++a) local += unit_power(theta, k * (2 * a - e));
                total *= local;
            }
        }
    }
    return total;
}

Factorization merge(const Factorization& a, const Factorization& b, int scale_a)
{
    std::map<i64, int> m;
    for (const auto& [p, e] : a) m[p] += scale_a * e;
    for (const auto& [p, e] : b) m[p] += e;
    Factorization out;
    for (const auto& [p, e] : m) out.push_back({p, e});
    return out;
}

cplx inner_mu(i64 t, const Factorization& fn, int h, const std::vector<GaussianInt>& mus)
{
    cplx total = 0;
    for (const auto& mu : mus) {
        total += unit_power(mu.arg(), 8.0L * h) * restricted_alpha_sum(fn, mu, t, 4.0L * h);
    }
    return total;
}

cplx inner_direct(i64 t, i64 n, const Factorization& fn, int h, const PrimeTables& tables)
{
    const i64 m = checked_mul(checked_mul(t, t), n);
    const auto fm = merge(factorize(t, tables), fn, 2);
    std::vector<GaussianInt> kept;
    for (const auto& z : representations(m, fm))
        if (gcd(t, gcd(z.re, z.im)) == 1) kept.push_back(z);
    const auto s = char_sum(kept, m, 4 * h);
    return {4.0L * s.re, 4.0L * s.im};
}

}  // namespace

std::complex<double> lt2_inner_sum(i64 t, i64 n, int h, const PrimeTables& tables, InnerSumPath path)
{
    if (t < 1 || n < 1) throw std::domain_error("lt2_inner_sum: t and n must be positive");
    if (h < 1) throw std::invalid_argument("lt2_inner_sum: h must be positive");
    const auto fn = factorize(n, tables);
    const cplx v = path == InnerSumPath::MuDecomposition ? inner_mu(t, fn, h, primary_mu_list(t, tables))
                                                         : inner_direct(t, n, fn, h, tables);
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

double lemma_lt2_sum(const QuarticForm& F, double B, int h, const PrimeTables& tables, unsigned workers,
                     InnerSumPath path)
{
    if (h < 1) throw std::invalid_argument("lemma_lt2_sum: h must be positive");
    require_B(B, tables, "lemma_lt2_sum");
    const Region box;
    const bool fast = path == InnerSumPath::MuDecomposition;
    const i64 t_max = static_cast<i64>(std::floor(B));
    const auto mus = fast ? mu_table(t_max, tables) : std::vector<std::vector<GaussianInt>>(t_max + 1);
    const auto rows = box_rows(B, box, [&](i64 t) { return !fast || !mus[t].empty(); });
    const auto parts = map_chunks<long double>(static_cast<i64>(rows.size()), workers, [&](i64 lo, i64 hi) {
        long double s = 0;
        for (i64 k = lo; k < hi; ++k) {
            const Row& row = rows[k];
            for_each_v(row, B, box, [&](i64 v) {
                try {
                    const i128 value = F.eval(row.u, v);
                    if (value <= 0) return;
                    const i64 n = narrow(value);
                    const auto fn = factorize(n, tables);
                    const cplx inner =
                        fast ? inner_mu(row.t, fn, h, mus[row.t]) : inner_direct(row.t, n, fn, h, tables);
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

double lemma_lt2_trivial(const QuarticForm& F, double B, const PrimeTables& tables, unsigned workers)
{
    return static_cast<double>(enumerate_NB(F, B, Region{}, ArgSector{}, tables, workers).tuples);
}

MuSplit mu_decomposition(i64 t, i64 x, i64 y, const PrimeTables& tables)
{
    if (t < 1) throw std::domain_error("mu_decomposition: t must be positive");
    const GaussianInt z{x, y};
    if (z.is_zero()) throw std::domain_error("mu_decomposition: x + iy must be nonzero");
    if (gcd(t, gcd(x, y)) != 1) throw std::domain_error("mu_decomposition: gcd(t, x, y) != 1");
    if (z.norm() % t != 0) throw std::domain_error("mu_decomposition: t does not divide x^2 + y^2");
    for (const auto& mu : primary_mu_list(t, tables)) {
        if (divides(mu, z)) return {mu, exact_div(z, mu)};
    }
    throw std::domain_error("mu_decomposition: no primary mu of norm t divides x + iy");
}

SSums s_sums(const QuarticForm& F, i64 B, int h, const PrimeTables& tables)
{
    if (h < 1) throw std::invalid_argument("s_sums: h must be positive");
    if (B > tables.limit()) {
        throw resource_error("s_sums: B = " + std::to_string(B) + " exceeds sieve limit " +
                             std::to_string(tables.limit()));
    }
    long double s1 = 0, s2 = 0, s3re = 0, s3im = 0;
    if (B >= 3) {
        for (i64 p : primes_in(2, B, tables)) {
            const long double r = rho(F, p).value() / static_cast<long double>(p);
            if (r == 0) continue;
            s1 += r;
            if (p % 4 == 1) s2 += r;
            const auto g = g_h_multiplicative(Factorization{{p, 1}}, 8 * h);
            s3re += r * g.re;
            s3im += r * g.im;
        }
    }
    SSums out;
    out.s1 = static_cast<double>(s1);
    out.s2 = static_cast<double>(s2);
    out.s3 = {static_cast<double>(s3re), static_cast<double>(s3im)};
    return out;
}

}  // namespace eqd
