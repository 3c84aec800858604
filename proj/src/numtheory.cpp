#include "equidist/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace eqd {

void throw_overflow(const char* what)
{
    throw std::overflow_error(std::string("integer overflow in ") + what);
}

i64 narrow(i128 v)
{
    if (v > INT64_MAX || v < INT64_MIN) throw_overflow("narrowing to 64 bits");
    return static_cast<i64>(v);
}

u64 isqrt(u64 n)
{
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(i64 n, i64* root)
{
    if (n < 0) return false;
    const u64 r = isqrt(static_cast<u64>(n));
    if (static_cast<i64>(r * r) != n) return false;
    if (root) *root = static_cast<i64>(r);
    return true;
}

i64 gcd(i64 a, i64 b)
{
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        const i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 mulmod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m)
{
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime_u64(u64 n)
{
    if (n < 2) return false;
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : small) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

i64 reconstruct(const Factorization& f)
{
    i64 n = 1;
    for (const auto& [p, e] : f) {
        for (int k = 0; k < e; ++k) n = checked_mul(n, p);
    }
    return n;
}

// ---------------------------------------------------------------------------

PrimeTables::PrimeTables(i64 limit, i64 ceiling) : limit_(limit)
{
    if (limit < 2) throw std::invalid_argument("sieve limit must be at least 2");
    if (limit > ceiling) {
        throw resource_error("sieve limit " + std::to_string(limit) +
                             " exceeds the memory ceiling " + std::to_string(ceiling));
    }
    if (limit >= (i64{1} << 32)) {
        throw resource_error("sieve limit must stay below 2^32");
    }

    spf_.assign(static_cast<std::size_t>(limit) + 1, 0);

    // Base primes up to sqrt(limit) by a plain sieve.
    const i64 root = static_cast<i64>(isqrt(static_cast<u64>(limit)));
    std::vector<char> small(static_cast<std::size_t>(root) + 1, 1);
    std::vector<i64> base;
    for (i64 i = 2; i <= root; ++i) {
        if (!small[i]) continue;
        base.push_back(i);
        for (i64 j = i * i; j <= root; j += i) small[j] = 0;
    }

    constexpr i64 kSegment = i64{1} << 18;
    for (i64 lo = 2; lo <= limit; lo += kSegment) {
        const i64 hi = std::min(limit, lo + kSegment - 1);
        for (i64 p : base) {
            if (p * p > hi) break;
            i64 start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (i64 m = start; m <= hi; m += p) {
                if (spf_[m] == 0) spf_[m] = static_cast<std::uint16_t>(p);
            }
        }
        for (i64 m = lo; m <= hi; ++m) {
            if (spf_[m] == 0) primes_.push_back(static_cast<std::uint32_t>(m));
        }
    }
}

i64 PrimeTables::spf(i64 n) const
{
    if (n < 2 || n > limit_) {
        throw std::out_of_range("spf(" + std::to_string(n) + ") outside table range [2, " +
                                std::to_string(limit_) + "]");
    }
    const std::uint16_t s = spf_[n];
    return s == 0 ? n : s;
}

bool PrimeTables::is_prime(i64 n) const
{
    if (n < 2) return false;
    if (n > limit_) return is_prime_u64(static_cast<u64>(n));
    return spf_[n] == 0;
}

namespace {

u64 pollard_brent(u64 n)
{
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = static_cast<u64>(gcd(static_cast<i64>(q), static_cast<i64>(n)));
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = static_cast<u64>(
                    gcd(static_cast<i64>(x > ys ? x - ys : ys - x), static_cast<i64>(n)));
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(u64 n, const PrimeTables& tables, std::map<i64, int>& out)
{
    if (n == 1) return;
    if (static_cast<i64>(n) <= tables.limit()) {
        i64 m = static_cast<i64>(n);
        while (m > 1) {
            const i64 p = tables.spf(m);
            m /= p;
            ++out[p];
        }
        return;
    }
    if (is_prime_u64(n)) {
        ++out[static_cast<i64>(n)];
        return;
    }
    const u64 d = pollard_brent(n);
    factor_into(d, tables, out);
    factor_into(n / d, tables, out);
}

}  // namespace

Factorization factorize(i64 n, const PrimeTables& tables)
{
    if (n <= 0) throw std::domain_error("factorize: n must be positive, got " + std::to_string(n));
    Factorization result;
    if (n <= tables.limit()) {
        while (n > 1) {
            const i64 p = tables.spf(n);
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            result.push_back({p, e});
        }
        return result;
    }

    // Trial division by sieved primes; stop early once the cofactor is
    // covered by the table or proven prime.
    constexpr i64 kTrialBound = 1000;
    std::map<i64, int> found;
    for (std::uint32_t p32 : tables.primes()) {
        const i64 p = p32;
        if (p > kTrialBound || p * p > n) break;
        while (n % p == 0) {
            n /= p;
            ++found[p];
        }
    }
    factor_into(static_cast<u64>(n), tables, found);
    for (const auto& [p, e] : found) result.push_back({p, e});
    return result;
}

std::vector<i64> primes_in(i64 lo, i64 hi, const PrimeTables& tables)
{
    if (hi > tables.limit()) {
        throw resource_error("primes_in: upper bound " + std::to_string(hi) +
                             " exceeds sieve limit " + std::to_string(tables.limit()));
    }
    std::vector<i64> out;
    if (hi <= lo) return out;
    const auto& ps = tables.primes();
    auto it = std::upper_bound(ps.begin(), ps.end(), static_cast<std::uint32_t>(std::max<i64>(lo, 0)));
    for (; it != ps.end() && *it <= hi; ++it) out.push_back(*it);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Jacobi symbol (a/n) for odd n > 0 and 0 <= a < n.
int jacobi(u64 a, u64 n)
{
    int result = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const u64 r = n & 7;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

}  // namespace

int kronecker(i64 a, i64 n)
{
    if (a == INT64_MIN || n == INT64_MIN) throw_overflow("kronecker");
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;

    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int twos = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++twos;
    }
    if (twos > 0) {
        if ((a & 1) == 0) return 0;
        const i64 r = ((a % 8) + 8) % 8;
        if ((twos & 1) && (r == 3 || r == 5)) result = -result;
    }
    if (n == 1) return result;
    const i64 am = ((a % n) + n) % n;
    return result * jacobi(static_cast<u64>(am), static_cast<u64>(n));
}

u64 sqrt_minus_one(u64 p)
{
    if (p % 4 != 1) throw std::invalid_argument("sqrt_minus_one: p must be 1 mod 4");
    for (u64 c = 2; c < p; ++c) {
        if (powmod(c, (p - 1) / 2, p) == p - 1) return powmod(c, (p - 1) / 4, p);
    }
    throw std::invalid_argument("sqrt_minus_one: no non-residue found; p is not prime");
}

u64 sqrt_mod(u64 a, u64 p)
{
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) throw std::invalid_argument("sqrt_mod: not a residue");
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);

    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = static_cast<u64>(s);
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

}  // namespace eqd
