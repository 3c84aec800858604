// numtheory.hpp
//
// Rational-integer machinery shared by every other module: a segmented
// smallest-prime-factor sieve, factorization, Kronecker symbols and the
// overflow-checked arithmetic everything else is built on.

#ifndef EQUIDIST_NUMTHEORY_HPP
#define EQUIDIST_NUMTHEORY_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqd {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

/// Raised when a table or range limit would be exceeded.
class resource_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Checked arithmetic. Overflow is always an error, never wraparound.
// ---------------------------------------------------------------------------

[[noreturn]] void throw_overflow(const char* what);

inline i64 checked_add(i64 a, i64 b)
{
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw_overflow("addition");
    return r;
}

inline i64 checked_sub(i64 a, i64 b)
{
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw_overflow("subtraction");
    return r;
}

inline i64 checked_mul(i64 a, i64 b)
{
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw_overflow("multiplication");
    return r;
}

inline i128 checked_add(i128 a, i128 b)
{
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw_overflow("128-bit addition");
    return r;
}

inline i128 checked_sub(i128 a, i128 b)
{
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw_overflow("128-bit subtraction");
    return r;
}

inline i128 checked_mul(i128 a, i128 b)
{
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw_overflow("128-bit multiplication");
    return r;
}

/// Narrow a 128-bit value to 64 bits, throwing if it does not fit.
i64 narrow(i128 v);

/// floor(sqrt(n)) for n >= 0, exact.
u64 isqrt(u64 n);

/// True iff n is a perfect square; on success writes the root.
bool is_square(i64 n, i64* root = nullptr);

i64 gcd(i64 a, i64 b);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(u64 n);

// ---------------------------------------------------------------------------
// Prime tables
// ---------------------------------------------------------------------------

struct Factor {
    i64 prime;
    int exponent;

    bool operator==(const Factor&) const = default;
};

/// Primes strictly increasing; the empty list represents 1.
using Factorization = std::vector<Factor>;

i64 reconstruct(const Factorization& f);

/// Smallest-prime-factor table for 2 <= n <= limit, built by a segmented sieve.
///
/// Composite entries store their smallest prime factor (which is at most
/// sqrt(limit) and therefore fits 16 bits); primes store 0. The table is
/// immutable after construction and safe to share between threads.
class PrimeTables {
  public:
    static constexpr i64 kDefaultCeiling = 200'000'000;

    explicit PrimeTables(i64 limit, i64 ceiling = kDefaultCeiling);

    i64 limit() const { return limit_; }

    /// Smallest prime factor of n, 2 <= n <= limit.
    i64 spf(i64 n) const;

    bool is_prime(i64 n) const;

    /// All primes <= limit, ascending.
    const std::vector<std::uint32_t>& primes() const { return primes_; }

  private:
    i64 limit_;
    std::vector<std::uint16_t> spf_;
    std::vector<std::uint32_t> primes_;
};

/// Factor n >= 1. Values within the table use the spf chain; larger values
/// fall back to trial division by the sieved primes, with a Miller-Rabin
/// short-circuit and Pollard-Brent splitting for large composite cofactors.
Factorization factorize(i64 n, const PrimeTables& tables);

/// Primes p with lo < p <= hi, ascending. hi must not exceed tables.limit().
std::vector<i64> primes_in(i64 lo, i64 hi, const PrimeTables& tables);

// ---------------------------------------------------------------------------
// Quadratic symbols
// ---------------------------------------------------------------------------

/// Kronecker symbol (a/n), defined for all integers a, n.
int kronecker(i64 a, i64 n);

/// Non-trivial character modulo 4.
constexpr int chi4(i64 n)
{
    const i64 r = ((n % 4) + 4) % 4;
    return r == 1 ? 1 : (r == 3 ? -1 : 0);
}

/// A square root of -1 modulo a prime p == 1 (mod 4), found by powering the
/// first quadratic non-residue.
u64 sqrt_minus_one(u64 p);

/// Tonelli-Shanks square root of a modulo an odd prime p; a must be a
/// quadratic residue.
u64 sqrt_mod(u64 a, u64 p);

}  // namespace eqd

#endif
