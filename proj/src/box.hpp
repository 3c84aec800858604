// Enumeration of (t, u, v) with t^{1/2}(u,v) in B^{1/2} R, shared by the
// Chatelet and quadratic-field sums.

#ifndef EQUIDIST_SRC_BOX_HPP
#define EQUIDIST_SRC_BOX_HPP

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "equidist/chatelet.hpp"

namespace eqd::detail {

// u * sqrt(t) >= c * sqrt(B), decided on squares.
inline bool scaled_ge(i64 u, double c, i64 t, double B)
{
    const long double lhs = static_cast<long double>(u) * u * t;
    const long double rhs = static_cast<long double>(c) * c * B;
    if (u >= 0 && c <= 0) return true;
    if (u < 0 && c >= 0) return false;
    return u >= 0 ? lhs >= rhs : lhs <= rhs;
}

inline bool in_scaled(i64 u, double lo, double hi, i64 t, double B)
{
    return scaled_ge(u, lo, t, B) && scaled_ge(-u, -hi, t, B);
}

struct Row {
    i64 t;
    i64 u;
};

// All (t, u) with u admissible for t; t restricted by keep(t).
template <class Keep>
std::vector<Row> box_rows(double B, const Region& R, Keep&& keep)
{
    std::vector<Row> rows;
    const i64 t_max = static_cast<i64>(std::floor(B));
    for (i64 t = 1; t <= t_max; ++t) {
        if (!keep(t)) continue;
        const i64 w = static_cast<i64>(std::sqrt(B / static_cast<double>(t))) + 1;
        for (i64 u = -w; u <= w; ++u) {
            if (in_scaled(u, R.u_lo, R.u_hi, t, B)) rows.push_back({t, u});
        }
    }
    return rows;
}

template <class Fn>
void for_each_v(const Row& row, double B, const Region& R, Fn&& fn)
{
    const i64 w = static_cast<i64>(std::sqrt(B / static_cast<double>(row.t))) + 1;
    for (i64 v = -w; v <= w; ++v) {
        if (std::gcd(row.u, v) != 1) continue;
        if (!in_scaled(v, R.v_lo, R.v_hi, row.t, B)) continue;
        fn(v);
    }
}

[[noreturn]] inline void rethrow_at(const std::exception& e, i64 t, i64 u, i64 v)
{
    throw std::overflow_error(std::string(e.what()) + " at (t,u,v) = (" + std::to_string(t) + "," +
                              std::to_string(u) + "," + std::to_string(v) + ")");
}

inline void require_B(double B, const PrimeTables& tables, const char* who)
{
    if (!(B >= 0) || !std::isfinite(B)) throw std::invalid_argument(std::string(who) + ": B must be nonnegative");
    if (B > static_cast<double>(tables.limit())) {
        throw resource_error(std::string(who) + ": B = " + std::to_string(B) + " exceeds sieve limit " +
                             std::to_string(tables.limit()));
    }
}

}  // namespace eqd::detail

#endif
