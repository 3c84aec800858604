#include "equidist/linnik.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "equidist/parallel.hpp"

namespace eqd {

void SectorQuery::validate() const
{
    if (!(0.0 <= a && a < b && b <= 1.0)) {
        throw std::invalid_argument("sector query needs 0 <= a < b <= 1");
    }
    if (!(0.0 <= c && c < d && d <= kTwoPi)) {
        throw std::invalid_argument("sector query needs 0 <= c < d <= 2*pi");
    }
}

namespace {

void require_in_table(i64 N, const PrimeTables& tables, const char* who)
{
    if (N > tables.limit()) {
        throw resource_error(std::string(who) + ": N = " + std::to_string(N) +
                             " exceeds sieve limit " + std::to_string(tables.limit()));
    }
}

// Primes p < N with aN < p <= bN.
std::vector<i64> primes_for_query(i64 N, double a, double b, const PrimeTables& tables)
{
    const long double lo = std::floor(static_cast<long double>(a) * N);
    const long double hi = std::floor(static_cast<long double>(b) * N);
    return primes_in(static_cast<i64>(lo), std::min<i64>(static_cast<i64>(hi), N - 1), tables);
}

}  // namespace

i64 count_solutions(i64 N, const SectorQuery& q, const PrimeTables& tables, unsigned workers)
{
    q.validate();
    require_in_table(N, tables, "count_solutions");
    if (N < 3) return 0;
    const auto primes = primes_for_query(N, q.a, q.b, tables);
    const auto parts = map_chunks<i64>(static_cast<i64>(primes.size()), workers, [&](i64 lo, i64 hi) {
        i64 count = 0;
        for (i64 k = lo; k < hi; ++k) {
            const i64 n = N - primes[k];
            for (const auto& alpha : representations(n, tables)) {
                if (in_arc(alpha.arg(), q.c, q.d)) ++count;
            }
        }
        return count;
    });
    return std::accumulate(parts.begin(), parts.end(), i64{0});
}

double singular_series(i64 N, i64 p_cut, const PrimeTables& tables)
{
    if (N < 1) throw std::invalid_argument("singular_series: N must be positive");
    if (p_cut < 3) throw std::invalid_argument("singular_series: p_cut must be at least 3");
    long double value = 3.14159265358979323846264338327950288L;
    for (i64 p : primes_in(2, p_cut, tables)) {
        const long double pp = p;
        value *= 1.0L + chi4(p) / (pp * (pp - 1));
    }
    for (const auto& [p, e] : factorize(N, tables)) {
        const long double pp = p;
        const int c = chi4(p);
        value *= (pp - 1) * (pp - c) / (pp * pp - pp + c);
    }
    return static_cast<double>(value);
}

double theorem2_sum(i64 N, int h, const PrimeTables& tables, unsigned workers)
{
    if (N < 3) throw std::invalid_argument("theorem2_sum: N must be at least 3");
    if (h < 1) throw std::invalid_argument("theorem2_sum: h must be positive");
    const double h_max = 4 * std::ceil(std::log(static_cast<double>(N)));
    if (h > h_max) {
        throw std::invalid_argument("theorem2_sum: h = " + std::to_string(h) +
                                    " exceeds 4*ceil(log N) = " + std::to_string(static_cast<int>(h_max)));
    }
    require_in_table(N, tables, "theorem2_sum");
    if (h % 4 != 0) return 0.0;
    const auto primes = primes_in(1, N - 1, tables);
    const auto parts = map_chunks<long double>(
        static_cast<i64>(primes.size()), workers, [&](i64 lo, i64 hi) {
            long double s = 0;
            for (i64 k = lo; k < hi; ++k) {
                s += std::abs(g_h_multiplicative(factorize(N - primes[k], tables), h).re);
            }
            return s;
        });
    long double total = 0;
    for (auto s : parts) total += s;
    return static_cast<double>(total);
}

EtTerms et_terms(std::span<const double> angles, double c, double d, int H)
{
    if (H < 1) throw std::invalid_argument("et_terms: H must be positive");
    EtTerms out;
    out.main = (d - c) / kTwoPi * static_cast<double>(angles.size());
    out.char_sums.assign(H, 0.0);
    std::vector<long double> re(H, 0), im(H, 0);
    for (double theta : angles) {
        if (!std::isfinite(theta)) throw std::invalid_argument("et_terms: non-finite angle");
        if (in_arc(theta, c, d)) ++out.count;
        for (int h = 1; h <= H; ++h) {
            re[h - 1] += std::cos(static_cast<long double>(h) * theta);
            im[h - 1] += std::sin(static_cast<long double>(h) * theta);
        }
    }
    for (int h = 0; h < H; ++h) out.char_sums[h] = static_cast<double>(std::hypot(re[h], im[h]));
    out.exact_discrepancy = std::abs(static_cast<double>(out.count) - out.main);
    return out;
}

std::vector<double> solution_angles(i64 N, const PrimeTables& tables)
{
    require_in_table(N, tables, "solution_angles");
    std::vector<double> out;
    if (N < 3) return out;
    for (i64 p : primes_in(1, N - 1, tables)) {
        for (const auto& alpha : representations(N - p, tables)) out.push_back(alpha.arg());
    }
    return out;
}

std::map<ResidueClass, i64> residue_counts(i64 N, i64 k, const PrimeTables& tables, unsigned workers)
{
    if (k < 1 || k > 20) throw std::invalid_argument("residue_counts: k must be in [1, 20]");
    require_in_table(N, tables, "residue_counts");
    std::map<ResidueClass, i64> counts;
    for (i64 r = 0; r < k; ++r)
        for (i64 s = 0; s < k; ++s) counts[{r, s}] = 0;
    if (N < 3) return counts;

    const auto primes = primes_in(1, N - 1, tables);
    const auto parts = map_chunks<std::vector<i64>>(
        static_cast<i64>(primes.size()), workers, [&](i64 lo, i64 hi) {
            std::vector<i64> local(static_cast<std::size_t>(k * k), 0);
            for (i64 j = lo; j < hi; ++j) {
                for (const auto& alpha : representations(N - primes[j], tables)) {
                    const i64 r = ((alpha.re % k) + k) % k;
                    const i64 s = ((alpha.im % k) + k) % k;
                    ++local[r * k + s];
                }
            }
            return local;
        });
    for (const auto& local : parts) {
        for (i64 r = 0; r < k; ++r)
            for (i64 s = 0; s < k; ++s) counts[{r, s}] += local[r * k + s];
    }
    return counts;
}

std::vector<CountReport> theorem1_report(i64 N, std::span<const SectorQuery> queries, i64 p_cut,
                                         const PrimeTables& tables, unsigned workers)
{
    if (N < 3) throw std::invalid_argument("theorem1_report: N must be at least 3");
    const double C = singular_series(N, p_cut, tables);
    const double scale = static_cast<double>(N) / std::log(static_cast<double>(N)) * C;
    std::vector<CountReport> rows;
    for (const auto& q : queries) {
        CountReport r;
        r.query = q;
        r.empirical = count_solutions(N, q, tables, workers);
        r.main_term = (q.b - q.a) * (q.d - q.c) / kTwoPi * scale;
        r.relative_deviation = (static_cast<double>(r.empirical) - r.main_term) / r.main_term;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace eqd
