// linnik.hpp
//
// The equation p + N(alpha) = N with p prime and alpha in Z[i]: exact
// sector-restricted solution counts, the singular series C(N), the averaged
// character sum sum_{p<N} f_h(N-p), Erdos-Turan ingredients and residue
// class counts of alpha modulo k.

#ifndef EQUIDIST_LINNIK_HPP
#define EQUIDIST_LINNIK_HPP

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "equidist/gaussian.hpp"
#include "equidist/numtheory.hpp"

namespace eqd {

/// aN < p <= bN and c < arg(alpha) <= d.
struct SectorQuery {
    double a = 0.0;
    double b = 1.0;
    double c = 0.0;
    double d = kTwoPi;

    /// Throws std::invalid_argument unless 0 <= a < b <= 1 and 0 <= c < d <= 2pi.
    void validate() const;
};

struct CountReport {
    SectorQuery query;
    i64 empirical = 0;
    double main_term = 0.0;
    double relative_deviation = 0.0;
};

/// #{(p, alpha): p prime, p < N, aN < p <= bN, N(alpha) = N - p, c < arg(alpha) <= d}.
i64 count_solutions(i64 N, const SectorQuery& q, const PrimeTables& tables, unsigned workers = 1);

/// C(N) with the Euler product over odd primes truncated at p_cut.
double singular_series(i64 N, i64 p_cut, const PrimeTables& tables);

/// sum_{p < N} f_h(N - p).
double theorem2_sum(i64 N, int h, const PrimeTables& tables, unsigned workers = 1);

struct EtTerms {
    double main = 0.0;                ///< (d - c)/(2 pi) * #A
    i64 count = 0;                    ///< #{theta in (c, d]}
    std::vector<double> char_sums;    ///< char_sums[h-1] = |sum e^{i h theta}|, h = 1..H
    double exact_discrepancy = 0.0;   ///< |count - main|
};

EtTerms et_terms(std::span<const double> angles, double c, double d, int H);

/// Arguments of every alpha over all solutions of p + N(alpha) = N, in
/// order of increasing p and then increasing alpha.
std::vector<double> solution_angles(i64 N, const PrimeTables& tables);

using ResidueClass = std::pair<i64, i64>;

/// Counts of alpha mod k over all solutions, keyed by (re mod k, im mod k);
/// every one of the k^2 classes is present.
std::map<ResidueClass, i64> residue_counts(i64 N, i64 k, const PrimeTables& tables,
                                           unsigned workers = 1);

std::vector<CountReport> theorem1_report(i64 N, std::span<const SectorQuery> queries, i64 p_cut,
                                         const PrimeTables& tables, unsigned workers = 1);

}  // namespace eqd

#endif
