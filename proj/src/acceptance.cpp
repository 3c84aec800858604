#include "equidist/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "equidist/chatelet.hpp"
#include "equidist/gaussian.hpp"
#include "equidist/linnik.hpp"
#include "equidist/quad_fields.hpp"
#include "equidist/table.hpp"

namespace eqd {

namespace {

constexpr i64 kSieve = 2'000'000;
const QuarticForm kPhi5(1, 1, 1, 1, 1);

// Collects checks; the first failure is kept for the report.
struct Tally {
    i64 checks = 0;
    i64 failures = 0;
    std::string first;

    void expect(bool ok, const std::string& what)
    {
        ++checks;
        if (ok) return;
        if (failures++ == 0) first = what;
    }
    template <class F>
    void expect_lazy(bool ok, F&& what)
    {
        ++checks;
        if (ok) return;
        if (failures++ == 0) first = what();
    }

    CriterionResult result(int id, std::string title, std::string extra = {}) const
    {
        std::string d = std::to_string(checks - failures) + "/" + std::to_string(checks) + " checks";
        if (!extra.empty()) d += "; " + extra;
        if (failures) d += "; first failure: " + first;
        return {id, std::move(title), failures == 0, d};
    }
};

std::string fmt(double v) { return format_double(v); }

double unit_real(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

bool near(CharSumValue v, std::complex<double> w, double tol) { return std::abs(v.value() - w) <= tol; }

// ---------------------------------------------------------------------------

CriterionResult golden(const PrimeTables& t, unsigned workers)
{
    Tally k;
    k.expect(near(g_h(2, 4, t), -1.0, 0.0), "g_4(2)");
    k.expect(near(g_h(5, 4, t), -14.0 / 25, 1e-9), "g_4(5)");
    k.expect(std::fabs(f_h(4, 4, t) - 1) <= 1e-9, "f_4(4)");
    k.expect(std::fabs(theorem2_sum(7, 4, t, workers) - 64.0 / 25) <= 1e-9, "theorem2_sum(7,4)");
    k.expect(count_solutions(7, SectorQuery{}, t, workers) == 16, "count_solutions(7)");
    k.expect(enumerate_NB(kPhi5, 1, Region{}, ArgSector{}, t, workers).half() == 20, "enumerate_NB(1)");
    k.expect(std::fabs(lemma_lt2_sum(kPhi5, 1, 1, t, workers) - 712.0 / 25) <= 1e-9, "lemma_lt2_sum(1)");
    k.expect(r2(7, factorize(7, t)) == 2, "r2(7)");
    k.expect(ideal_count_m14(3, factorize(3, t)) == 2, "ideal_count_m14(3)");
    for (int j = 0; j < 4; ++j)
        k.expect(ideal_char_sum_m14(2, j, factorize(2, t)) == GaussianInt(j % 2 ? -1 : 1),
                 "character sum at norm 2, j=" + std::to_string(j));
    return k.result(1, "golden values");
}

CriterionResult multiplicativity(const PrimeTables& t)
{
    constexpr i64 kMax = 10'000;
    Tally k;
    for (int h : {4, 8, 12}) {
        std::vector<CharSumValue> g(kMax + 1);
        for (i64 n = 1; n <= kMax; ++n) g[n] = g_h(n, h, t);
        for (i64 u = 2; u * u <= kMax; ++u)
            for (i64 v = u + 1; u * v <= kMax; ++v) {
                if (gcd(u, v) != 1) continue;
                const auto lhs = g[u * v].value(), rhs = g[u].value() * g[v].value();
                k.expect_lazy(std::abs(lhs - rhs) <= 1e-9, [&] {
                    return "h=" + std::to_string(h) + " u=" + std::to_string(u) + " v=" + std::to_string(v);
                });
            }
    }
    return k.result(2, "multiplicativity of g_h");
}

// 2u sqrt(t) >= k sqrt(B) on integers
bool half_ge(i64 u, i64 k, i64 t, i64 B)
{
    if (u >= 0 && k <= 0) return true;
    if (u < 0 && k >= 0) return false;
    const i64 lhs = 4 * u * u * t, rhs = k * k * B;
    return u >= 0 ? lhs >= rhs : lhs <= rhs;
}

// Region corners in halves.
struct HalfRegion {
    i64 ul, uh, vl, vh;
    Region region() const { return {ul / 2.0, uh / 2.0, vl / 2.0, vh / 2.0}; }
};

i64 five_loop(const QuarticForm& F, i64 B, const HalfRegion& R, double lo, double hi)
{
    i64 count = 0;
    for (i64 t = 1; t <= B; ++t)
        for (i64 u = -B; u <= B; ++u) {
            if (!half_ge(u, R.ul, t, B) || !half_ge(-u, -R.uh, t, B)) continue;
            for (i64 v = -B; v <= B; ++v) {
                if (!half_ge(v, R.vl, t, B) || !half_ge(-v, -R.vh, t, B)) continue;
                if (gcd(u, v) != 1) continue;
                const i128 n = i128{t} * t * F.eval(u, v);
                if (n <= 0) continue;
                const i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
                for (i64 x = -r - 1; x <= r + 1; ++x) {
                    i64 y = 0;
                    const i128 rest = n - i128{x} * x;
                    if (rest < 0 || !is_square(static_cast<i64>(rest), &y)) continue;
                    for (i64 yy : {y, -y}) {
                        if (gcd(t, gcd(x, yy)) == 1 && in_arc(GaussianInt(x, yy).arg(), lo, hi)) ++count;
                        if (y == 0) break;
                    }
                }
            }
        }
    return count;
}

constexpr long double kRt2 = 1.41421356237309504880168872420969808L;

// Every element of norm +-n in a box, moved into [sqrt n, eps sqrt n) by
// powers of eps; exact ties at sqrt n are decided on integers.
std::set<RealQuadInt> window_scan(i64 n)
{
    std::set<RealQuadInt> out;
    const i64 r = static_cast<i64>(3 * std::sqrt(static_cast<double>(n))) + 3;
    const long double lo = std::sqrt(static_cast<long double>(n));
    const long double hi = lo * (1 + kRt2);
    auto val = [](RealQuadInt z) { return z.x + kRt2 * z.y; };
    auto is_root = [n](RealQuadInt z) {
        return z.x * z.y == 0 && z.x >= 0 && z.y >= 0 && z.x * z.x + 2 * z.y * z.y == n;
    };
    auto down = [](RealQuadInt z) { return RealQuadInt{2 * z.y - z.x, z.x - z.y}; };
    auto up = [](RealQuadInt z) { return RealQuadInt{z.x + 2 * z.y, z.x + z.y}; };
    for (i64 x = -r; x <= r; ++x)
        for (i64 y = -r; y <= r; ++y) {
            const i64 N = x * x - 2 * y * y;
            if (N != n && N != -n) continue;
            RealQuadInt b{x, y};
            if (val(b) < 0) b = {-b.x, -b.y};
            while ((val(b) >= hi || is_root(down(b))) && !is_root(b)) b = down(b);
            while (val(b) < lo && !is_root(b)) b = up(b);
            out.insert(b);
        }
    return out;
}

CriterionResult oracles(const PrimeTables& t, unsigned workers)
{
    Tally k;

    constexpr i64 kReps = 10'000;
    std::vector<std::vector<GaussianInt>> scan(kReps + 1);
    for (i64 x = -100; x <= 100; ++x)
        for (i64 y = -100; y <= 100; ++y)
            if (const i64 n = x * x + y * y; n >= 1 && n <= kReps) scan[n].emplace_back(x, y);
    for (i64 n = 1; n <= kReps; ++n) {
        auto got = representations(n, t);
        std::sort(got.begin(), got.end());
        std::sort(scan[n].begin(), scan[n].end());
        k.expect_lazy(got == scan[n], [&] { return "representations(" + std::to_string(n) + ")"; });
    }

    const std::vector<QuarticForm> forms{kPhi5, {1, 0, 0, 0, -2}, {3, -1, 4, 1, -5}, {2, 0, 0, 7, 0}, {0, 1, 0, 0, 6}};
    for (std::size_t f = 0; f < forms.size(); ++f)
        for (i64 p = 2; p <= 200; ++p) {
            if (!t.is_prime(p)) continue;
            k.expect_lazy(Rational{projective_root_count(forms[f], p), 1} == rho_literal(forms[f], p),
                          [&] { return "rho " + forms[f].to_string() + " p=" + std::to_string(p); });
        }

    const std::vector<QuarticForm> nb_forms{kPhi5, {1, 0, 0, 0, -2}};
    const std::vector<HalfRegion> regions{{-2, 2, -2, 2}, {0, 2, 0, 2}, {-1, 2, -2, 1}};
    const std::vector<std::pair<double, double>> sectors{{0, kTwoPi}, {0.3, 2.1}, {4.0, kTwoPi}};
    for (const auto& F : nb_forms)
        for (i64 B : {1, 2, 7, 20, 50})
            for (const auto& R : regions)
                for (const auto& [lo, hi] : sectors) {
                    const i64 fast = enumerate_NB(F, static_cast<double>(B), R.region(), {lo, hi}, t, workers).tuples;
                    k.expect_lazy(fast == five_loop(F, B, R, lo, hi), [&] {
                        return "enumerate_NB " + F.to_string() + " B=" + std::to_string(B);
                    });
                }

    for (i64 n = 1; n <= 1000; ++n) {
        std::set<RealQuadInt> got;
        for (const auto& I : ideals_of_norm_z2(n)) got.insert(I.generator);
        k.expect_lazy(got == window_scan(n), [&] { return "ideals_of_norm_z2(" + std::to_string(n) + ")"; });
    }
    return k.result(3, "oracle equivalence");
}

CriterionResult symmetry(const PrimeTables& t, unsigned workers)
{
    Tally k;
    std::mt19937_64 rng(20240601);
    for (int s = 0; s < 100; ++s) {
        const i64 N = 3 + static_cast<i64>(rng() % 9998);
        const double c = unit_real(rng) * 1.4 * M_PI;
        const double d = c + (0.01 + unit_real(rng)) / 1.01 * (1.5 * M_PI - c);
        const i64 a = count_solutions(N, {0, 1, c, d}, t, workers);
        const i64 b = count_solutions(N, {0, 1, c + kHalfPi, d + kHalfPi}, t, workers);
        k.expect_lazy(a == b, [&] { return "rotation N=" + std::to_string(N); });
    }
    std::string extra;
    for (double B : {100.0, 1000.0}) {
        const double s1 = class_char_sum_m14(kPhi5, B, 1, t, workers);
        const double s3 = class_char_sum_m14(kPhi5, B, 3, t, workers);
        k.expect(s1 == s3, "conjugate characters at B=" + fmt(B));
        extra += (extra.empty() ? "" : ", ") + std::string("cgc(B=") + fmt(B) + ")=" + fmt(s1);
    }
    return k.result(4, "exact symmetries", extra);
}

CriterionResult identities(const PrimeTables& t)
{
    Tally k;
    constexpr i64 kMax = 100'000;
    std::vector<i64> chi_sum(kMax + 1, 0);
    for (i64 d = 1; d <= kMax; ++d)
        if (const int c = chi4(d); c != 0)
            for (i64 m = d; m <= kMax; m += d) chi_sum[m] += c;
    for (i64 n = 1; n <= kMax; ++n) {
        const auto f = factorize(n, t);
        i64 forms = 0;
        for (int j = 0; j < 4; ++j) forms += reps_by_form56(j, n);
        k.expect_lazy(forms == 2 * ideal_count_m14(n, f), [&] { return "two classes n=" + std::to_string(n); });
        k.expect_lazy(static_cast<i64>(representations(n, f).size()) == 4 * chi_sum[n],
                      [&] { return "representation count n=" + std::to_string(n); });
    }

    std::mt19937_64 rng(77);
    for (int s = 0; s < 1000;) {
        const i64 x = static_cast<i64>(rng() % 20001) - 10000;
        const i64 y = static_cast<i64>(rng() % 20001) - 10000;
        if (x == 0 && y == 0) continue;
        const RealQuadInt b{x, y};
        const auto v = gross_char_z2(b).value();
        k.expect(std::abs(v - gross_char_z2(b * kFundamentalUnit).value()) <= 1e-9 &&
                     std::abs(v - gross_char_z2(RealQuadInt{-x, -y}).value()) <= 1e-9,
                 "unit invariance at " + std::to_string(x) + "+" + std::to_string(y) + "sqrt2");
        ++s;
    }

    for (int s = 0; s < 1000;) {
        const i64 tt = 1 + static_cast<i64>(rng() % 400);
        const i64 u = static_cast<i64>(rng() % 41) - 20, v = static_cast<i64>(rng() % 41) - 20;
        if (gcd(u, v) != 1 || primary_mu_list(tt, t).empty()) continue;
        const i64 n = narrow(kPhi5.eval(u, v));
        const int h = 1 + static_cast<int>(rng() % 4);
        const auto a = lt2_inner_sum(tt, n, h, t, InnerSumPath::MuDecomposition);
        const auto b = lt2_inner_sum(tt, n, h, t, InnerSumPath::Direct);
        k.expect_lazy(std::abs(a - b) <= 1e-8, [&] {
            return "mu identity t=" + std::to_string(tt) + " n=" + std::to_string(n);
        });
        ++s;
    }
    return k.result(5, "identities");
}

CriterionResult inequality(const PrimeTables& t)
{
    Tally k;
    for (i64 p = 5; p <= 10'000; p += 4) {
        if (!t.is_prime(p)) continue;
        for (int h : {4, 8}) {
            const double rhs = 1.5 + 0.25 * g_h(p, 2 * h, t).re + 1e-9;
            k.expect_lazy(f_h(p, h, t) <= rhs, [&] { return "p=" + std::to_string(p) + " h=" + std::to_string(h); });
        }
    }
    return k.result(6, "f_h(p) <= 3/2 + Re g_2h(p)/4");
}

CriterionResult trends(const PrimeTables& t, unsigned workers)
{
    Tally k;
    std::ostringstream ex;

    std::vector<double> t2;
    for (i64 N : {10'000, 100'000, 1'000'000}) {
        const double ln = std::log(static_cast<double>(N));
        t2.push_back(theorem2_sum(N, 4, t, workers) * std::pow(ln, 1.25) / static_cast<double>(N));
    }
    for (std::size_t i = 1; i < t2.size(); ++i) k.expect(t2[i] <= 1.1 * t2[i - 1], "theorem2 trend");
    ex << "theorem2 " << fmt(t2[0]) << " " << fmt(t2[1]) << " " << fmt(t2[2]);

    std::vector<double> lam;
    for (i64 x : {10'000, 100'000, 1'000'000}) lam.push_back(lambda_gross_sum(x, 1, t).abs() / static_cast<double>(x));
    for (std::size_t i = 1; i < lam.size(); ++i) k.expect(lam[i] < lam[i - 1], "lambda_gross_sum trend");
    ex << "; lambda " << fmt(lam[0]) << " " << fmt(lam[1]) << " " << fmt(lam[2]);

    const auto s = s_sums(kPhi5, 1'000'000, 1, t);
    const double ll = std::log(std::log(1e6));
    k.expect(std::fabs(s.s1 - ll) <= 3, "S1 against loglog B");
    k.expect(std::fabs(s.s2 - s.s1 / 2) <= 2, "S2 against S1/2");
    ex << "; S1 " << fmt(s.s1) << " S2 " << fmt(s.s2);

    const i64 N = 1'000'003;
    const i64 a = count_solutions(N, {0, 1, 0, M_PI / 8}, t, workers);
    const i64 b = count_solutions(N, {0, 1, M_PI / 8, M_PI / 4}, t, workers);
    k.expect(b > 0 && std::fabs(static_cast<double>(a) / static_cast<double>(b) - 1) <= 0.03, "sub-arc counts");
    ex << "; arcs " << a << " " << b;

    const auto cls = prime_class_distribution(100'000, t);
    const double total = static_cast<double>(cls[0] + cls[1] + cls[2]);
    const double share[3] = {0.25, 0.25, 0.5};
    for (int j = 0; j < 3; ++j)
        k.expect(total > 0 && std::fabs(static_cast<double>(cls[j]) / total / share[j] - 1) <= 0.05,
                 "prime class bucket " + std::to_string(j));
    ex << "; classes " << cls[0] << " " << cls[1] << " " << cls[2];
    return k.result(7, "trend checks", ex.str());
}

CriterionResult ratio(const PrimeTables& t, unsigned workers)
{
    Tally k;
    const Region r1{0, 1, 0, 1}, r2{};
    const double target = sigma_infinity(kPhi5, r1, 1000) / sigma_infinity(kPhi5, r2, 1000);
    std::vector<double> dev;
    std::ostringstream ex;
    ex << "target " << fmt(target);
    for (double B : {1e4, 1e5}) {
        const double n1 = enumerate_NB(kPhi5, B, r1, {}, t, workers).half();
        const double n2 = enumerate_NB(kPhi5, B, r2, {}, t, workers).half();
        dev.push_back(std::fabs(n1 / n2 / target - 1));
        k.expect(dev.back() <= 0.15, "ratio within 15% at B=" + fmt(B));
        ex << "; B=" << fmt(B) << " ratio " << fmt(n1 / n2);
    }
    k.expect(dev[1] <= dev[0], "deviation non-increasing");
    return k.result(8, "region ratio against sigma_infinity", ex.str());
}

}  // namespace

std::vector<CriterionResult> run_criteria(unsigned workers)
{
    const PrimeTables t(kSieve);
    return {golden(t, workers), multiplicativity(t), oracles(t, workers), symmetry(t, workers),
            identities(t),      inequality(t),      trends(t, workers),  ratio(t, workers)};
}

std::vector<CriterionResult> run_acceptance(unsigned workers)
{
    auto results = run_criteria(workers);
    const unsigned other = workers == 8 ? 1 : 8;
    const bool same = format_report(results) == format_report(run_criteria(other));
    results.push_back({9, "determinism across worker counts", same && all_passed(results),
                       same ? "reports identical" : "reports differ"});
    return results;
}

std::string format_report(const std::vector<CriterionResult>& results)
{
    std::string out;
    for (const auto& r : results)
        out += "criterion " + std::to_string(r.id) + " " + (r.pass ? "PASS" : "FAIL") + " " + r.title + ": " +
               r.detail + "\n";
    return out;
}

bool all_passed(const std::vector<CriterionResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
}

}  // namespace eqd
