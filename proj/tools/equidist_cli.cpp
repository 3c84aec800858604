// equidist: command-line driver. Every subcommand prints one table (CSV or
// JSONL); `verify` prints the acceptance report instead.
//
//   equidist theorem2 --n 7 --h 4
//   equidist chatelet-count --form 1,1,1,1,1 --big-b 1 --format jsonl
//   equidist verify --workers 8
//
// Exit status: 0 success, 1 computation error, 2 usage error.

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <span>
#include <string>

#include <CLI11.hpp>

#include "equidist/acceptance.hpp"
#include "equidist/chatelet.hpp"
#include "equidist/linnik.hpp"
#include "equidist/quad_fields.hpp"
#include "equidist/table.hpp"

using namespace eqd;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Settings shared by every subcommand.
struct RunConfig {
    std::string format = "csv";
    unsigned workers = 1;
    i64 limit = 0;  // 0: sized to the command
    std::string out;
};

class Context {
  public:
    explicit Context(const RunConfig& cfg) : cfg_(cfg) {}

    unsigned workers() const { return cfg_.workers; }

    // Sieve covering `need`; checked against --limit before anything is built.
    const PrimeTables& tables(i64 need)
    {
        if (cfg_.limit != 0 && cfg_.limit < need)
            throw usage_error("--limit " + std::to_string(cfg_.limit) + " is below the " + std::to_string(need) +
                              " this command needs; raise --limit or shrink the input");
        const i64 size = cfg_.limit != 0 ? cfg_.limit : std::max<i64>(need, 1000);
        if (size > PrimeTables::kDefaultCeiling)
            throw usage_error("sieve size " + std::to_string(size) + " exceeds the ceiling " +
                              std::to_string(PrimeTables::kDefaultCeiling));
        tables_ = std::make_unique<PrimeTables>(size);
        return *tables_;
    }

  private:
    const RunConfig& cfg_;
    std::unique_ptr<PrimeTables> tables_;
};

QuarticForm parse_form(const std::string& s)
{
    try {
        return QuarticForm::parse(s);
    } catch (const std::invalid_argument& e) {
        throw usage_error(std::string("--form: ") + e.what());
    }
}

void require(bool ok, const std::string& msg)
{
    if (!ok) throw usage_error(msg);
}

// 2pi typed to 12 digits lands just above 2pi.
double snap_angle(double a) { return a > kTwoPi && a <= kTwoPi + 1e-9 ? kTwoPi : a; }

i64 ceil_limit(double B) { return static_cast<i64>(std::ceil(std::min(B, 1e18))); }

using Runner = std::function<Table(Context&)>;

struct RegionOpts {
    Region r;
    void add(CLI::App* c)
    {
        c->add_option("--u-lo", r.u_lo, "region u lower edge")->capture_default_str();
        c->add_option("--u-hi", r.u_hi, "region u upper edge")->capture_default_str();
        c->add_option("--v-lo", r.v_lo, "region v lower edge")->capture_default_str();
        c->add_option("--v-hi", r.v_hi, "region v upper edge")->capture_default_str();
    }
    void validate() const
    {
        try {
            r.validate();
        } catch (const std::invalid_argument& e) {
            throw usage_error(e.what());
        }
    }
};

// ---------------------------------------------------------------------------
// Subcommands. Each registers its flags and returns the runner.

Runner linnik_count(CLI::App* c)
{
    auto n = std::make_shared<i64>(0);
    auto p_cut = std::make_shared<i64>(10000);
    auto q = std::make_shared<SectorQuery>();
    c->add_option("--n", *n, "N")->required();
    c->add_option("--a", q->a, "p > aN")->capture_default_str();
    c->add_option("--b", q->b, "p <= bN")->capture_default_str();
    c->add_option("--c", q->c, "arg lower end, radians")->capture_default_str();
    c->add_option("--d", q->d, "arg upper end, radians")->capture_default_str();
    c->add_option("--p-cut", *p_cut, "singular series cutoff")->capture_default_str();
    return [=](Context& ctx) {
        require(*n >= 3, "--n must be at least 3");
        require(*p_cut >= 3, "--p-cut must be at least 3");
        q->c = snap_angle(q->c);
        q->d = snap_angle(q->d);
        try {
            q->validate();
        } catch (const std::invalid_argument& e) {
            throw usage_error(e.what());
        }
        const auto& t = ctx.tables(std::max(*n, *p_cut));
        const auto rep = theorem1_report(*n, std::span(q.get(), 1), *p_cut, t, ctx.workers()).front();
        Table tab{{"N", "a", "b", "c", "d", "empirical", "main_term", "relative_deviation"}, {}};
        tab.add({*n, q->a, q->b, q->c, q->d, rep.empirical, rep.main_term, rep.relative_deviation});
        return tab;
    };
}

Runner singular_series_cmd(CLI::App* c)
{
    auto n = std::make_shared<i64>(0);
    auto p_cut = std::make_shared<i64>(10000);
    c->add_option("--n", *n, "N")->required();
    c->add_option("--p-cut", *p_cut, "Euler product cutoff")->capture_default_str();
    return [=](Context& ctx) {
        require(*n >= 1, "--n must be positive");
        require(*p_cut >= 3, "--p-cut must be at least 3");
        const auto& t = ctx.tables(*p_cut);
        Table tab{{"N", "p_cut", "C"}, {}};
        tab.add({*n, *p_cut, singular_series(*n, *p_cut, t)});
        return tab;
    };
}

Runner theorem2(CLI::App* c)
{
    auto n = std::make_shared<i64>(0);
    auto h = std::make_shared<int>(4);
    c->add_option("--n", *n, "N")->required();
    c->add_option("--h", *h, "character exponent")->capture_default_str();
    return [=](Context& ctx) {
        require(*n >= 2, "--n must be at least 2");
        const auto& t = ctx.tables(*n);
        Table tab{{"N", "h", "sum"}, {}};
        tab.add({*n, static_cast<i64>(*h), theorem2_sum(*n, *h, t, ctx.workers())});
        return tab;
    };
}

Runner et_terms_cmd(CLI::App* c)
{
    auto n = std::make_shared<i64>(0);
    auto lo = std::make_shared<double>(0.0);
    auto hi = std::make_shared<double>(kHalfPi);
    auto H = std::make_shared<int>(10);
    c->add_option("--n", *n, "N")->required();
    c->add_option("--c", *lo, "arc lower end, radians")->capture_default_str();
    c->add_option("--d", *hi, "arc upper end, radians")->capture_default_str();
    c->add_option("--big-h", *H, "number of harmonics")->capture_default_str();
    return [=](Context& ctx) {
        require(*n >= 3, "--n must be at least 3");
        require(*H >= 1, "--big-h must be positive");
        *hi = snap_angle(*hi);
        require(0 <= *lo && *lo < *hi && *hi <= kTwoPi, "need 0 <= c < d <= 2pi");
        const auto& t = ctx.tables(*n);
        const auto angles = solution_angles(*n, t);
        const auto e = et_terms(angles, *lo, *hi, *H);
        Table tab{{"N", "c", "d", "count", "main", "exact_discrepancy", "h", "char_sum"}, {}};
        for (int k = 1; k <= *H; ++k)
            tab.add({*n, *lo, *hi, e.count, e.main, e.exact_discrepancy, static_cast<i64>(k), e.char_sums[k - 1]});
        return tab;
    };
}

Runner residue_counts_cmd(CLI::App* c)
{
    auto n = std::make_shared<i64>(0);
    auto k = std::make_shared<i64>(0);
    c->add_option("--n", *n, "N")->required();
    c->add_option("--k", *k, "modulus")->required();
    return [=](Context& ctx) {
        require(*n >= 3, "--n must be at least 3");
        require(*k >= 1 && *k <= 1000, "--k must lie in [1, 1000]");
        const auto& t = ctx.tables(*n);
        Table tab{{"N", "k", "re", "im", "count"}, {}};
        for (const auto& [cls, cnt] : residue_counts(*n, *k, t, ctx.workers()))
            tab.add({*n, *k, cls.first, cls.second, cnt});
        return tab;
    };
}

Runner rho_table(CLI::App* c)
{
    auto form = std::make_shared<std::string>();
    auto p_max = std::make_shared<i64>(100);
    c->add_option("--form", *form, "f4,f3,f2,f1,f0")->required();
    c->add_option("--p-max", *p_max, "largest prime")->capture_default_str();
    return [=](Context& ctx) {
        const auto F = parse_form(*form);
        require(*p_max >= 2, "--p-max must be at least 2");
        const auto& t = ctx.tables(*p_max);
        Table tab{{"p", "rho_num", "rho_den", "rho"}, {}};
        for (i64 p : primes_in(2, *p_max, t)) {
            const auto r = rho(F, p);
            tab.add({p, r.num, r.den, r.value()});
        }
        return tab;
    };
}

Runner chatelet_count(CLI::App* c)
{
    auto form = std::make_shared<std::string>();
    auto B = std::make_shared<double>(0.0);
    auto reg = std::make_shared<RegionOpts>();
    auto sec = std::make_shared<ArgSector>();
    c->add_option("--form", *form, "f4,f3,f2,f1,f0")->required();
    c->add_option("--big-b", *B, "height bound B")->required();
    reg->add(c);
    c->add_option("--lo", sec->lo, "arg lower end, radians")->capture_default_str();
    c->add_option("--hi", sec->hi, "arg upper end, radians")->capture_default_str();
    return [=](Context& ctx) {
        const auto F = parse_form(*form);
        require(*B >= 0, "--big-b must be non-negative");
        reg->validate();
        sec->hi = snap_angle(sec->hi);
        require(0 <= sec->lo && sec->lo < sec->hi && sec->hi <= kTwoPi, "need 0 <= lo < hi <= 2pi");
        const auto& t = ctx.tables(ceil_limit(*B));
        const auto r = enumerate_NB(F, *B, reg->r, *sec, t, ctx.workers());
        Table tab{{"form", "B", "tuples", "N_B"}, {}};
        tab.add({F.to_string(), *B, r.tuples, r.half()});
        return tab;
    };
}

Runner lt2_sum(CLI::App* c)
{
    auto form = std::make_shared<std::string>();
    auto B = std::make_shared<double>(0.0);
    auto h = std::make_shared<int>(1);
    auto path = std::make_shared<std::string>("mu");
    c->add_option("--form", *form, "f4,f3,f2,f1,f0")->required();
    c->add_option("--big-b", *B, "height bound B")->required();
    c->add_option("--h", *h, "character exponent")->capture_default_str();
    c->add_option("--path", *path, "inner sum: mu or direct")
        ->check(CLI::IsMember({"mu", "direct"}))
        ->capture_default_str();
    return [=](Context& ctx) {
        const auto F = parse_form(*form);
        require(*B >= 0, "--big-b must be non-negative");
        require(*h >= 1, "--h must be positive");
        const auto& t = ctx.tables(ceil_limit(*B));
        const auto p = *path == "mu" ? InnerSumPath::MuDecomposition : InnerSumPath::Direct;
        Table tab{{"form", "B", "h", "sum", "trivial"}, {}};
        tab.add({F.to_string(), *B, static_cast<i64>(*h), lemma_lt2_sum(F, *B, *h, t, ctx.workers(), p),
                 lemma_lt2_trivial(F, *B, t, ctx.workers())});
        return tab;
    };
}

Runner s_sums_cmd(CLI::App* c)
{
    auto form = std::make_shared<std::string>();
    auto B = std::make_shared<i64>(0);
    auto h = std::make_shared<int>(1);
    c->add_option("--form", *form, "f4,f3,f2,f1,f0")->required();
    c->add_option("--big-b", *B, "prime bound B")->required();
    c->add_option("--h", *h, "character exponent")->capture_default_str();
    return [=](Context& ctx) {
        const auto F = parse_form(*form);
        require(*B >= 2, "--big-b must be at least 2");
        const auto& t = ctx.tables(*B);
        const auto s = s_sums(F, *B, *h, t);
        Table tab{{"form", "B", "h", "S1", "S2", "S3_re", "S3_im"}, {}};
        tab.add({F.to_string(), *B, static_cast<i64>(*h), s.s1, s.s2, s.s3.re, s.s3.im});
        return tab;
    };
}

Runner sigma_inf(CLI::App* c)
{
    auto form = std::make_shared<std::string>();
    auto reg = std::make_shared<RegionOpts>();
    auto res = std::make_shared<int>(1000);
    c->add_option("--form", *form, "f4,f3,f2,f1,f0")->required();
    reg->add(c);
    c->add_option("--resolution", *res, "grid points per side")->capture_default_str();
    return [=](Context&) {
        const auto F = parse_form(*form);
        reg->validate();
        require(*res >= 100, "--resolution must be at least 100");
        const Region& r = reg->r;
        Table tab{{"form", "u_lo", "u_hi", "v_lo", "v_hi", "resolution", "sigma"}, {}};
        tab.add({F.to_string(), r.u_lo, r.u_hi, r.v_lo, r.v_hi, static_cast<i64>(*res), sigma_infinity(F, r, *res)});
        return tab;
    };
}

Runner z2_ideals(CLI::App* c)
{
    auto n = std::make_shared<i64>(0);
    c->add_option("--n", *n, "norm")->required();
    return [=](Context&) {
        require(*n >= 1 && *n <= 1'000'000'000'000, "--n must lie in [1, 1e12]");
        Table tab{{"n", "x", "y", "chi_re", "chi_im"}, {}};
        for (const auto& I : ideals_of_norm_z2(*n)) {
            const auto chi = gross_char_z2(I);
            tab.add({*n, I.generator.x, I.generator.y, chi.re, chi.im});
        }
        return tab;
    };
}

Runner z2_charsum(CLI::App* c)
{
    auto form = std::make_shared<std::string>();
    auto B = std::make_shared<double>(0.0);
    auto h = std::make_shared<int>(1);
    auto path = std::make_shared<std::string>("fast");
    c->add_option("--form", *form, "f4,f3,f2,f1,f0")->required();
    c->add_option("--big-b", *B, "height bound B")->required();
    c->add_option("--h", *h, "character exponent")->capture_default_str();
    c->add_option("--path", *path, "inner sum: fast or direct")
        ->check(CLI::IsMember({"fast", "direct"}))
        ->capture_default_str();
    return [=](Context& ctx) {
        const auto F = parse_form(*form);
        require(*B >= 0, "--big-b must be non-negative");
        require(*h >= 1, "--h must be positive");
        const auto& t = ctx.tables(ceil_limit(*B));
        const auto p = *path == "fast" ? SumPath::Fast : SumPath::Direct;
        Table tab{{"form", "B", "h", "sum"}, {}};
        tab.add({F.to_string(), *B, static_cast<i64>(*h), lemma_z2_sum(F, *B, *h, t, ctx.workers(), p)});
        return tab;
    };
}

Runner m14_identity(CLI::App* c)
{
    auto n_max = std::make_shared<i64>(100);
    c->add_option("--n-max", *n_max, "largest norm")->capture_default_str();
    return [=](Context& ctx) {
        require(*n_max >= 1 && *n_max <= 10'000'000, "--n-max must lie in [1, 1e7]");
        const auto& t = ctx.tables(*n_max);
        Table tab{{"n", "f0", "f1", "f2", "f3", "ideal_count", "principal_ideals", "holds"}, {}};
        for (i64 n = 1; n <= *n_max; ++n) {
            const auto f = factorize(n, t);
            std::array<i64, 4> r{};
            for (int j = 0; j < 4; ++j) r[j] = reps_by_form56(j, n);
            const i64 ic = ideal_count_m14(n, f);
            const bool holds = r[0] + r[1] + r[2] + r[3] == 2 * ic;
            tab.add({n, r[0], r[1], r[2], r[3], ic, principal_ideal_count_m14(n, f), static_cast<i64>(holds)});
        }
        return tab;
    };
}

Runner cgc_sum(CLI::App* c)
{
    auto form = std::make_shared<std::string>();
    auto B = std::make_shared<double>(0.0);
    auto j = std::make_shared<int>(1);
    c->add_option("--form", *form, "f4,f3,f2,f1,f0")->required();
    c->add_option("--big-b", *B, "height bound B")->required();
    c->add_option("--j", *j, "class group character, 1..3")->check(CLI::Range(1, 3))->capture_default_str();
    return [=](Context& ctx) {
        const auto F = parse_form(*form);
        require(*B >= 0, "--big-b must be non-negative");
        const auto& t = ctx.tables(ceil_limit(*B));
        Table tab{{"form", "B", "j", "sum"}, {}};
        tab.add({F.to_string(), *B, static_cast<i64>(*j), class_char_sum_m14(F, *B, *j, t, ctx.workers())});
        return tab;
    };
}

Runner prime_classes(CLI::App* c)
{
    auto x = std::make_shared<i64>(0);
    c->add_option("--x", *x, "prime bound")->required();
    return [=](Context& ctx) {
        require(*x >= 2, "--x must be at least 2");
        const auto& t = ctx.tables(*x);
        const auto b = prime_class_distribution(*x, t);
        Table tab{{"x", "f0", "f1", "f2_f3", "total"}, {}};
        tab.add({*x, b[0], b[1], b[2], b[0] + b[1] + b[2]});
        return tab;
    };
}

Runner pnt_gross(CLI::App* c)
{
    auto x = std::make_shared<i64>(0);
    auto k = std::make_shared<i64>(1);
    c->add_option("--x", *x, "norm bound")->required();
    c->add_option("--k", *k, "character exponent (power 4k)")->capture_default_str();
    return [=](Context& ctx) {
        require(*x >= 2, "--x must be at least 2");
        require(*k >= 1, "--k must be positive");
        const auto& t = ctx.tables(*x);
        const auto s = lambda_gross_sum(*x, *k, t);
        Table tab{{"x", "k", "re", "im", "abs_over_x"}, {}};
        tab.add({*x, *k, s.re, s.im, s.abs() / static_cast<double>(*x)});
        return tab;
    };
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Equidistribution experiments over Z[i], Z[sqrt2] and Q(sqrt-14)", "equidist"};
    app.set_help_flag("--help", "print this help and exit");  // -h is taken by --h
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "jsonl"}))->capture_default_str();
    app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
    app.add_option("--limit", cfg.limit, "sieve limit (default: what the command needs)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--out", cfg.out, "write to this file instead of stdout");

    std::map<CLI::App*, Runner> runners;
    auto add = [&](const char* name, const char* help, Runner (*make)(CLI::App*)) {
        auto* sub = app.add_subcommand(name, help);
        runners[sub] = make(sub);
    };
    add("linnik-count", "solutions of p + N(alpha) = N in a sector", linnik_count);
    add("singular-series", "truncated singular series C(N)", singular_series_cmd);
    add("theorem2", "sum over p < N of f_h(N - p)", theorem2);
    add("et-terms", "Erdos-Turan terms for the solution angles", et_terms_cmd);
    add("residue-counts", "solution counts by alpha mod k", residue_counts_cmd);
    add("rho-table", "rho(p) for primes up to p-max", rho_table);
    add("chatelet-count", "N(B) for a quartic form, region and sector", chatelet_count);
    add("lt2-sum", "character sum over the Chatelet box", lt2_sum);
    add("s-sums", "S1, S2, S3 over primes up to B", s_sums_cmd);
    add("sigma-inf", "archimedean density of a region", sigma_inf);
    add("z2-ideals", "ideals of Z[sqrt2] of norm n with their character", z2_ideals);
    add("z2-charsum", "character sum over the box in Z[sqrt2]", z2_charsum);
    add("m14-identity", "form representations against ideal counts in Q(sqrt-14)", m14_identity);
    add("cgc-sum", "class group character sum over the box in Q(sqrt-14)", cgc_sum);
    add("prime-classes", "split primes by ideal class in Q(sqrt-14)", prime_classes);
    add("pnt-gross", "sum of Lambda(alpha) (alpha/|alpha|)^{4k}", pnt_gross);
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "equidist: " << e.what() << " (see --help)\n";
        return 2;
    }

    std::ofstream file;
    if (!cfg.out.empty()) {
        file.open(cfg.out, std::ios::binary);
        if (!file) {
            std::cerr << "equidist: cannot open " << cfg.out << " for writing\n";
            return 1;
        }
    }
    std::ostream& out = cfg.out.empty() ? std::cout : file;

    try {
        if (verify->parsed()) {
            const auto results = run_acceptance(cfg.workers);
            out << format_report(results);
            out.flush();
            if (!out) throw std::runtime_error("write failed");
            return all_passed(results) ? 0 : 1;
        }
        CLI::App* sub = app.get_subcommands().front();
        Context ctx(cfg);
        const Table tab = runners.at(sub)(ctx);
        emit(tab, cfg.format == "csv" ? Format::Csv : Format::Jsonl, out);
    } catch (const usage_error& e) {
        std::cerr << "equidist: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "equidist: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "equidist: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "equidist: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
