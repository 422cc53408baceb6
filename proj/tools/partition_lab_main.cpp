// Command-line front end: sieve audits, partition counts, identity sweeps,
// convergence tables, constants, and the forging constructions, with
// CSV/JSON/plot2col export. All output is deterministic for a fixed argv
// and limit, regardless of --threads.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "partition_lab/partition_lab.hpp"

namespace pl = partition_lab;

namespace {

constexpr const char* kCacheEnvVar = "PARTITION_LAB_SIEVE_CACHE";

unsigned default_threads() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

pl::SieveTable acquire_sieve(pl::u64 needed, unsigned threads) {
    const pl::u64 limit = std::max<pl::u64>(needed, 10);
    if (const char* path = std::getenv(kCacheEnvVar); path && *path) {
        if (auto cached = pl::SieveTable::load_cache(path);
            cached && cached->limit() >= limit)
            return std::move(*cached);
        pl::SieveTable t = pl::SieveTable::build(limit, {.threads = threads});
        t.save_cache(path);
        return t;
    }
    return pl::SieveTable::build(limit, {.threads = threads});
}

struct OutputSink {
    std::ofstream file;
    std::ostream* out = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path, std::ios::binary | std::ios::trunc);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        out = &file;
    }
};

std::optional<pl::PartitionKind> parse_kind(const std::string& name, double c) {
    if (name == "goldbach" || name == "goldbach_g")
        return pl::PartitionKind::goldbach();
    if (name == "goldbach-ordered" || name == "goldbach_ordered_N2" || name == "n2")
        return pl::PartitionKind::goldbach_ordered();
    if (name == "lemoine" || name == "lemoine_l") return pl::PartitionKind::lemoine();
    if (name == "chen" || name == "chen_c") return pl::PartitionKind::chen();
    if (name == "two-squares" || name == "two_squares_q")
        return pl::PartitionKind::two_squares();
    if (name == "glr" || name == "glr_nu") return pl::PartitionKind::glr(c);
    return std::nullopt;
}

int run_verify(const pl::RunConfig& cfg, const pl::SieveTable& t,
               const std::string& identity, pl::u64 from, pl::u64 to,
               double glr_c, const std::vector<pl::u64>& xs, OutputSink& sink) {
    if (identity == "glr_gap") {
        pl::Table table;
        table.name = "glr_gap";
        table.anchor = "Eq.(13)";
        table.columns = {"x", "lhs", "rhs", "difference"};
        std::vector<pl::u64> points = xs;
        if (points.empty()) points = {to};
        for (const pl::u64 x : points) {
            const pl::GlrGapRow row = pl::glr_sum_gap(t, x, glr_c, cfg.threads);
            auto& r = table.add_row();
            r = {pl::cell(row.x), pl::cell(row.lhs), pl::cell(row.rhs),
                 pl::cell(row.difference)};
        }
        pl::write_table(table, cfg, *sink.out, 0, 3);
        return 0;  // trajectory report, never gates
    }

    pl::IdentityId id;
    if (identity == "goldbach_eq7") id = pl::IdentityId::goldbach_eq7;
    else if (identity == "lemoine_eq15") id = pl::IdentityId::lemoine_eq15;
    else if (identity == "chen_eq19") id = pl::IdentityId::chen_eq19;
    else if (identity == "pi21_eq20") id = pl::IdentityId::pi21_eq20;
    else if (identity == "two_squares_eq44") id = pl::IdentityId::two_squares_eq44;
    else throw CLI::ValidationError("--identity", "unknown identity: " + identity);

    const auto reports = pl::sweep_identity(t, id, from, to, cfg.threads);
    pl::Table table;
    table.name = "identity_sweep";
    table.anchor = pl::identity_anchor(id);
    table.columns = {"identity_id", "argument", "lhs", "rhs", "difference"};
    bool all_pass = true;
    for (const auto& r : reports) {
        auto& row = table.add_row();
        row = {pl::cell(pl::identity_name(r.id)), pl::cell(r.argument),
               pl::cell(r.lhs), pl::cell(r.rhs), pl::cell(r.difference)};
        all_pass = all_pass && r.pass;
    }
    pl::write_table(table, cfg, *sink.out, 1, 4);
    std::cerr << "verify " << pl::identity_name(id) << ": " << reports.size()
              << " arguments, " << (all_pass ? "all pass" : "FAILURES") << "\n";
    return all_pass ? 0 : 1;
}

void add_sample_rows(pl::Table& table, const std::vector<pl::AsymptoticSample>& rows) {
    for (const auto& s : rows) {
        auto& r = table.add_row();
        r = {pl::cell(s.x), pl::cell(s.raw), pl::cell(s.main_term),
             pl::cell(s.ratio), pl::cell(s.valid ? "" : s.note)};
    }
}

int run_ratios(const pl::RunConfig& cfg, const pl::SieveTable& t,
               const std::string& kind, const std::vector<pl::u64>& xs,
               OutputSink& sink) {
    pl::Table table;
    table.name = "ratio_table";
    table.columns = {"x", "raw", "main_term", "ratio", "note"};

    if (kind == "goldbach_thm2" || kind == "lemoine_thm3" || kind == "chen_thm5") {
        const pl::SumRatioKind k = kind == "goldbach_thm2"
                                       ? pl::SumRatioKind::goldbach_thm2
                                   : kind == "lemoine_thm3"
                                       ? pl::SumRatioKind::lemoine_thm3
                                       : pl::SumRatioKind::chen_thm5;
        table.anchor = pl::kind_anchor(k);
        add_sample_rows(table, pl::sum_ratio_table(t, k, xs, cfg.threads));
    } else if (kind == "goldbach_cor1" || kind == "lemoine_cor2" ||
               kind == "chen_cor3") {
        const pl::LogSumRatioKind k = kind == "goldbach_cor1"
                                          ? pl::LogSumRatioKind::goldbach_cor1
                                      : kind == "lemoine_cor2"
                                          ? pl::LogSumRatioKind::lemoine_cor2
                                          : pl::LogSumRatioKind::chen_cor3;
        table.anchor = pl::kind_anchor(k);
        add_sample_rows(table, pl::log_sum_ratio_table(t, k, xs, cfg.threads));
    } else if (kind == "goldbach_conj2" || kind == "lemoine_conj17" ||
               kind == "chen_conj33") {
        const pl::HlConjecture k = kind == "goldbach_conj2"
                                       ? pl::HlConjecture::goldbach_conj2
                                   : kind == "lemoine_conj17"
                                       ? pl::HlConjecture::lemoine_conj17
                                       : pl::HlConjecture::chen_conj33;
        table.anchor = pl::kind_anchor(k);
        table.columns = {"n", "hl_ratio", "conjectured_limit", "ratio", "note"};
        const pl::TwinConstant tc =
            pl::twin_constant(t, std::min<pl::u64>(t.limit(), 10'000'000));
        const long double limit_value =
            k == pl::HlConjecture::lemoine_conj17 ? tc.value : 2 * tc.value;
        for (const pl::u64 n : xs) {
            auto& r = table.add_row();
            if (n > t.limit()) {
                r = {pl::cell(n), pl::cell(0.0L), pl::cell(limit_value),
                     pl::cell(0.0L), pl::cell("n exceeds sieve limit")};
                continue;
            }
            try {
                const long double v = pl::hl_point_ratio(t, k, n);
                r = {pl::cell(n), pl::cell(v), pl::cell(limit_value),
                     pl::cell(v / limit_value), pl::cell("")};
            } catch (const std::invalid_argument& e) {
                r = {pl::cell(n), pl::cell(0.0L), pl::cell(limit_value),
                     pl::cell(0.0L), pl::cell(e.what())};
            }
        }
    } else {
        throw CLI::ValidationError("--kind", "unknown ratio kind: " + kind);
    }
    pl::write_table(table, cfg, *sink.out, 0, 3);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "partition-lab: binary additive partition counts, exact identity "
        "sweeps, and asymptotic ratio diagnostics"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags are accepted after the subcommand too

    pl::RunConfig cfg;
    cfg.threads = default_threads();
    pl::u64 limit_flag = 0;
    app.add_option("--limit", limit_flag,
                   "sieve limit (default: smallest limit the command needs)");
    app.add_option("--threads", cfg.threads, "worker threads")
        ->check(CLI::Range(1u, 256u));
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "plot2col"}));
    app.add_option("--output", cfg.output_path, "output file (default stdout)");

    // sieve-audit
    auto* audit = app.add_subcommand("sieve-audit",
                                     "audit the explicit pi(x) and nth-prime bounds");
    pl::u64 audit_from = 355991, audit_to = 0, audit_stride = 997;
    audit->add_option("--from", audit_from, "first x (>= 355991)");
    audit->add_option("--to", audit_to, "last x (default: limit)");
    audit->add_option("--stride", audit_stride, "sample stride");

    // count
    auto* count = app.add_subcommand("count", "partition counts, single or range");
    std::string count_kind;
    pl::u64 count_n = 0, count_from = 0, count_to = 0;
    double count_c = 1.0;
    count->add_option("--kind", count_kind, "partition kind")->required();
    count->add_option("--n", count_n, "single argument");
    count->add_option("--from", count_from, "range start");
    count->add_option("--to", count_to, "range end");
    count->add_option("--C", count_c, "GLR window constant");

    // verify
    auto* verify = app.add_subcommand("verify", "exact identity sweeps");
    std::string verify_id;
    pl::u64 verify_from = 0, verify_to = 10000;
    double verify_c = 1.0;
    std::vector<pl::u64> verify_xs;
    verify->add_option("--identity", verify_id, "identity id")->required();
    verify->add_option("--from", verify_from, "sweep start");
    verify->add_option("--to", verify_to, "sweep end");
    verify->add_option("--C", verify_c, "GLR window constant (glr_gap)");
    verify->add_option("--xs", verify_xs, "evaluation points (glr_gap)")
        ->delimiter(',');

    // ratios
    auto* ratios = app.add_subcommand("ratios", "convergence ratio tables");
    std::string ratio_kind;
    std::vector<pl::u64> ratio_xs;
    ratios->add_option("--kind", ratio_kind, "table kind")->required();
    ratios->add_option("--xs", ratio_xs, "arguments")->required()->delimiter(',');

    // constants
    auto* constants = app.add_subcommand("constants", "twin constant");
    pl::u64 prime_bound = 10'000'000;
    constants->add_option("--prime-bound", prime_bound, "truncation bound");

    // avg-series
    auto* avg = app.add_subcommand("avg-series", "singular series average ratio");
    pl::u64 avg_n = 1'000'000;
    avg->add_option("--n", avg_n, "upper summation bound");

    // two-squares
    auto* twosq = app.add_subcommand("two-squares", "two-squares cumulative average");
    pl::u64 twosq_x = 1'000'001;
    twosq->add_option("--x", twosq_x, "argument, 1 (mod 4)");

    // forge
    auto* forge = app.add_subcommand("forge", "prime-removal constructions");
    std::string forge_variant = "a152451";
    int forge_kmax = 16;
    double forge_c = 1.0;
    std::string removed_out;
    forge->add_option("--variant", forge_variant, "glr | a152451 | a156284");
    forge->add_option("--kmax", forge_kmax, "largest exponent k")->check(CLI::Range(3, 40));
    forge->add_option("--C", forge_c, "GLR window constant");
    forge->add_option("--removed-out", removed_out,
                      "write removed primes, one per line (b-file diffing)");

    // glr
    auto* glr = app.add_subcommand("glr", "empirical least-partner constant");
    pl::u64 glr_xmax = 1'000'000;
    glr->add_option("--xmax", glr_xmax, "scan bound (even)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        OutputSink sink;
        sink.open(cfg.output_path);

        if (audit->parsed()) {
            cfg.command = "sieve-audit";
            cfg.limit = limit_flag ? limit_flag
                                   : std::max<pl::u64>(audit_to, 1'000'000);
            if (audit_to == 0) audit_to = cfg.limit;
            const pl::SieveTable t = acquire_sieve(cfg.limit, cfg.threads);
            const auto rep = t.audit_dusart(audit_from, audit_to, audit_stride);
            pl::Table table;
            table.name = "dusart_audit";
            table.anchor = "Eq.(5)-(6)";
            table.columns = {"check", "where", "value", "lower", "upper"};
            for (const auto& v : rep.pi_violations) {
                auto& r = table.add_row();
                r = {pl::cell("pi"), pl::cell(v.x), pl::cell(v.pi_x),
                     pl::cell(v.lower), pl::cell(v.upper)};
            }
            for (const auto& v : rep.pn_violations) {
                auto& r = table.add_row();
                r = {pl::cell("pn"), pl::cell(v.n), pl::cell(v.p_n),
                     pl::cell(v.lower), pl::cell(v.upper)};
            }
            pl::write_table(table, cfg, *sink.out);
            std::cerr << "pi(x) audit: " << rep.pi_samples << " samples, "
                      << rep.pi_violations.size() << " violations; p_n audit: "
                      << rep.pn_samples << " samples, "
                      << rep.pn_violations.size() << " violations (guard "
                      << static_cast<double>(rep.guard_scale) << ")\n";
            return rep.clean() ? 0 : 1;
        }

        if (count->parsed()) {
            cfg.command = "count";
            const auto kind = parse_kind(count_kind, count_c);
            if (!kind)
                throw CLI::ValidationError("--kind", "unknown kind: " + count_kind);
            const bool single = count->count("--n") > 0;
            if (!single && count->count("--to") == 0)
                throw CLI::ValidationError("count", "give --n or --from/--to");
            const pl::u64 needed = single ? count_n : count_to;
            cfg.limit = limit_flag ? limit_flag : std::max<pl::u64>(needed, 10);
            const pl::SieveTable t = acquire_sieve(cfg.limit, cfg.threads);
            if (single) {
                *sink.out << pl::count_partition(t, *kind, count_n) << "\n";
                return 0;
            }
            const pl::CountSeries s =
                pl::count_series(t, *kind, count_from, count_to, cfg.threads);
            pl::Table table;
            table.name = "counts";
            table.anchor = kind->name();
            table.columns = {"n", "count", "cumulative"};
            for (size_t i = 0; i < s.size(); ++i) {
                auto& r = table.add_row();
                r = {pl::cell(s.argument(i)), pl::cell(pl::u64{s.counts[i]}),
                     pl::cell(s.cumulative[i])};
            }
            pl::write_table(table, cfg, *sink.out, 0, 1);
            return 0;
        }

        if (verify->parsed()) {
            cfg.command = "verify";
            pl::u64 needed = verify_to;
            for (const pl::u64 x : verify_xs) needed = std::max(needed, x);
            if (verify_id == "two_squares_eq44")
                needed = 10;  // sieve-free identity
            cfg.limit = limit_flag ? limit_flag : std::max<pl::u64>(needed, 10);
            const pl::SieveTable t = acquire_sieve(cfg.limit, cfg.threads);
            return run_verify(cfg, t, verify_id, verify_from, verify_to,
                              verify_c, verify_xs, sink);
        }

        if (ratios->parsed()) {
            cfg.command = "ratios";
            pl::u64 needed = 10;
            for (const pl::u64 x : ratio_xs) needed = std::max(needed, x);
            cfg.limit = limit_flag ? limit_flag : needed;
            const pl::SieveTable t = acquire_sieve(cfg.limit, cfg.threads);
            return run_ratios(cfg, t, ratio_kind, ratio_xs, sink);
        }

        if (constants->parsed()) {
            cfg.command = "constants";
            cfg.limit = limit_flag ? limit_flag : prime_bound;
            const pl::SieveTable t = acquire_sieve(cfg.limit, cfg.threads);
            const pl::TwinConstant tc = pl::twin_constant(t, prime_bound);
            pl::Table table;
            table.name = "twin_constant";
            table.anchor = "C_tw";
            table.columns = {"prime_bound", "value", "log_tail_bound", "lower",
                             "upper"};
            auto& r = table.add_row();
            r = {pl::cell(tc.prime_bound), pl::cell(tc.value),
                 pl::cell(tc.log_tail_bound), pl::cell(tc.lower),
                 pl::cell(tc.upper)};
            pl::write_table(table, cfg, *sink.out, 0, 1);
            return 0;
        }

        if (avg->parsed()) {
            cfg.command = "avg-series";
            cfg.limit = limit_flag ? limit_flag : avg_n;
            const auto res = pl::average_singular_series_ratio(avg_n);
            pl::Table table;
            table.name = "singular_series_average";
            table.anchor = "Eq.(42)";
            table.columns = {"n", "sum", "main_term", "ratio"};
            auto& r = table.add_row();
            r = {pl::cell(res.n), pl::cell(res.sum), pl::cell(res.main_term),
                 pl::cell(res.ratio)};
            pl::write_table(table, cfg, *sink.out, 0, 3);
            return 0;
        }

        if (twosq->parsed()) {
            cfg.command = "two-squares";
            cfg.limit = limit_flag ? limit_flag : 10;
            const pl::AsymptoticSample s = pl::two_squares_average_ratio(twosq_x);
            const pl::IdentityReport id =
                pl::verify_two_squares_identity(static_cast<pl::i64>((twosq_x - 1) / 4));
            pl::Table table;
            table.name = "two_squares_average";
            table.anchor = "Eq.(43)-(44)";
            table.columns = {"x", "raw", "main_term", "ratio", "identity_difference"};
            auto& r = table.add_row();
            r = {pl::cell(s.x), pl::cell(s.raw, 18), pl::cell(s.main_term),
                 pl::cell(s.ratio), pl::cell(id.difference)};
            pl::write_table(table, cfg, *sink.out, 0, 3);
            return id.pass ? 0 : 1;
        }

        if (forge->parsed()) {
            cfg.command = "forge";
            const pl::u64 needed = pl::u64{1} << forge_kmax;
            cfg.limit = limit_flag ? limit_flag : needed;
            const pl::SieveTable t = acquire_sieve(cfg.limit, cfg.threads);
            pl::ForgeVariant variant;
            if (forge_variant == "glr" || forge_variant == "glr_removal")
                variant = pl::ForgeVariant::glr_removal;
            else if (forge_variant == "a152451" || forge_variant == "a152451_style")
                variant = pl::ForgeVariant::a152451_style;
            else if (forge_variant == "a156284" || forge_variant == "a156284_style")
                variant = pl::ForgeVariant::a156284_style;
            else
                throw CLI::ValidationError("--variant",
                                           "unknown variant: " + forge_variant);
            const pl::ConstructionLog log =
                pl::forge_sequence(t, variant, forge_kmax, forge_c);

            if (!removed_out.empty()) {
                std::ofstream rf(removed_out, std::ios::binary | std::ios::trunc);
                if (!rf)
                    throw std::runtime_error("cannot open " + removed_out);
                for (const pl::u64 p : log.removed_sorted) rf << p << "\n";
            }

            if (cfg.format == "json") {
                auto& out = *sink.out;
                out << "{\"meta\":{\"command\":\"forge\",\"variant\":\""
                    << pl::variant_name(log.variant) << "\",\"k_min\":" << log.k_min
                    << ",\"k_max\":" << log.k_max << ",\"C\":" << log.glr_constant
                    << ",\"coverage_limit\":" << log.coverage_limit
                    << ",\"removed_total\":" << log.removed_sorted.size()
                    << ",\"threads\":" << cfg.threads << "},\"removed_per_k\":{";
                for (size_t i = 0; i < log.removed_per_k.size(); ++i) {
                    if (i) out << ",";
                    out << "\"" << (log.k_min + static_cast<int>(i)) << "\":[";
                    const auto& ks = log.removed_per_k[i];
                    for (size_t j = 0; j < ks.size(); ++j)
                        out << (j ? "," : "") << ks[j];
                    out << "]";
                }
                out << "},\"deficit\":[";
                bool first = true;
                for (int e = 10; e <= log.k_max; ++e) {
                    const auto row = pl::deficit_vs_bound(log, pl::u64{1} << e);
                    if (!first) out << ",";
                    first = false;
                    out << "{\"x\":" << row.x << ",\"deficit\":" << row.deficit
                        << ",\"bound\":" << pl::cell(row.bound).text
                        << ",\"ratio\":" << pl::cell(row.ratio).text << "}";
                }
                out << "]}\n";
                return 0;
            }
            pl::Table table;
            table.name = "forge_deficit";
            table.anchor = "pi*(x)";
            table.columns = {"x", "deficit", "bound", "ratio"};
            for (int e = 10; e <= log.k_max; ++e) {
                const auto row = pl::deficit_vs_bound(log, pl::u64{1} << e);
                auto& r = table.add_row();
                r = {pl::cell(row.x), pl::cell(row.deficit), pl::cell(row.bound),
                     pl::cell(row.ratio)};
            }
            pl::write_table(table, cfg, *sink.out, 0, 3);
            std::cerr << "forge " << pl::variant_name(log.variant) << ": removed "
                      << log.removed_sorted.size() << " primes up to 2^"
                      << log.k_max << "\n";
            return 0;
        }

        if (glr->parsed()) {
            cfg.command = "glr";
            cfg.limit = limit_flag ? limit_flag : glr_xmax;
            const pl::SieveTable t = acquire_sieve(cfg.limit, cfg.threads);
            const auto est = pl::glr_constant_estimate(t, glr_xmax, cfg.threads);
            pl::Table table;
            table.name = "glr_constant";
            table.anchor = "Eq.(12)";
            table.columns = {"x_max", "c_hat", "argmax_n", "p_at_argmax"};
            auto& r = table.add_row();
            r = {pl::cell(glr_xmax), pl::cell(est.c_hat), pl::cell(est.argmax_n),
                 pl::cell(est.p_at_argmax)};
            pl::write_table(table, cfg, *sink.out, 0, 1);
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
