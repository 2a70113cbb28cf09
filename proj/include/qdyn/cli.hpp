#pragma once

/**
 * @file cli.hpp
 * @brief Command-line surface over every module.
 *
 * dispatch() takes the arguments after the program name and writes the
 * report to `out`. Exit status: 0 success, 1 verification failure (for
 * example `separate` running out of primes), 2 usage error.
 */

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <gmpxx.h>

#include "qdyn/error.hpp"
#include "qdyn/heuristics.hpp"
#include "qdyn/iterate_algebra.hpp"
#include "qdyn/modular_dynamics.hpp"
#include "qdyn/orbit_integers.hpp"
#include "qdyn/report.hpp"
#include "qdyn/separation.hpp"

namespace qdyn::cli {

enum class Emit { csv, json };

struct RunConfig {
    std::string subcommand;
    u64 p = 0;
    u64 limit = 0;
    u64 x_max = 0;
    u64 prime_limit = 0;
    std::string order = "ascending";
    std::string traversal = "bfs";
    std::string n = "2";
    std::string n2 = "2";
    unsigned m = 0;
    unsigned k_max = 0;
    std::string a, b, epsilon;
    std::string coeffs;
    unsigned bins = 20;
    u64 top = 0;
    bool members = false;
    bool no_census = false;
    bool full_only = false;
    Emit emit = Emit::csv;
    std::string output; // empty: the caller's stream
    unsigned threads = 1;
    bool extended = false;
};

/// Separation bounds above this need --extended.
inline constexpr u64 kDeskScaleBound = 1'000'000;

struct PropertyCheck {
    std::string name;
    bool passed;
    std::string detail;
};

/// Full-basin primes below 10^5, the orbit identity a_{k+2} = a_k^2 (a_k^2 - 2),
/// and the size-3 basin law for p = ±3 (mod 8).
inline std::vector<PropertyCheck> run_property_checks(unsigned threads) {
    std::vector<PropertyCheck> out;

    const auto full = full_basin_primes(100'000, threads);
    const std::vector<u64> expected_full{2, 3, 7, 23, 19207};
    out.push_back({"full-basin-primes-below-1e5", full == expected_full, report::join(full, ',')});

    bool identity = true;
    for (unsigned n = 2; n <= 20 && identity; ++n) {
        const auto orbit = orbit_terms(mpz_class(n), 10);
        for (unsigned k = 0; k + 2 < orbit.terms.size(); ++k) {
            const mpz_class& a = orbit.terms[k];
            if (orbit.terms[k + 2] != a * a * (a * a - 2) || !mpz_divisible_p(orbit.terms[k + 2].get_mpz_t(), a.get_mpz_t()))
                identity = false;
        }
    }
    out.push_back({"orbit-identity-and-divisibility", identity, "n<=20, k<=8"});

    u64 exceptions = 0;
    scan_primes(10'000, {.with_census = false, .threads = threads}, [&](const PrimeRecord& r) {
        if (r.p == 2) return;
        const bool minimal = r.basin_size == 3;
        const bool pm3 = r.p % 8 == 3 || r.p % 8 == 5;
        if (minimal != pm3) ++exceptions;
    });
    out.push_back({"minimal-basin-iff-pm3-mod-8", exceptions == 0, std::to_string(exceptions) + " exceptions below 1e4"});
    return out;
}

namespace detail {

inline void emit_json(std::ostream& out, const report::Json& j) { out << j.dump() << '\n'; }

inline BigPoly parse_coefficients(const std::string& text) {
    std::vector<mpz_class> coeffs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        mpz_class c;
        if (item.empty() || c.set_str(item, 10) != 0) throw Error(ErrorKind::Usage, "bad coefficient '" + item + "'");
        coeffs.push_back(c);
    }
    return BigPoly(std::move(coeffs));
}

inline mpz_class parse_big(const std::string& text, const char* flag) {
    mpz_class v;
    if (text.empty() || v.set_str(text, 10) != 0)
        throw Error(ErrorKind::Usage, std::string(flag) + " expects an integer, got '" + text + "'");
    return v;
}

inline unsigned parse_small(const std::string& text, const char* flag) {
    const mpz_class v = parse_big(text, flag);
    if (v < 0 || !v.fits_uint_p()) throw Error(ErrorKind::Usage, std::string(flag) + " out of range");
    return static_cast<unsigned>(v.get_ui());
}

inline void print_polynomial(std::ostream& out, const RunConfig& cfg, const BigPoly& poly) {
    if (cfg.emit == Emit::json) emit_json(out, report::to_json(poly));
    else out << poly.to_string() << '\n';
}

inline int run(const RunConfig& cfg, std::ostream& out) {
    const std::string& cmd = cfg.subcommand;
    const bool json = cfg.emit == Emit::json;

    if (cmd == "basin") {
        PrimeRecord rec = make_prime_record(cfg.p, true);
        if (json) {
            auto j = report::to_json(rec);
            if (cfg.members) j["members"] = compute_basin(cfg.p).residues();
            emit_json(out, j);
        } else {
            out << report::scan_csv_header() << '\n' << report::scan_csv_row(rec) << '\n';
        }
        return 0;
    }
    if (cmd == "census") {
        const auto c = functional_census(cfg.p);
        if (json) emit_json(out, report::to_json(c));
        else out << report::census_csv_header() << '\n' << report::census_csv_row(c) << '\n';
        return 0;
    }
    if (cmd == "scan") {
        if (!json) out << report::scan_csv_header() << '\n';
        scan_primes(cfg.limit, {.with_census = !cfg.no_census, .threads = cfg.threads}, [&](const PrimeRecord& r) {
            if (cfg.full_only && !r.is_full) return;
            if (json) emit_json(out, report::to_json(r));
            else out << report::scan_csv_row(r) << '\n';
        });
        return 0;
    }
    if (cmd == "separate") {
        SeparationOptions opts;
        opts.order = cfg.order == "balance" ? PrimeOrder::balance_sorted : PrimeOrder::ascending;
        opts.traversal = cfg.traversal == "dfs" ? Traversal::depth_first : Traversal::breadth_first;
        opts.prime_limit = cfg.prime_limit;
        opts.threads = cfg.threads;
        const auto rep = separate(cfg.x_max, opts);
        const auto j = report::to_json(rep);
        if (json) {
            emit_json(out, j);
        } else {
            out << "x_max,order,traversal,prime_limit,separated,max_prime_used,primes_consumed,residual_blocks\n";
            out << rep.x_max << ',' << to_string(rep.order) << ',' << to_string(rep.traversal) << ','
                << (rep.prime_limit ? std::to_string(rep.prime_limit) : "") << ','
                << (rep.separated ? "true" : "false") << ',' << rep.max_prime_used << ',' << rep.primes_consumed
                << ',' << rep.residual_block_count << '\n';
        }
        return rep.separated ? 0 : 1;
    }
    if (cmd == "minimal-prime") {
        const auto p = minimal_separating_prime(cfg.x_max, cfg.threads);
        if (json) {
            report::Json j;
            j["x_max"] = cfg.x_max;
            if (p) j["minimal_prime"] = *p;
            else j["minimal_prime"] = nullptr;
            emit_json(out, j);
        } else {
            out << "x_max,minimal_prime\n" << cfg.x_max << ',' << (p ? std::to_string(*p) : "") << '\n';
        }
        return p ? 0 : 1;
    }
    if (cmd == "balance-order") {
        auto order = balance_order(cfg.prime_limit, cfg.threads);
        if (cfg.top != 0 && order.size() > cfg.top) order.resize(cfg.top);
        if (!json) out << report::balance_csv_header() << '\n';
        for (const auto& e : order) {
            if (json) emit_json(out, report::to_json(e));
            else out << report::balance_csv_row(e) << '\n';
        }
        return 0;
    }
    if (cmd == "orbit") {
        const auto rec = orbit_terms(parse_big(cfg.n, "--n"), cfg.k_max);
        if (json) {
            emit_json(out, report::to_json(rec));
        } else {
            out << "k,term\n";
            for (std::size_t k = 0; k < rec.terms.size(); ++k) out << k << ',' << rec.terms[k].get_str() << '\n';
        }
        return 0;
    }
    if (cmd == "primes-of") {
        const auto primes = prime_set_truncated(parse_big(cfg.n, "--n"), cfg.prime_limit, cfg.threads);
        if (json) {
            report::Json j;
            j["n"] = cfg.n;
            j["prime_limit"] = cfg.prime_limit;
            j["primes"] = primes;
            emit_json(out, j);
        } else {
            out << "p\n";
            for (u64 p : primes) out << p << '\n';
        }
        return 0;
    }
    if (cmd == "restricted-set") {
        const mpz_class n = parse_big(cfg.n, "--n");
        if (n < 2 || !n.fits_ulong_p()) throw Error(ErrorKind::BadN, "--n must be in [2, 2^64)");
        const auto primes = restricted_set(n.get_ui());
        if (json) {
            report::Json j;
            j["n"] = cfg.n;
            j["primes"] = primes;
            emit_json(out, j);
        } else {
            out << "p\n";
            for (u64 p : primes) out << p << '\n';
        }
        return 0;
    }
    if (cmd == "valuations") {
        const auto vals = valuation_profile(parse_big(cfg.n, "--n"), cfg.p, cfg.k_max);
        if (json) {
            report::Json j;
            j["n"] = cfg.n;
            j["p"] = cfg.p;
            j["valuations"] = vals;
            emit_json(out, j);
        } else {
            out << "k,valuation\n";
            for (std::size_t k = 0; k < vals.size(); ++k) out << k << ',' << vals[k] << '\n';
        }
        return 0;
    }
    if (cmd == "gcd-experiment") {
        const auto rep = gcd_experiment(parse_big(cfg.n, "--n"), parse_big(cfg.n2, "--n2"), cfg.k_max);
        if (json) {
            emit_json(out, report::to_json(rep));
        } else {
            out << "k,gcd,cofactor,unfactored\n";
            for (unsigned k = 0; k <= rep.k_max; ++k)
                out << k << ',' << rep.gcds[k].get_str() << ',' << rep.cofactors[k].get_str() << ','
                    << (rep.unfactored[k] ? "true" : "false") << '\n';
        }
        return 0;
    }
    if (cmd == "iterate") {
        print_polynomial(out, cfg, iterate_poly(cfg.m));
        return 0;
    }
    if (cmd == "eisenstein") {
        const auto cert = eisenstein_certificate(cfg.m);
        if (json) {
            emit_json(out, report::to_json(cert));
        } else {
            out << "m,variant,verified,polynomial\n"
                << cert.m << ',' << to_string(cert.variant) << ',' << (cert.verified ? "true" : "false") << ','
                << cert.polynomial.to_string() << '\n';
        }
        return 0;
    }
    if (cmd == "phi") {
        print_polynomial(out, cfg, phi(parse_small(cfg.n, "--n")));
        return 0;
    }
    if (cmd == "necklace") {
        const unsigned n = parse_small(cfg.n, "--n");
        const u64 k = necklace_count(n);
        if (json) {
            report::Json j;
            j["n"] = n;
            j["k"] = k;
            emit_json(out, j);
        } else {
            out << "n,k\n" << n << ',' << k << '\n';
        }
        return 0;
    }
    if (cmd == "disc") {
        BigPoly g = cfg.coeffs.empty() ? iterate_poly(cfg.m) - BigPoly{1} : parse_coefficients(cfg.coeffs);
        const mpz_class d = discriminant(g);
        if (json) {
            report::Json j;
            j["polynomial"] = g.to_string();
            j["discriminant"] = d.get_str();
            emit_json(out, j);
        } else {
            out << d.get_str() << '\n';
        }
        return 0;
    }
    if (cmd == "tree-model") {
        const unsigned n_max = parse_small(cfg.n, "--n");
        if (!json) out << "n,size,probability,value\n";
        for (unsigned n = 1; n <= n_max; ++n) {
            const mpq_class q = tree_size_probability(n);
            if (json) {
                report::Json j;
                j["n"] = n;
                j["size"] = 2 * n + 1;
                j["probability"] = q.get_str();
                j["value"] = report::sig6(q.get_d());
                emit_json(out, j);
            } else {
                out << n << ',' << 2 * n + 1 << ',' << q.get_str() << ',' << format_sig(q.get_d()) << '\n';
            }
        }
        return 0;
    }
    if (cmd == "histogram") {
        const auto h = size_histogram(cfg.prime_limit, cfg.bins, cfg.threads);
        if (json) {
            for (const auto& row : report::histogram_json_rows(h)) emit_json(out, row);
        } else {
            out << report::histogram_csv_header() << '\n';
            for (const auto& row : report::histogram_csv_rows(h)) out << row << '\n';
        }
        return 0;
    }
    if (cmd == "band") {
        mpq_class a, b;
        if (!cfg.epsilon.empty()) {
            const mpq_class eps = parse_rational(cfg.epsilon);
            a = mpq_class(1, 2) - eps;
            b = mpq_class(1, 2) + eps;
        } else {
            if (cfg.a.empty() || cfg.b.empty()) throw Error(ErrorKind::Usage, "band needs --a and --b, or --epsilon");
            a = parse_rational(cfg.a);
            b = parse_rational(cfg.b);
        }
        const auto rep = band_count(cfg.limit, a, b, cfg.threads);
        if (json) {
            emit_json(out, report::to_json(rep));
        } else {
            out << "p\n";
            for (u64 p : rep.primes) out << p << '\n';
        }
        return 0;
    }
    if (cmd == "fpf") {
        const unsigned n = parse_small(cfg.n, "--n");
        const bool exact = n <= kMaxExactFpfIndex;
        const std::string exact_str = exact ? fpf_fraction(n).get_str() : "";
        const double value = fpf_fraction_approx(n);
        const double reference = std::exp(-1.0 / n);
        if (json) {
            report::Json j;
            j["n"] = n;
            j["k_n"] = necklace_count(n);
            if (exact) j["exact"] = exact_str;
            else j["exact"] = nullptr;
            j["value"] = report::sig6(value);
            j["exp_minus_one_over_n"] = report::sig6(reference);
            emit_json(out, j);
        } else {
            out << "n,k_n,exact,value,exp_minus_one_over_n\n"
                << n << ',' << necklace_count(n) << ',' << exact_str << ',' << format_sig(value) << ','
                << format_sig(reference) << '\n';
        }
        return 0;
    }
    if (cmd == "predict-full-basin") {
        const auto pred = full_basin_prediction(cfg.limit);
        if (json) {
            emit_json(out, report::to_json(pred));
        } else {
            out << "x,c_base,c_refined,prime_harmonic,expected_base,expected_refined\n"
                << pred.x << ',' << format_sig(pred.c_base) << ',' << format_sig(pred.c_refined) << ','
                << format_sig(pred.prime_harmonic) << ',' << format_sig(pred.expected_base) << ','
                << format_sig(pred.expected_refined) << '\n';
        }
        return 0;
    }
    if (cmd == "delta") {
        const auto prof = delta_profile(cfg.m, cfg.prime_limit, cfg.threads);
        if (!json) out << "m,solvable,primes,fraction,value\n";
        for (unsigned m = 0; m <= cfg.m; ++m) {
            const mpq_class q = prof.fraction(m);
            if (json) {
                report::Json j;
                j["m"] = m;
                j["solvable"] = prof.solvable[m];
                j["primes"] = prof.prime_count;
                j["fraction"] = q.get_str();
                j["value"] = report::sig6(q.get_d());
                emit_json(out, j);
            } else {
                out << m << ',' << prof.solvable[m] << ',' << prof.prime_count << ',' << q.get_str() << ','
                    << format_sig(q.get_d()) << '\n';
            }
        }
        return 0;
    }
    if (cmd == "check-lemmas") {
        bool all = true;
        for (const auto& c : run_property_checks(cfg.threads)) {
            all = all && c.passed;
            if (json) {
                report::Json j;
                j["check"] = c.name;
                j["passed"] = c.passed;
                j["detail"] = c.detail;
                emit_json(out, j);
            } else {
                out << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
            }
        }
        return all ? 0 : 1;
    }
    throw Error(ErrorKind::Usage, "unknown subcommand " + cmd);
}

} // namespace detail

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Arithmetic dynamics of x^2 - 1: basins, separation, orbits, polynomials, heuristics", "qdyn"};
    app.fallthrough();
    app.require_subcommand(1);
    std::string emit = "csv";
    app.add_option("--emit", emit, "Output format: csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", cfg.threads, "Worker threads (0 = hardware concurrency)");
    app.add_flag("--extended", cfg.extended, "Allow long-running separation bounds");
    app.add_option("--output,-o", cfg.output, "Write the report to this file");

    auto sub = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };
    auto need_p = [&](CLI::App* s) { s->add_option("--p", cfg.p, "Prime modulus")->required(); };
    auto orders = [&](CLI::App* s) {
        s->add_option("--order", cfg.order)->check(CLI::IsMember({"ascending", "balance"}));
        s->add_option("--traversal", cfg.traversal)->check(CLI::IsMember({"bfs", "dfs"}));
        s->add_option("--prime-limit", cfg.prime_limit, "Largest prime to use (default unbounded)");
    };

    auto* basin = sub("basin", "Basin of 0 in F_p with census");
    need_p(basin);
    basin->add_flag("--members", cfg.members, "Include the basin residues (json)");
    need_p(sub("census", "Component and cycle census of x -> x^2 - 1 on F_p"));
    auto* scan = sub("scan", "Basin record for every prime up to --limit");
    scan->add_option("--limit", cfg.limit)->required();
    scan->add_flag("--no-census", cfg.no_census, "Skip the component census");
    scan->add_flag("--full-only", cfg.full_only, "Only primes with a full basin");
    auto* sep = sub("separate", "Partition refinement of the integers up to --xmax");
    sep->add_option("--xmax", cfg.x_max)->required();
    orders(sep);
    sub("minimal-prime", "Smallest p with P_{<=p} separating the integers up to --xmax")
        ->add_option("--xmax", cfg.x_max)
        ->required();
    auto* bal = sub("balance-order", "Primes sorted by |#basin/p - 1/2|");
    bal->add_option("--prime-limit", cfg.prime_limit)->required();
    bal->add_option("--top", cfg.top, "Only the first entries");
    auto* orbit = sub("orbit", "Exact orbit terms a_0..a_kmax");
    orbit->add_option("--n", cfg.n)->required();
    orbit->add_option("--kmax", cfg.k_max)->required();
    auto* primes_of = sub("primes-of", "Primes <= --prime-limit dividing some orbit term");
    primes_of->add_option("--n", cfg.n)->required();
    primes_of->add_option("--prime-limit", cfg.prime_limit)->required();
    sub("restricted-set", "Orbit primes congruent to +-3 mod 8")->add_option("--n", cfg.n)->required();
    auto* vals = sub("valuations", "p-adic valuations of the orbit terms");
    vals->add_option("--n", cfg.n)->required();
    need_p(vals);
    vals->add_option("--kmax", cfg.k_max)->required();
    auto* gcd = sub("gcd-experiment", "gcd of even-index orbit terms of two starts");
    gcd->add_option("--n", cfg.n)->required();
    gcd->add_option("--n2", cfg.n2)->required();
    gcd->add_option("--kmax", cfg.k_max)->required();
    sub("iterate", "Coefficients of f^m")->add_option("--m", cfg.m)->required();
    sub("eisenstein", "Eisenstein-at-2 certificate for f^m - 1")->add_option("--m", cfg.m)->required();
    sub("phi", "Period polynomial Phi_n")->add_option("--n", cfg.n)->required();
    sub("necklace", "Number k_n of n-cycles")->add_option("--n", cfg.n)->required();
    auto* disc = sub("disc", "Discriminant of f^m - 1 or of --coeffs (constant first)");
    disc->add_option("--m", cfg.m);
    disc->add_option("--coeffs", cfg.coeffs);
    sub("tree-model", "Model probabilities for basin size 2n+1, n = 1..--n")->add_option("--n", cfg.n)->required();
    auto* hist = sub("histogram", "Observed vs predicted basin sizes");
    hist->add_option("--prime-limit,--limit", cfg.prime_limit)->required();
    hist->add_option("--bins", cfg.bins, "Number of tree-size bins");
    auto* band = sub("band", "Primes with a*p <= #basin <= b*p");
    band->add_option("--limit", cfg.limit)->required();
    band->add_option("--a", cfg.a);
    band->add_option("--b", cfg.b);
    band->add_option("--epsilon", cfg.epsilon, "Symmetric band |#basin/p - 1/2| <= epsilon");
    sub("fpf", "Fixed-point-free fraction of C_n wr S_{k_n}")->add_option("--n", cfg.n)->required();
    sub("predict-full-basin", "Expected number of full-basin primes up to --limit")
        ->add_option("--limit", cfg.limit)
        ->required();
    auto* delta = sub("delta", "Fraction of primes where f^j(x) = 1 is solvable, j = 0..--m");
    delta->add_option("--m", cfg.m)->required();
    delta->add_option("--prime-limit", cfg.prime_limit)->required();
    sub("check-lemmas", "Run the built-in property checks");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return 2;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.emit = emit == "json" ? Emit::json : Emit::csv;

    if ((cfg.subcommand == "separate" || cfg.subcommand == "minimal-prime") && cfg.x_max > kDeskScaleBound &&
        !cfg.extended) {
        err << "error: --xmax above " << kDeskScaleBound << " requires --extended\n";
        return 2;
    }
    try {
        if (cfg.output.empty()) return detail::run(cfg, out);
        std::ofstream file(cfg.output, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << cfg.output << '\n';
            return 2;
        }
        return detail::run(cfg, file);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace qdyn::cli
