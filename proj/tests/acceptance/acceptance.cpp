// Acceptance suite: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every FAIL is listed in fixtures/known_deviations.txt
// (each entry carries its analysis there), 1 otherwise.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qdyn/cli.hpp"
#include "qdyn/qdyn.hpp"

using namespace qdyn;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

struct CliRun {
    int code;
    std::string out;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str() + err.str()};
}

std::vector<report::Json> json_lines(const std::string& text) {
    std::vector<report::Json> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] == '{') out.push_back(report::Json::parse(line));
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, const char* format = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::set<int> known_deviations() {
    std::set<int> ids;
    std::ifstream in(QDYN_FIXTURE_DIR "/known_deviations.txt");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string key;
        int id;
        if (ss >> key >> id && key == "criterion") ids.insert(id);
    }
    return ids;
}

Outcome full_basin_scan() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = cli({"scan", "--limit", "100000", "--no-census", "--full-only", "--threads", "1"});
    const double secs = seconds_since(t0);
    std::vector<u64> full;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) full.push_back(std::stoull(line.substr(0, line.find(','))));
    const bool ok = r.code == 0 && full == std::vector<u64>{2, 3, 7, 23, 19207} && secs < 60;
    return {ok, "full basins {" + report::join(full, ',') + "} in " + fmt(secs) + " s single-threaded"};
}

Outcome minimal_separating_primes() {
    const std::vector<std::pair<u64, u64>> rows{{10, 47},       {100, 223},      {1000, 379},
                                                {10'000, 919}, {100'000, 2137}, {1'000'000, 3001}};
    bool ok = true;
    std::string detail;
    for (auto [x, expected] : rows) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = cli({"minimal-prime", "--xmax", std::to_string(x), "--emit", "json"});
        const double secs = seconds_since(t0);
        const auto j = json_lines(r.out);
        const u64 got = j.empty() || j[0]["minimal_prime"].is_null() ? 0 : j[0]["minimal_prime"].get<u64>();
        const double budget = x == 1'000'000 ? 900 : 120;
        ok = ok && r.code == 0 && got == expected && secs < budget;
        detail += (detail.empty() ? "" : ", ") + std::to_string(x) + "->" + std::to_string(got) + " (" + fmt(secs) + " s)";
    }
    return {ok, detail};
}

Outcome balance_order_prefix() {
    // Ten-entry prefix as printed, 3 significant figures.
    const std::vector<std::pair<u64, std::string>> printed{
        {2713, "0.00350"}, {2137, "0.00726"}, {1399, "0.0232"}, {5927, "0.0534"}, {8681, "0.0637"},
        {4799, "0.0741"},  {3079, "0.0746"},  {71, "0.0775"},   {919, "0.0833"},  {7951, "0.0875"}};
    const auto order = balance_order(10'000);
    bool primes_ok = true;
    std::vector<std::string> mismatched;
    for (std::size_t i = 0; i < printed.size(); ++i) {
        primes_ok = primes_ok && order[i].p == printed[i].first;
        const std::string ours = fmt(order[i].balance.value(), "%#.3g");
        if (ours != printed[i].second)
            mismatched.push_back(std::to_string(order[i].p) + " exact " + std::to_string(order[i].balance.num) + "/" +
                                 std::to_string(order[i].balance.den) + " = " + ours + " vs " + printed[i].second);
    }
    std::string detail = primes_ok ? "ten primes in order" : "prime order differs";
    if (!mismatched.empty()) {
        detail += "; printed balance differs in the last digit for";
        for (const auto& m : mismatched) detail += " [" + m + "]";
    }
    return {primes_ok && mismatched.empty(), detail};
}

Outcome balanced_band() {
    const std::vector<u64> expected{5,     71,    919,   1399,   2137,   2713,   3079,   4799,   5927,
                                    7951,  8681,  10271, 10711,  11369,  12487,  12577,  22409,  22871,
                                    24623, 24631, 27647, 29641,  46457,  54751,  84559,  87583,  99929,
                                    103703, 105449, 106753, 120199, 120607, 123289, 131111, 147703};
    const auto r = cli({"band", "--limit", "147703", "--a", "2/5", "--b", "3/5", "--emit", "json", "--threads", "0"});
    const auto j = json_lines(r.out);
    const auto primes = j.empty() ? std::vector<u64>{} : j[0]["primes"].get<std::vector<u64>>();
    return {r.code == 0 && primes == expected,
            std::to_string(primes.size()) + " primes, first " + (primes.empty() ? "-" : std::to_string(primes.front())) +
                ", last " + (primes.empty() ? "-" : std::to_string(primes.back()))};
}

Outcome minimal_basin_law() {
    u64 exceptions = 0, checked = 0;
    for (const auto& r : scan_primes(10'000)) {
        if (r.p == 2) continue;
        ++checked;
        if ((r.basin_size == 3) != (r.p % 8 == 3 || r.p % 8 == 5)) ++exceptions;
    }
    return {exceptions == 0, std::to_string(checked) + " odd primes, " + std::to_string(exceptions) + " exceptions"};
}

Outcome polynomial_fixtures() {
    const std::vector<std::string> display{
        "x^2 - x - 1", "x^2 + x", "x^6 + x^5 - 2*x^4 - x^3 + x^2 + 1",
        "x^12 - 6*x^10 + x^9 + 12*x^8 - 4*x^7 - 7*x^6 + 4*x^5 - 4*x^4 + x^3 + 4*x^2 - 2*x + 1"};
    bool phis = true;
    for (unsigned n = 1; n <= 4; ++n) phis = phis && phi(n).to_string() == display[n - 1];

    bool certs = true;
    for (unsigned m = 1; m <= 8; ++m) {
        const auto c = eisenstein_certificate(m);
        certs = certs && c.verified && (c.variant == EisensteinVariant::direct) == (m % 2 == 1);
    }

    bool discs = true;
    std::string disc_text;
    for (unsigned m = 1; m <= 4; ++m) {
        mpz_class d = abs(discriminant(iterate_poly(m) - BigPoly{1}));
        discs = discs && mpz_popcount(d.get_mpz_t()) == 1;
        disc_text += (m > 1 ? "," : "") + std::string("2^") + std::to_string(mpz_sizeinbase(d.get_mpz_t(), 2) - 1);
    }

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> deg(1, 4), coeff(-9, 9);
    int identity_ok = 0;
    for (int i = 0; i < 50; ++i) {
        std::vector<mpz_class> c(deg(rng) + 1);
        for (auto& x : c) x = coeff(rng);
        while (c.back() == 0) c.back() = coeff(rng);
        const BigPoly g(c);
        oracle::QPoly q(c.begin(), c.end());
        if (mpq_class(discriminant(g)) == oracle::euclid_discriminant(q)) ++identity_ok;
    }
    return {phis && certs && discs && identity_ok == 50,
            std::string("Phi_1..4 ") + (phis ? "match" : "differ") + "; certificates m<=8 " + (certs ? "ok" : "bad") +
                "; |disc| = " + disc_text + "; identity " + std::to_string(identity_ok) + "/50"};
}

Outcome orbit_properties() {
    bool identity = true;
    for (int n = 2; n <= 20; ++n) {
        const auto t = orbit_terms(n, 10).terms;
        for (unsigned k = 0; k <= 8; ++k)
            identity = identity && t[k + 2] == t[k] * t[k] * (t[k] * t[k] - 2) &&
                       mpz_divisible_p(t[k + 2].get_mpz_t(), t[k].get_mpz_t());
    }
    u64 checks = 0;
    bool doubling = true;
    for (int n = 2; n <= 40; ++n) {
        for (u64 p : primes_up_to(60)) {
            if (p == 2) continue;
            const auto v = valuation_profile(n, p, 12);
            std::size_t k0 = 0;
            while (k0 < v.size() && v[k0] == 0) ++k0;
            for (std::size_t j = 0; k0 + 2 * j < v.size(); ++j, ++checks)
                doubling = doubling && v[k0 + 2 * j] == (1u << j) * v[k0];
        }
    }
    const bool fixture = orbit_terms(2, 4).terms == std::vector<mpz_class>{2, 3, 8, 63, 3968};
    return {identity && doubling && fixture, std::string("identity ") + (identity ? "holds" : "fails") +
                                                 "; doubling " + std::to_string(checks) + " checks " +
                                                 (doubling ? "hold" : "fail") + "; orbit(2,4) " +
                                                 (fixture ? "[2,3,8,63,3968]" : "differs")};
}

Outcome oracle_equivalence() {
    u64 primes = 0, mismatches = 0;
    for (u64 p : primes_up_to(1999)) {
        ++primes;
        if (compute_basin(p).residues() != oracle::backward_basin(p)) ++mismatches;
    }
    return {mismatches == 0, std::to_string(primes) + " primes, " + std::to_string(mismatches) + " mismatches"};
}

Outcome heuristic_model() {
    bool closed = tree_size_probability(1) == mpq_class(1, 2) && tree_size_probability(2) == mpq_class(1, 8) &&
                  tree_size_probability(3) == mpq_class(1, 16);
    bool series = true;
    for (unsigned n = 1; n <= 50; ++n) series = series && tree_size_probability(n) == oracle::tree_series_coefficient(n);

    const auto h = size_histogram(100'000, 20, 0);
    u64 sieve_count = 0;
    for (u64 p : oracle::sieve(100'000)) sieve_count += p % 8 == 3 || p % 8 == 5;
    const bool bin_one = h.bins[0].observed == sieve_count;

    bool fpf = fpf_fraction(3) == mpq_class(13, 18);
    for (unsigned n = 3; n <= 10; ++n) fpf = fpf && std::abs(fpf_fraction(n).get_d() - std::exp(-1.0 / n)) < 0.01;

    const auto prof = delta_profile(4, 100'000, 0);
    const double d1 = prof.fraction(1).get_d();
    bool delta = prof.fraction(0) == 1 && d1 >= 0.49 && d1 <= 0.51;
    for (unsigned m = 1; m <= 4; ++m) delta = delta && prof.fraction(m) <= prof.fraction(m - 1);

    return {closed && series && bin_one && fpf && delta,
            std::string("closed form ") + (closed ? "ok" : "bad") + "; series n<=50 " + (series ? "ok" : "bad") +
                "; bin 1 = " + std::to_string(h.bins[0].observed) + " vs sieve " + std::to_string(sieve_count) +
                "; fpf " + (fpf ? "ok" : "bad") + "; delta_1 = " + fmt(d1, "%.4f") + ", monotone " +
                (delta ? "yes" : "no")};
}

Outcome restricted_sets() {
    const std::vector<std::pair<std::vector<u64>, std::vector<u64>>> classes{
        {{2, 7, 17}, {3}}, {{4, 5, 6, 9, 16}, {3, 5}}, {{10, 11, 21}, {3, 5, 11}}};
    bool ok = true;
    for (const auto& [ns, expected] : classes)
        for (u64 n : ns) {
            const auto r = cli({"restricted-set", "--n", std::to_string(n), "--emit", "json"});
            const auto j = json_lines(r.out);
            ok = ok && r.code == 0 && !j.empty() && j[0]["primes"].get<std::vector<u64>>() == expected;
        }
    return {ok, "three classes, 11 starting values"};
}

Outcome determinism() {
    const std::vector<std::vector<std::string>> commands{
        {"scan", "--limit", "50000"},
        {"balance-order", "--prime-limit", "10000"},
        {"separate", "--xmax", "100000", "--order", "balance", "--prime-limit", "10000", "--traversal", "dfs"},
        {"separate", "--xmax", "100000"},
        {"minimal-prime", "--xmax", "100000"},
        {"histogram", "--prime-limit", "100000"},
        {"band", "--limit", "147703", "--a", "2/5", "--b", "3/5"},
        {"delta", "--m", "5", "--prime-limit", "50000"},
        {"primes-of", "--n", "2", "--prime-limit", "20000"},
        {"check-lemmas"},
    };
    std::size_t identical = 0, runs = 0;
    for (const auto& cmd : commands) {
        for (const char* emit : {"csv", "json"}) {
            auto one = cmd, eight = cmd;
            one.insert(one.end(), {"--emit", emit, "--threads", "1"});
            eight.insert(eight.end(), {"--emit", emit, "--threads", "8"});
            const auto a = cli(one), b = cli(eight);
            ++runs;
            if (a.code == b.code && a.out == b.out) ++identical;
        }
    }
    return {identical == runs, std::to_string(identical) + "/" + std::to_string(runs) + " runs byte-identical"};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"full-basin scan below 1e5", full_basin_scan},
        {"minimal separating primes 1e1..1e6", minimal_separating_primes},
        {"balance order prefix below 1e4", balance_order_prefix},
        {"balanced band to 147703", balanced_band},
        {"size-3 basin iff p = +-3 mod 8", minimal_basin_law},
        {"polynomial fixtures", polynomial_fixtures},
        {"orbit properties", orbit_properties},
        {"forward vs backward basin", oracle_equivalence},
        {"heuristic model", heuristic_model},
        {"restricted sets", restricted_sets},
        {"thread-count determinism", determinism},
    };
    const auto known = known_deviations();
    int unexpected = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::string tag;
        if (!o.passed) tag = known.count(id) ? " [known deviation]" : "";
        if (!o.passed && !known.count(id)) ++unexpected;
        std::cout << (o.passed ? "PASS" : "FAIL") << ' ' << id << ' ' << criteria[i].first << tag << ": " << o.detail
                  << std::endl;
    }
    return unexpected == 0 ? 0 : 1;
}
