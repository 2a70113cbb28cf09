#pragma once

// CSV and JSON serialization for every report type. JSON objects keep a
// fixed key order (ordered_json) so output is byte-stable.

#include <string>
#include <type_traits>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "qdyn/big_poly.hpp"
#include "qdyn/heuristics.hpp"
#include "qdyn/iterate_algebra.hpp"
#include "qdyn/modular_dynamics.hpp"
#include "qdyn/orbit_integers.hpp"
#include "qdyn/separation.hpp"
#include "qdyn/support.hpp"

namespace qdyn::report {

using Json = nlohmann::ordered_json;

/// A double rounded to 6 significant digits, as a JSON number.
inline Json sig6(double v) { return std::stod(format_sig(v)); }

inline std::string rational_str(const mpq_class& q) { return q.get_str(); }

template <class T>
std::string join(const std::vector<T>& values, char sep = ';') {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += sep;
        if constexpr (std::is_same_v<T, mpz_class>)
            out += values[i].get_str();
        else
            out += std::to_string(values[i]);
    }
    return out;
}

inline std::vector<std::string> decimal_strings(const std::vector<mpz_class>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.get_str());
    return out;
}

// ---- modular dynamics ------------------------------------------------------

inline const char* scan_csv_header() { return "p,basin_size,balance,is_full,n_components,cycle_lengths"; }

inline std::string scan_csv_row(const PrimeRecord& r) {
    std::string row = std::to_string(r.p) + "," + std::to_string(r.basin_size) + "," +
                      format_sig(r.balance.value()) + "," + (r.is_full ? "true" : "false") + ",";
    if (r.census) row += std::to_string(r.census->n_components) + "," + join(r.census->cycle_lengths);
    else row += ",";
    return row;
}

inline Json to_json(const PrimeRecord& r) {
    Json j;
    j["p"] = r.p;
    j["basin_size"] = r.basin_size;
    j["balance"] = sig6(r.balance.value());
    j["is_full"] = r.is_full;
    if (r.census) {
        j["n_components"] = r.census->n_components;
        j["cycle_lengths"] = r.census->cycle_lengths;
    } else {
        j["n_components"] = nullptr;
        j["cycle_lengths"] = nullptr;
    }
    return j;
}

inline const char* census_csv_header() { return "p,n_components,cycle_lengths,component_sizes,basin_size"; }

inline std::string census_csv_row(const GraphCensus& c) {
    return std::to_string(c.p) + "," + std::to_string(c.n_components) + "," + join(c.cycle_lengths) + "," +
           join(c.component_sizes) + "," + std::to_string(c.basin_size);
}

inline Json to_json(const GraphCensus& c) {
    Json j;
    j["p"] = c.p;
    j["n_components"] = c.n_components;
    j["cycle_lengths"] = c.cycle_lengths;
    j["component_sizes"] = c.component_sizes;
    j["basin_size"] = c.basin_size;
    return j;
}

// ---- separation --------------------------------------------------------------

inline Json to_json(const SeparationReport& r) {
    Json j;
    j["x_max"] = r.x_max;
    j["order"] = to_string(r.order);
    j["traversal"] = to_string(r.traversal);
    if (r.prime_limit == 0) j["prime_limit"] = nullptr;
    else j["prime_limit"] = r.prime_limit;
    j["separated"] = r.separated;
    j["max_prime_used"] = r.max_prime_used;
    j["primes_consumed"] = r.primes_consumed;
    Json residual;
    residual["count"] = r.residual_block_count;
    residual["sample"] = r.residual_sample;
    j["residual_blocks"] = residual;
    return j;
}

inline const char* balance_csv_header() { return "p,balance"; }

inline std::string balance_csv_row(const BalanceEntry& e) {
    return std::to_string(e.p) + "," + format_sig(e.balance.value());
}

inline Json to_json(const BalanceEntry& e) {
    Json j;
    j["p"] = e.p;
    j["balance"] = sig6(e.balance.value());
    return j;
}

// ---- orbit integers ------------------------------------------------------------

inline Json to_json(const OrbitRecord& r) {
    Json j;
    j["n"] = r.n.get_str();
    j["terms"] = decimal_strings(r.terms);
    return j;
}

inline Json to_json(const GcdExperimentReport& r) {
    Json j;
    j["n"] = r.n.get_str();
    j["n2"] = r.n2.get_str();
    j["k_max"] = r.k_max;
    j["gcds"] = decimal_strings(r.gcds);
    Json primes = Json::array();
    for (const auto& pv : r.primes) {
        Json e;
        e["p"] = pv.p;
        e["k0"] = pv.first_index;
        e["valuations"] = pv.valuations;
        e["weighted_log"] = sig6(pv.weighted_log);
        primes.push_back(e);
    }
    j["primes"] = primes;
    j["cofactors"] = decimal_strings(r.cofactors);
    j["unfactored"] = r.unfactored;
    return j;
}

// ---- polynomials -----------------------------------------------------------------

inline Json to_json(const BigPoly& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs()) {
        if (c.fits_slong_p()) arr.push_back(c.get_si());
        else arr.push_back(c.get_str());
    }
    return arr;
}

inline Json to_json(const EisensteinCertificate& c) {
    Json j;
    j["m"] = c.m;
    j["variant"] = to_string(c.variant);
    j["polynomial"] = c.polynomial.to_string();
    j["leading_odd"] = c.leading_odd;
    j["nonleading_even"] = c.nonleading_even;
    j["constant_two_mod_four"] = c.constant_two_mod_four;
    j["verified"] = c.verified;
    return j;
}

// ---- heuristics ---------------------------------------------------------------------

inline const char* histogram_csv_header() { return "n,size,observed,predicted"; }

inline std::vector<std::string> histogram_csv_rows(const SizeHistogram& h) {
    std::vector<std::string> rows;
    for (const auto& b : h.bins)
        rows.push_back(std::to_string(b.n) + "," + std::to_string(2 * b.n + 1) + "," + std::to_string(b.observed) +
                       "," + format_sig(b.predicted.get_d()));
    rows.push_back("overflow,>" + std::to_string(2 * h.n_max + 1) + "," + std::to_string(h.overflow_observed) + "," +
                   format_sig(h.overflow_predicted.get_d()));
    return rows;
}

inline std::vector<Json> histogram_json_rows(const SizeHistogram& h) {
    std::vector<Json> rows;
    for (const auto& b : h.bins) {
        Json j;
        j["n"] = b.n;
        j["size"] = 2 * b.n + 1;
        j["observed"] = b.observed;
        j["predicted"] = sig6(b.predicted.get_d());
        rows.push_back(j);
    }
    Json j;
    j["n"] = "overflow";
    j["size"] = ">" + std::to_string(2 * h.n_max + 1);
    j["observed"] = h.overflow_observed;
    j["predicted"] = sig6(h.overflow_predicted.get_d());
    rows.push_back(j);
    return rows;
}

inline Json to_json(const BandReport& r) {
    Json j;
    j["prime_limit"] = r.prime_limit;
    j["a"] = rational_str(r.a);
    j["b"] = rational_str(r.b);
    j["observed"] = r.observed;
    j["primes"] = r.primes;
    j["shape"] = sig6(r.shape);
    j["fitted_ratio"] = sig6(r.fitted_ratio);
    return j;
}

inline Json to_json(const FullBasinPrediction& p) {
    Json j;
    j["x"] = p.x;
    j["c_base"] = sig6(p.c_base);
    j["c_refined"] = sig6(p.c_refined);
    j["prime_harmonic"] = sig6(p.prime_harmonic);
    j["expected_base"] = sig6(p.expected_base);
    j["expected_refined"] = sig6(p.expected_refined);
    return j;
}

} // namespace qdyn::report
