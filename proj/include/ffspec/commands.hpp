#pragma once

// Command implementations behind the ffspec CLI. Each command returns a
// RunReport plus the process exit code; rendering is separate so the same
// report can be printed as json, table or csv.
//
// Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
// 3 internal identity violation.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "catalog.hpp"
#include "closedform.hpp"
#include "errors.hpp"
#include "gf2ext.hpp"
#include "oracle.hpp"
#include "powerfn.hpp"
#include "trinomial.hpp"

namespace ffspec::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kMismatch = 1, kInvalidInput = 2, kInternalError = 3 };

struct RunReport {
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    bool identities_ok = true;
    double elapsed_ms = 0.0;
    std::string version = kVersion;
    std::vector<std::string> warnings;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RunReport, command, inputs, results, identities_ok, elapsed_ms, version, warnings)

struct CommandResult {
    RunReport report;
    int exit_code = kOk;
};

// ---------------------------------------------------------------------------
// helpers

inline nlohmann::json big_to_json(const BigInt& v) {
    if (v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max())) return v.convert_to<std::uint64_t>();
    if (v < 0 && v >= BigInt(std::numeric_limits<std::int64_t>::min())) return v.convert_to<std::int64_t>();
    return v.str();
}

inline nlohmann::json spectrum_json(const Spectrum& s) {
    auto arr = nlohmann::json::array();
    for (auto [i, w] : s.entries()) arr.push_back({{"delta", i}, {"count", w}});
    return arr;
}

/// Parses "0x1b", "1b" or "0X1B" as a hexadecimal mask.
inline std::uint64_t parse_hex(const std::string& text) {
    std::string digits = text;
    if (digits.size() >= 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) digits = digits.substr(2);
    if (digits.empty() || digits.size() > 16) throw std::invalid_argument("malformed hex value '" + text + "'");
    for (char c : digits)
        if (!std::isxdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("malformed hex value '" + text + "'");
    return std::stoull(digits, nullptr, 16);
}

inline std::string element_hex(Element e) {
    std::ostringstream os;
    os << "0x" << std::hex << e.bits;
    return os.str();
}

/// Default worker count: FFSPEC_THREADS if set, otherwise the hardware count.
inline unsigned default_threads() {
    if (const char* env = std::getenv("FFSPEC_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

inline std::int64_t default_exponent(int m) { return 3 * (std::int64_t{1} << m) - 2; }

inline void require_half_degree(int m) {
    if (m < 1 || 2 * m > kMaxDegree)
        throw std::invalid_argument("m must satisfy 1 <= m <= " + std::to_string(kMaxDegree / 2));
}

template <class Fn>
CommandResult run_guarded(const std::string& command, Fn&& body) {
    const auto start = std::chrono::steady_clock::now();
    CommandResult out;
    out.report.command = command;
    try {
        body(out);
    } catch (const IdentityViolation& e) {
        out.report.identities_ok = false;
        out.report.results["error"] = std::string("internal identity violation: ") + e.what();
        out.exit_code = kInternalError;
    } catch (const std::invalid_argument& e) {
        out.report.results["error"] = e.what();
        out.exit_code = kInvalidInput;
    } catch (const std::out_of_range& e) {
        out.report.results["error"] = e.what();
        out.exit_code = kInvalidInput;
    }
    out.report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumArgs {
    std::optional<int> m;
    std::optional<int> n;
    std::optional<std::int64_t> d;
    std::optional<std::string> modulus;
    unsigned threads = 1;
};

inline CommandResult cmd_spectrum(const SpectrumArgs& args) {
    return run_guarded("spectrum", [&](CommandResult& out) {
        int n = 0;
        std::int64_t d = 0;
        if (args.m) {
            require_half_degree(*args.m);
            n = 2 * *args.m;
            d = args.d.value_or(default_exponent(*args.m));
            if (args.n && *args.n != n) throw std::invalid_argument("--n conflicts with --m");
            if (*args.m % 2 != 0) out.report.warnings.push_back("m is odd: outside theorem hypothesis");
        } else {
            if (!args.n || !args.d) throw std::invalid_argument("give --m, or both --n and --d");
            n = *args.n;
            d = *args.d;
        }
        std::optional<PolyMask> modulus;
        if (args.modulus) modulus = parse_hex(*args.modulus);
        const FieldSpec field(n, modulus);
        const PowerFunction f(field, d);
        const DdtRow row = ddt_row(f, args.threads);
        const Spectrum s = spectrum_of_row(row);

        auto& in = out.report.inputs;
        in["n"] = n;
        if (n % 2 == 0) in["m"] = n / 2;
        in["d"] = d;
        in["d_reduced"] = f.exponent();
        in["modulus"] = field.modulus_hex();
        in["threads"] = args.threads;

        const std::uint64_t local = local_uniformity(row);
        auto& r = out.report.results;
        r["spectrum"] = spectrum_json(s);
        r["uniformity"] = s.uniformity();
        r["local_uniformity"] = local;
        r["locality"] = to_string(classify_locality(local));
        r["delta_1_1"] = row.size() > 1 ? row[1] : 0;
        if (n % 2 == 0) {
            const auto j = is_niho(d, n / 2);
            r["niho"] = j.has_value();
            if (j) r["niho_j"] = *j;
        } else {
            r["niho"] = false;
        }
        r["second_moment"] = s.second_moment();
        r["N4"] = big_to_json(oracle::N4_from_spectrum(s));
        out.report.identities_ok = s.satisfies_identities();
    });
}

// ---------------------------------------------------------------------------
// predict

struct PredictArgs {
    int m = 0;
};

inline bool predicted_identities_hold(const PredictedSpectrum& p) {
    const BigInt Q = p.q * p.q;
    BigInt total = 0, first = 0, second = 0;
    for (const auto& [i, w] : p.entries()) {
        total += w;
        first += i * w;
        second += i * i * w;
    }
    return total == Q && first == Q && (Q - 1) * second == N4_closed(p.m) - Q * Q;
}

inline CommandResult cmd_predict(const PredictArgs& args) {
    return run_guarded("predict", [&](CommandResult& out) {
        const PredictedSpectrum p = predicted_spectrum(args.m);
        out.report.inputs["m"] = args.m;
        out.report.inputs["n"] = 2 * args.m;
        out.report.inputs["d"] = big_to_json(3 * p.q - 2);
        auto arr = nlohmann::json::array();
        for (const auto& [i, w] : p.entries()) arr.push_back({{"delta", big_to_json(i)}, {"count", big_to_json(w)}});
        auto& r = out.report.results;
        r["spectrum"] = arr;
        r["uniformity"] = big_to_json(p.q);
        r["tau"] = tau(args.m).to_string();
        r["s_m"] = big_to_json(tau_scaled(args.m));
        r["N4"] = big_to_json(N4_closed(args.m));
        out.report.identities_ok = predicted_identities_hold(p);
        if (!out.report.identities_ok) throw IdentityViolation("predicted spectrum breaks the moment identities");
    });
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    int m = 0;
    bool deep = false;
    unsigned threads = 1;
    /// Perturbs omega_0 of the prediction by one; exercises the mismatch path.
    bool inject_fault = false;
};

inline CommandResult cmd_verify(const VerifyArgs& args) {
    return run_guarded("verify", [&](CommandResult& out) {
        const int m = args.m;
        if (m < 2 || m % 2 != 0) throw std::invalid_argument("verify requires even m >= 2");
        require_half_degree(m);
        out.report.inputs = {{"m", m}, {"n", 2 * m}, {"d", default_exponent(m)}, {"deep", args.deep},
                             {"threads", args.threads}};

        PredictedSpectrum predicted = predicted_spectrum(m);
        if (args.inject_fault) predicted.omega_0 += 1;
        const std::uint64_t q = std::uint64_t{1} << m;

        const FieldSpec field(2 * m);
        const PowerFunction f(field, default_exponent(m));
        const DdtRow row = ddt_row(f, args.threads);
        const Spectrum computed = spectrum_of_row(row);

        auto checks = nlohmann::json::array();
        bool all_ok = true;
        auto record = [&](const std::string& name, bool ok, const std::string& detail = {}) {
            checks.push_back({{"check", name}, {"ok", ok}, {"detail", detail}});
            all_ok = all_ok && ok;
        };

        // spectrum field by field
        std::vector<std::string> diff;
        const auto pe = predicted.entries();
        std::map<BigInt, BigInt> ce;
        for (auto [i, w] : computed.entries()) ce[BigInt(i)] = BigInt(w);
        std::set<BigInt> keys;
        for (const auto& [i, w] : pe) keys.insert(i);
        for (const auto& [i, w] : ce) keys.insert(i);
        for (const auto& i : keys) {
            const BigInt a = pe.contains(i) ? pe.at(i) : BigInt(0);
            const BigInt b = ce.contains(i) ? ce.at(i) : BigInt(0);
            if (a != b) diff.push_back("omega_" + i.str() + ": predicted " + a.str() + ", computed " + b.str());
        }
        record("spectrum", diff.empty(), diff.empty() ? "" : std::to_string(diff.size()) + " entries differ");
        record("delta(1,1) = q", row[1] == q, std::to_string(row[1]));
        record("local uniformity <= 4", local_uniformity(row) <= 4, std::to_string(local_uniformity(row)));

        if (args.deep) {
            const BigInt n4 = N4_closed(m);
            record("moment_check(spectrum, N4_closed)", moment_check(computed, n4));
            record("N4_from_spectrum = N4_closed", oracle::N4_from_spectrum(computed) == n4,
                   oracle::N4_from_spectrum(computed).str() + " vs " + n4.str());
            const auto counts = preimage_counts(field, args.threads);
            std::uint64_t max_other = 0;
            for (std::size_t c = 2; c < counts.size(); ++c) max_other = std::max<std::uint64_t>(max_other, counts[c]);
            const auto hist = preimage_histogram(counts);
            record("|f^-1(0)| = 3", counts[0] == 3, std::to_string(counts[0]));
            record("|f^-1(1)| = q+1", counts[1] == q + 1, std::to_string(counts[1]));
            record("|f^-1(c)| <= 2 for c not in GF(2)", max_other <= 2, std::to_string(max_other));
            record("preimage mass = q^2", hist.mass() == field.size());
            record("four-sum lemma", four_sum_nonzero(field));
            if (field.size() <= oracle::kPairCap) {
                const std::uint64_t brute = oracle::brute_N4(field, default_exponent(m));
                record("brute_N4 = N4_closed", BigInt(brute) == n4, std::to_string(brute) + " vs " + n4.str());
            }
        }

        auto& r = out.report.results;
        r["computed"] = spectrum_json(computed);
        auto pj = nlohmann::json::array();
        for (const auto& [i, w] : pe) pj.push_back({{"delta", big_to_json(i)}, {"count", big_to_json(w)}});
        r["predicted"] = pj;
        r["checks"] = checks;
        r["diff"] = diff;
        r["verified"] = all_ok;
        out.report.identities_ok = computed.satisfies_identities();
        out.exit_code = all_ok ? kOk : kMismatch;
    });
}

// ---------------------------------------------------------------------------
// trinomial

struct TrinomialArgs {
    int m = 0;
    std::optional<std::string> c;
    bool histogram = false;
    unsigned threads = 1;
};

inline CommandResult cmd_trinomial(const TrinomialArgs& args) {
    return run_guarded("trinomial", [&](CommandResult& out) {
        require_half_degree(args.m);
        const FieldSpec field(2 * args.m);
        out.report.inputs = {{"m", args.m}, {"n", 2 * args.m}, {"modulus", field.modulus_hex()}};
        if (args.m % 2 != 0) out.report.warnings.push_back("m is odd: outside theorem hypothesis");
        auto& r = out.report.results;
        if (args.c) {
            const Element c{static_cast<std::uint32_t>(parse_hex(*args.c))};
            if (parse_hex(*args.c) >= field.size()) throw std::invalid_argument("element " + *args.c + " is not in the field");
            out.report.inputs["c"] = element_hex(c);
            r["preimage_count"] = preimage_count(field, c);
        }
        if (args.histogram || !args.c) {
            const auto counts = preimage_counts(field, args.threads);
            const auto hist = preimage_histogram(counts);
            auto arr = nlohmann::json::array();
            for (auto [k, n] : hist.sizes) arr.push_back({{"preimage_size", k}, {"values", n}});
            std::uint64_t max_other = 0;
            for (std::size_t c = 2; c < counts.size(); ++c) max_other = std::max<std::uint64_t>(max_other, counts[c]);
            r["histogram"] = arr;
            r["count_at_0"] = counts[0];
            r["count_at_1"] = counts[1];
            r["max_other"] = max_other;
            r["mass"] = hist.mass();
            out.report.identities_ok = hist.mass() == field.size();
        }
    });
}

// ---------------------------------------------------------------------------
// tau

struct TauArgs {
    int m_from = 1;
    int m_to = 10;
};

inline CommandResult cmd_tau(const TauArgs& args) {
    return run_guarded("tau", [&](CommandResult& out) {
        if (args.m_from < 1 || args.m_to < args.m_from) throw std::invalid_argument("need 1 <= m_from <= m_to");
        out.report.inputs = {{"m_from", args.m_from}, {"m_to", args.m_to}};
        auto arr = nlohmann::json::array();
        bool agree = true;
        for (int m = args.m_from; m <= args.m_to; ++m) {
            const DyadicRational t = tau(m);
            const bool same = t == tau_binomial(m);
            agree = agree && same;
            arr.push_back({{"m", m}, {"tau", t.to_string()}, {"s_m", big_to_json(tau_scaled(m))}, {"binomial_agrees", same}});
        }
        out.report.results["tau"] = arr;
        out.report.identities_ok = agree;
        if (!agree) throw IdentityViolation("recurrence and binomial sum disagree");
    });
}

// ---------------------------------------------------------------------------
// catalog

struct CatalogArgs {
    std::optional<int> n;
    std::optional<std::int64_t> d;
};

inline CommandResult cmd_catalog(const CatalogArgs& args) {
    return run_guarded("catalog", [&](CommandResult& out) {
        auto& r = out.report.results;
        if (args.d && !args.n) throw std::invalid_argument("--d requires --n");
        if (!args.n) {
            r["entries"] = catalog::export_json();
            return;
        }
        if (*args.n < 1 || *args.n > catalog::kMaxCatalogDegree)
            throw std::invalid_argument("n must satisfy 1 <= n <= " + std::to_string(catalog::kMaxCatalogDegree));
        out.report.inputs["n"] = *args.n;
        auto arr = nlohmann::json::array();
        if (args.d) {
            out.report.inputs["d"] = *args.d;
            for (const auto& mt : catalog::match(*args.n, *args.d)) arr.push_back(catalog::to_json(mt));
            r["matches"] = arr;
        } else {
            for (const auto& e : catalog::entries())
                for (const auto& mem : e.members(*args.n)) arr.push_back(catalog::to_json(catalog::Match{&e, mem}));
            r["members"] = arr;
        }
    });
}

// ---------------------------------------------------------------------------
// rendering

enum class Format { Json, Table, Csv };

inline Format parse_format(const std::string& s) {
    if (s == "json") return Format::Json;
    if (s == "table") return Format::Table;
    if (s == "csv") return Format::Csv;
    throw std::invalid_argument("unknown format '" + s + "'");
}

namespace detail {

inline std::string scalar(const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline bool is_record_array(const nlohmann::json& v) {
    return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](auto& e) { return e.is_object(); });
}

inline std::vector<std::string> columns(const nlohmann::json& arr) {
    std::vector<std::string> cols;
    for (const auto& row : arr)
        for (auto it = row.begin(); it != row.end(); ++it)
            if (std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
    // Key columns lead; the rest stay in json key order.
    static const std::vector<std::string> leading = {"m", "delta", "preimage_size", "check", "family_id"};
    std::stable_partition(cols.begin(), cols.end(), [](const std::string& c) {
        return std::find(leading.begin(), leading.end(), c) != leading.end();
    });
    return cols;
}

inline std::string csv_cell(const nlohmann::json& v) {
    std::string s = v.is_null() ? "" : scalar(v);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

}  // namespace detail

inline std::string render(const RunReport& report, Format format) {
    if (format == Format::Json) return nlohmann::json(report).dump(2) + "\n";
    std::ostringstream os;
    const bool csv = format == Format::Csv;
    const std::string sep = csv ? "," : "  ";
    auto line = [&](const std::string& k, const std::string& v) {
        if (csv)
            os << detail::csv_cell(k) << ',' << detail::csv_cell(v) << '\n';
        else
            os << k << ": " << v << '\n';
    };
    line("command", report.command);
    for (auto it = report.inputs.begin(); it != report.inputs.end(); ++it) line(it.key(), detail::scalar(it.value()));
    for (const auto& w : report.warnings) line("warning", w);
    std::vector<std::pair<std::string, nlohmann::json>> tables;
    for (auto it = report.results.begin(); it != report.results.end(); ++it) {
        if (detail::is_record_array(it.value()))
            tables.emplace_back(it.key(), it.value());
        else
            line(it.key(), detail::scalar(it.value()));
    }
    line("identities_ok", report.identities_ok ? "true" : "false");
    for (const auto& [name, arr] : tables) {
        os << (csv ? "# " : "\n[") << name << (csv ? "" : "]") << '\n';
        const auto cols = detail::columns(arr);
        std::vector<std::size_t> width(cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            width[c] = cols[c].size();
            for (const auto& row : arr)
                if (row.contains(cols[c])) width[c] = std::max(width[c], detail::scalar(row[cols[c]]).size());
        }
        auto emit = [&](auto cell) {
            for (std::size_t c = 0; c < cols.size(); ++c) {
                std::string v = cell(c);
                if (csv) {
                    os << (c ? "," : "") << detail::csv_cell(v);
                } else {
                    os << (c ? sep : "") << v << std::string(width[c] - std::min(width[c], v.size()), ' ');
                }
            }
            os << '\n';
        };
        emit([&](std::size_t c) { return cols[c]; });
        for (const auto& row : arr)
            emit([&](std::size_t c) { return row.contains(cols[c]) ? detail::scalar(row[cols[c]]) : std::string(); });
    }
    return os.str();
}

}  // namespace ffspec::cli
