#pragma once

// Registry of power-map families over GF(2^n) with known differential
// spectra, and matching of a concrete (n, d) against it.
//
// Exponents are handled as residues mod M = 2^n - 1. A family member matches d
// when its exponent lies in the cyclotomic class {d * 2^k mod M}; spectra are
// invariant along that class.

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "powerfn.hpp"

namespace ffspec::catalog {

inline constexpr int kMaxCatalogDegree = 32;

struct FamilyMember {
    std::map<std::string, std::int64_t> params;
    std::uint64_t exponent = 0;  // residue mod 2^n - 1
    std::vector<std::uint64_t> uniformity_candidates;
};

struct CatalogEntry {
    std::string family_id;
    std::string exponent_rule;
    std::string condition;
    std::string uniformity_rule;
    Locality locality = Locality::None;
    std::string reference;
    /// All parameterizations satisfying the condition at degree n.
    std::function<std::vector<FamilyMember>(int n)> members;
};

namespace detail {

/// 2^k mod (2^n - 1) for k >= 0.
inline std::uint64_t pow2_mod(std::uint64_t k, int n) {
    const std::uint64_t M = (std::uint64_t{1} << n) - 1;
    return (std::uint64_t{1} << (k % n)) % M;
}

inline std::uint64_t mod_M(std::int64_t v, int n) {
    const std::int64_t M = (std::int64_t{1} << n) - 1;
    std::int64_t r = v % M;
    return static_cast<std::uint64_t>(r < 0 ? r + M : r);
}

inline std::uint64_t pow2(int k) { return std::uint64_t{1} << k; }

inline std::optional<std::uint64_t> inverse_mod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        const std::int64_t quot = r / new_r;
        t = std::exchange(new_t, t - quot * new_t);
        r = std::exchange(new_r, r - quot * new_r);
    }
    if (r != 1) return std::nullopt;
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

inline FamilyMember member(std::map<std::string, std::int64_t> params, std::uint64_t exponent,
                           std::vector<std::uint64_t> candidates) {
    return {std::move(params), exponent, std::move(candidates)};
}

inline std::vector<CatalogEntry> build_entries() {
    using V = std::vector<FamilyMember>;
    std::vector<CatalogEntry> e;

    e.push_back({"gold", "2^t+1", "gcd(t,n)=s", "2^s", Locality::None, "BCC10", [](int n) {
                     V out;
                     for (int t = 1; t < n; ++t) {
                         const int s = std::gcd(t, n);
                         out.push_back(member({{"t", t}, {"s", s}}, mod_M(static_cast<std::int64_t>(pow2(t) + 1), n),
                                              {pow2(s)}));
                     }
                     return out;
                 }});
    e.push_back({"kasami", "2^(2t)-2^t+1", "gcd(t,n)=s, n/s odd", "2^s", Locality::None, "BCC10", [](int n) {
                     V out;
                     for (int t = 1; t < n; ++t) {
                         const int s = std::gcd(t, n);
                         if ((n / s) % 2 == 0) continue;
                         const std::int64_t d = static_cast<std::int64_t>(pow2_mod(2 * t, n)) -
                                                static_cast<std::int64_t>(pow2_mod(t, n)) + 1;
                         out.push_back(member({{"t", t}, {"s", s}}, mod_M(d, n), {pow2(s)}));
                     }
                     return out;
                 }});
    e.push_back({"inverse", "2^n-2", "n>=2", "2 or 4", Locality::None, "BCC10", [](int n) {
                     V out;
                     if (n >= 2) out.push_back(member({}, mod_M(static_cast<std::int64_t>(pow2(n)) - 2, n), {2, 4}));
                     return out;
                 }});
    e.push_back({"bracken-leander", "2^(2k)+2^k+1", "n=4k", "4", Locality::None, "BCC10, XY17", [](int n) {
                     V out;
                     if (n % 4 == 0) {
                         const int k = n / 4;
                         out.push_back(member({{"k", k}}, mod_M(static_cast<std::int64_t>(pow2(2 * k) + pow2(k) + 1), n),
                                              {4}));
                     }
                     return out;
                 }});
    e.push_back({"mersenne-3-or-n-2", "2^t-1", "t=3, n-2", "6 or 8", Locality::None, "BCC11", [](int n) {
                     V out;
                     std::set<int> ts;
                     for (int t : {3, n - 2})
                         if (t >= 1 && t < n) ts.insert(t);
                     for (int t : ts) out.push_back(member({{"t", t}}, mod_M(static_cast<std::int64_t>(pow2(t)) - 1, n), {6, 8}));
                     return out;
                 }});
    e.push_back({"mersenne-half", "2^t-1", "t=n/2, n even", "2^(n/2)-2", Locality::LocallyApn, "BCC11", [](int n) {
                     V out;
                     if (n % 2 == 0) {
                         const int t = n / 2;
                         out.push_back(member({{"t", t}}, mod_M(static_cast<std::int64_t>(pow2(t)) - 1, n), {pow2(t) - 2}));
                     }
                     return out;
                 }});
    e.push_back({"mersenne-half-plus-one", "2^t-1", "t=n/2+1, n even", "2^(n/2)", Locality::LocallyApn, "BCC11",
                 [](int n) {
                     V out;
                     if (n % 2 == 0) {
                         const int t = n / 2 + 1;
                         out.push_back(member({{"t", t}}, mod_M(static_cast<std::int64_t>(pow2(t)) - 1, n), {pow2(n / 2)}));
                     }
                     return out;
                 }});
    e.push_back({"mersenne-odd", "2^t-1", "t=(n-1)/2, (n+3)/2, n odd", "6 or 8", Locality::None, "BP14", [](int n) {
                     V out;
                     if (n % 2 == 1) {
                         std::set<int> ts;
                         for (int t : {(n - 1) / 2, (n + 3) / 2})
                             if (t >= 1 && t < n) ts.insert(t);
                         for (int t : ts)
                             out.push_back(member({{"t", t}}, mod_M(static_cast<std::int64_t>(pow2(t)) - 1, n), {6, 8}));
                     }
                     return out;
                 }});
    e.push_back({"odd-m-three-term", "2^m+2^((m+1)/2)+1", "n=2m, m>=5 odd", "8", Locality::None, "XYY18", [](int n) {
                     V out;
                     const int m = n / 2;
                     if (n % 2 == 0 && m >= 5 && m % 2 == 1)
                         out.push_back(member({{"m", m}}, mod_M(static_cast<std::int64_t>(pow2(m) + pow2((m + 1) / 2) + 1), n),
                                              {8}));
                     return out;
                 }});
    e.push_back({"odd-m-plus-three", "2^(m+1)+3", "n=2m, m>=5 odd", "8", Locality::None, "XYY18", [](int n) {
                     V out;
                     const int m = n / 2;
                     if (n % 2 == 0 && m >= 5 && m % 2 == 1)
                         out.push_back(member({{"m", m}}, mod_M(static_cast<std::int64_t>(pow2(m + 1) + 3), n), {8}));
                     return out;
                 }});
    e.push_back({"four-k-three-term", "2^(3k)+2^(2k)+2^k-1", "n=4k", "2^(2k)", Locality::None, "TLWZTJ23", [](int n) {
                     V out;
                     if (n % 4 == 0) {
                         const int k = n / 4;
                         out.push_back(member({{"k", k}},
                                              mod_M(static_cast<std::int64_t>(pow2(3 * k) + pow2(2 * k) + pow2(k)) - 1, n),
                                              {pow2(2 * k)}));
                     }
                     return out;
                 }});
    e.push_back({"k-times-q-minus-1", "k(2^m-1)", "n=2m, gcd(k,2^m+1)=1", "2^m-2", Locality::LocallyApn, "HLXZT23",
                 [](int n) {
                     V out;
                     if (n % 2 != 0) return out;
                     const int m = n / 2;
                     const std::uint64_t q = pow2(m);
                     // k only matters modulo 2^m + 1.
                     for (std::uint64_t k = 1; k <= q; ++k)
                         if (std::gcd(k, q + 1) == 1)
                             out.push_back(member({{"m", m}, {"k", static_cast<std::int64_t>(k)}}, (k * (q - 1)) % (pow2(n) - 1),
                                                  {q - 2}));
                     return out;
                 }});
    e.push_back({"q-minus-1-over-2k-plus-1", "(2^m-1)/(2^k+1)+1", "n=2m, gcd(k,m)=1", "2^m", Locality::LocallyApn,
                 "XML23", [](int n) {
                     V out;
                     if (n % 2 != 0) return out;
                     const int m = n / 2;
                     const std::uint64_t q = pow2(m);
                     for (int k = 1; k <= m; ++k) {
                         if (std::gcd(k, m) != 1) continue;
                         // (2^m-1)/(2^k+1) as an element of Z/(2^n-1): (2^m-1) times an
                         // inverse of 2^k+1 taken mod 2^m+1.
                         const auto inv = inverse_mod(pow2(k) + 1, q + 1);
                         if (!inv) continue;
                         out.push_back(member({{"m", m}, {"k", k}}, ((q - 1) * *inv + 1) % (pow2(n) - 1), {q}));
                     }
                     return out;
                 }});
    e.push_back({"q-plus-three", "2^m+3", "n=2m", "2^m (locally differentially 4-uniform) or 2^m+2", Locality::None,
                 "li2023differential", [](int n) {
                     V out;
                     if (n % 2 == 0) {
                         const int m = n / 2;
                         out.push_back(member({{"m", m}}, mod_M(static_cast<std::int64_t>(pow2(m) + 3), n),
                                              {pow2(m), pow2(m) + 2}));
                     }
                     return out;
                 }});
    e.push_back({"3q-minus-2", "3*2^m-2", "n=2m, m>=4 even", "2^m", Locality::Locally4Uniform, "new", [](int n) {
                     V out;
                     const int m = n / 2;
                     if (n % 2 == 0 && m >= 4 && m % 2 == 0)
                         out.push_back(member({{"m", m}}, mod_M(static_cast<std::int64_t>(3 * pow2(m)) - 2, n), {pow2(m)}));
                     return out;
                 }});
    return e;
}

}  // namespace detail

/// Exponent to evaluate a member with. Residue 0 stands for a positive
/// multiple of 2^n - 1 (e.g. 2^1 + 1 at n = 2), i.e. the unit indicator.
inline std::int64_t evaluation_exponent(const FamilyMember& m, int n) {
    return m.exponent == 0 ? (std::int64_t{1} << n) - 1 : static_cast<std::int64_t>(m.exponent);
}

inline const std::vector<CatalogEntry>& entries() {
    static const std::vector<CatalogEntry> table = detail::build_entries();
    return table;
}

/// {d * 2^k mod (2^n - 1) : 0 <= k < n}.
inline std::set<std::uint64_t> cyclotomic_class(std::int64_t d, int n) {
    if (n < 1 || n > kMaxCatalogDegree) throw std::invalid_argument("catalog degree out of range");
    const std::uint64_t M = (std::uint64_t{1} << n) - 1;
    std::set<std::uint64_t> out;
    std::uint64_t r = detail::mod_M(d, n);
    for (int k = 0; k < n; ++k) {
        out.insert(r);
        r = (r * 2) % M;
    }
    return out;
}

struct Match {
    const CatalogEntry* entry;
    FamilyMember member;
};

inline std::vector<Match> match(int n, std::int64_t d) {
    const auto cls = cyclotomic_class(d, n);
    std::vector<Match> out;
    for (const auto& entry : entries())
        for (auto& m : entry.members(n))
            if (cls.contains(m.exponent)) out.push_back({&entry, std::move(m)});
    return out;
}

inline nlohmann::json to_json(const CatalogEntry& e) {
    return {{"family_id", e.family_id}, {"rule", e.exponent_rule},         {"condition", e.condition},
            {"uniformity", e.uniformity_rule}, {"locality", to_string(e.locality)}, {"reference", e.reference}};
}

inline nlohmann::json to_json(const Match& m) {
    nlohmann::json j = to_json(*m.entry);
    j["params"] = m.member.params;
    j["exponent"] = m.member.exponent;
    j["uniformity_candidates"] = m.member.uniformity_candidates;
    return j;
}

inline nlohmann::json export_json() {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries()) arr.push_back(to_json(e));
    return arr;
}

}  // namespace ffspec::catalog
