#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// into the library beyond plain data types.

#include <cstdint>
#include <map>
#include <vector>

namespace ffspec::oracles {

inline int poly_degree(std::uint64_t p) {
    int d = -1;
    while (p) {
        p >>= 1;
        ++d;
    }
    return d;
}

inline std::uint64_t poly_rem(std::uint64_t a, std::uint64_t b) {
    const int db = poly_degree(b);
    while (poly_degree(a) >= db) a ^= b << (poly_degree(a) - db);
    return a;
}

/// Trial division by every polynomial of degree 1 .. deg(f)/2.
inline bool irreducible_by_trial_division(std::uint64_t f) {
    const int n = poly_degree(f);
    if (n < 1) return false;
    for (std::uint64_t g = 2; poly_degree(g) <= n / 2; ++g)
        if (poly_rem(f, g) == 0) return false;
    return true;
}

/// Smallest irreducible mask of degree n, scanning 2^n .. 2^(n+1)-1 and
/// skipping x itself at n = 1.
inline std::uint64_t smallest_irreducible(int n) {
    for (std::uint64_t f = std::uint64_t{1} << n; f < (std::uint64_t{2} << n); ++f)
        if ((f & 1) && irreducible_by_trial_division(f)) return f;
    return 0;
}

/// Schoolbook GF(2)[x] product reduced mod `modulus`.
inline std::uint32_t naive_mul(std::uint32_t a, std::uint32_t b, std::uint64_t modulus) {
    std::uint64_t prod = 0;
    for (int i = 0; i < 32; ++i)
        if ((b >> i) & 1) prod ^= std::uint64_t{a} << i;
    return static_cast<std::uint32_t>(poly_rem(prod, modulus));
}

inline std::uint32_t naive_pow(std::uint32_t a, std::uint64_t e, std::uint64_t modulus) {
    std::uint32_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = naive_mul(r, a, modulus);
    return r;
}

/// Multiplicative order by repeated multiplication.
inline std::uint64_t naive_order(std::uint32_t a, std::uint64_t modulus) {
    std::uint32_t x = a;
    std::uint64_t k = 1;
    while (x != 1) {
        x = naive_mul(x, a, modulus);
        ++k;
    }
    return k;
}

/// a^d through repeated multiplication; 0^d = 0 for d > 0.
inline std::vector<std::uint32_t> naive_power_table(int n, std::uint64_t modulus, std::uint64_t d) {
    std::vector<std::uint32_t> t(std::size_t{1} << n);
    for (std::uint32_t x = 0; x < t.size(); ++x) {
        std::uint32_t r = 1;
        for (std::uint64_t i = 0; i < d; ++i) r = naive_mul(r, x, modulus);
        t[x] = r;
    }
    return t;
}

/// delta(1, b) histogram from a value table.
inline std::map<std::uint64_t, std::uint64_t> naive_spectrum(const std::vector<std::uint32_t>& table) {
    std::vector<std::uint64_t> row(table.size(), 0);
    for (std::uint32_t b = 0; b < table.size(); ++b)
        for (std::uint32_t x = 0; x < table.size(); ++x)
            if ((table[x ^ 1] ^ table[x]) == b) ++row[b];
    std::map<std::uint64_t, std::uint64_t> h;
    for (auto v : row) ++h[v];
    return h;
}

}  // namespace ffspec::oracles
