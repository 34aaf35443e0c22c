#pragma once

// Brute-force counting oracles. These use only FieldSpec primitives so they
// stay independent of the powerfn and closedform code they validate.
//
// Every solution count below is for the system
//   x_1 + ... + x_r = 0,   x_1^d + ... + x_r^d = 0
// over GF(Q). In characteristic 2 the r = 4 system splits into two pairs with
// equal (sum, power-sum), which is what the pair-histogram method exploits.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "closedform.hpp"
#include "gf2ext.hpp"
#include "powerfn.hpp"

namespace ffspec::oracle {

enum class CountMethod {
    Direct,         // explicit loops, O(Q^3); Q <= 2^8
    PairHistogram,  // (sum, power-sum) pair histogram, O(Q^2); Q <= 2^12
};

inline constexpr std::uint32_t kDirectCap = 1u << 8;
inline constexpr std::uint32_t kPairCap = 1u << 12;

namespace detail {

inline void check_cap(const FieldSpec& field, CountMethod method) {
    const std::uint32_t cap = method == CountMethod::Direct ? kDirectCap : kPairCap;
    if (field.size() > cap)
        throw std::invalid_argument("field of size " + std::to_string(field.size()) + " exceeds the " +
                                    (method == CountMethod::Direct ? "direct" : "pair-histogram") +
                                    " method cap of " + std::to_string(cap));
}

inline std::vector<std::uint32_t> power_values(const FieldSpec& field, std::int64_t d) {
    std::vector<std::uint32_t> v(field.size());
    for (std::uint32_t x = 0; x < field.size(); ++x) v[x] = field.pow(Element{x}, d).bits;
    return v;
}

}  // namespace detail

/// Counts of ordered pairs (x1, x2) keyed by (x1 + x2, x1^d + x2^d).
class PairHistogram {
  public:
    PairHistogram(const FieldSpec& field, std::int64_t d, bool include_zero) : size_(field.size()) {
        detail::check_cap(field, CountMethod::PairHistogram);
        const auto pw = detail::power_values(field, d);
        counts_.assign(std::size_t{size_} * size_, 0);
        const std::uint32_t first = include_zero ? 0 : 1;
        for (std::uint32_t x1 = first; x1 < size_; ++x1)
            for (std::uint32_t x2 = first; x2 < size_; ++x2)
                ++counts_[std::size_t{x1 ^ x2} * size_ + (pw[x1] ^ pw[x2])];
    }

    std::uint32_t at(Element s, Element t) const { return counts_.at(std::size_t{s.bits} * size_ + t.bits); }

    std::uint64_t total() const {
        std::uint64_t n = 0;
        for (auto c : counts_) n += c;
        return n;
    }

    /// Number of quadruples with (x1+x2, x1^d+x2^d) = (x3+x4, x3^d+x4^d).
    std::uint64_t sum_of_squares() const {
        std::uint64_t n = 0;
        for (std::uint64_t c : counts_) n += c * c;
        return n;
    }

  private:
    std::uint32_t size_;
    std::vector<std::uint32_t> counts_;
};

/// n_r over the nonzero elements, r in {3, 4}.
inline std::uint64_t brute_nr(const FieldSpec& field, int r, std::int64_t d,
                              CountMethod method = CountMethod::PairHistogram) {
    if (r != 3 && r != 4) throw std::invalid_argument("brute_nr supports r = 3 or 4");
    detail::check_cap(field, method);
    const std::uint32_t size = field.size();
    const auto pw = detail::power_values(field, d);
    std::uint64_t count = 0;
    if (r == 3) {
        if (method == CountMethod::Direct) {
            for (std::uint32_t a = 1; a < size; ++a)
                for (std::uint32_t b = 1; b < size; ++b)
                    for (std::uint32_t c = 1; c < size; ++c)
                        if ((a ^ b ^ c) == 0 && (pw[a] ^ pw[b] ^ pw[c]) == 0) ++count;
        } else {
            for (std::uint32_t a = 1; a < size; ++a)
                for (std::uint32_t b = 1; b < size; ++b) {
                    const std::uint32_t c = a ^ b;
                    if (c != 0 && (pw[a] ^ pw[b] ^ pw[c]) == 0) ++count;
                }
        }
        return count;
    }
    if (method == CountMethod::PairHistogram) return PairHistogram(field, d, false).sum_of_squares();
    for (std::uint32_t a = 1; a < size; ++a)
        for (std::uint32_t b = 1; b < size; ++b)
            for (std::uint32_t c = 1; c < size; ++c) {
                const std::uint32_t e = a ^ b ^ c;
                if (e != 0 && (pw[a] ^ pw[b] ^ pw[c] ^ pw[e]) == 0) ++count;
            }
    return count;
}

/// N_4: solutions in GF(Q)^4, zeros allowed.
inline std::uint64_t brute_N4(const FieldSpec& field, std::int64_t d,
                              CountMethod method = CountMethod::PairHistogram) {
    detail::check_cap(field, method);
    if (method == CountMethod::PairHistogram) return PairHistogram(field, d, true).sum_of_squares();
    const std::uint32_t size = field.size();
    const auto pw = detail::power_values(field, d);
    std::uint64_t count = 0;
    for (std::uint32_t a = 0; a < size; ++a)
        for (std::uint32_t b = 0; b < size; ++b)
            for (std::uint32_t c = 0; c < size; ++c)
                if ((pw[a] ^ pw[b] ^ pw[c] ^ pw[a ^ b ^ c]) == 0) ++count;
    return count;
}

/// N_4 = Q^2 + (Q - 1) * sum i^2 omega_i.
inline BigInt N4_from_spectrum(const Spectrum& s) {
    const BigInt Q = s.field_size();
    return Q * Q + (Q - 1) * BigInt(s.second_moment());
}

/// |{x : (x+1)^d + x^d = b}| through repeated FieldSpec::pow, no tables.
inline std::uint64_t brute_delta(const FieldSpec& field, std::int64_t d, Element b) {
    if (!field.contains(b)) throw std::invalid_argument("element is not in the field");
    std::uint64_t count = 0;
    for (std::uint32_t x = 0; x < field.size(); ++x)
        if ((field.pow(Element{x ^ 1u}, d).bits ^ field.pow(Element{x}, d).bits) == b.bits) ++count;
    return count;
}

}  // namespace ffspec::oracle
