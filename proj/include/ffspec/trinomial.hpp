#pragma once

// The trinomial f(x) = x^2 + x^(1-q) + x^(2-q) over GF(q^2), q = 2^m, with
// 0^(-1) = 0, and the unit-circle utilities used alongside it.

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gf2ext.hpp"
#include "parallel.hpp"

namespace ffspec {

/// m for a field GF(2^(2m)); throws for odd degree.
inline int half_degree(const FieldSpec& field) {
    if (field.degree() % 2 != 0) throw std::invalid_argument("trinomial analysis requires an even-degree field");
    return field.degree() / 2;
}

/// The preimage theorem is stated for even m only; odd m is exploratory.
inline bool trinomial_theorem_applies(const FieldSpec& field) { return half_degree(field) % 2 == 0; }

/// f(x) = x^2 + x^(1-q) + x^(2-q). f(0) = 0 for every m, including m = 1
/// where the last term is x^0.
inline Element eval_trinomial(const FieldSpec& field, Element x) {
    const std::int64_t q = std::int64_t{1} << half_degree(field);
    if (!field.contains(x)) throw std::invalid_argument("element is not in the field");
    if (x.bits == 0) return kZero;
    const Element sq = field.mul(x, x);
    return field.add(sq, field.add(field.pow(x, 1 - q), field.pow(x, 2 - q)));
}

/// counts[c] = |f^-1(c)| for every c.
inline std::vector<std::uint32_t> preimage_counts(const FieldSpec& field, unsigned workers = 1) {
    const std::int64_t q = std::int64_t{1} << half_degree(field);
    const std::uint32_t size = field.size();
    const auto& exp = field.exp_table();
    const auto& log = field.log_table();
    const std::uint64_t order = field.order();
    const std::uint64_t e1 = field.reduce(1 - q), e2 = field.reduce(2 - q);
    workers = detail::worker_count(workers, size);
    std::vector<std::vector<std::uint32_t>> partial(workers, std::vector<std::uint32_t>(size, 0));
    detail::for_each_chunk(size, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
        auto& counts = partial[w];
        for (std::uint64_t x = begin; x < end; ++x) {
            if (x == 0) {
                ++counts[0];
                continue;
            }
            const std::uint64_t l = log[x];
            const std::uint32_t v =
                exp[(2 * l) % order].bits ^ exp[(l * e1) % order].bits ^ exp[(l * e2) % order].bits;
            ++counts[v];
        }
    });
    auto counts = std::move(partial[0]);
    for (unsigned w = 1; w < workers; ++w)
        for (std::uint32_t c = 0; c < size; ++c) counts[c] += partial[w][c];
    return counts;
}

/// |f^-1(c)| by enumeration.
inline std::uint64_t preimage_count(const FieldSpec& field, Element c) {
    if (!field.contains(c)) throw std::invalid_argument("element is not in the field");
    std::uint64_t n = 0;
    for (std::uint32_t x = 0; x < field.size(); ++x)
        if (eval_trinomial(field, Element{x}) == c) ++n;
    return n;
}

struct PreimageHistogram {
    /// preimage size k -> number of c with |f^-1(c)| = k
    std::map<std::uint64_t, std::uint64_t> sizes;
    std::uint64_t field_size = 0;

    std::uint64_t mass() const {
        std::uint64_t s = 0;
        for (auto [k, n] : sizes) s += k * n;
        return s;
    }
    std::uint64_t count(std::uint64_t k) const {
        auto it = sizes.find(k);
        return it == sizes.end() ? 0 : it->second;
    }
};

inline PreimageHistogram preimage_histogram(std::span<const std::uint32_t> counts) {
    PreimageHistogram h;
    h.field_size = counts.size();
    for (std::uint32_t k : counts) ++h.sizes[k];
    return h;
}

inline PreimageHistogram preimage_histogram(const FieldSpec& field, unsigned workers = 1) {
    return preimage_histogram(preimage_counts(field, workers));
}

struct UnitDecomposition {
    Element y;  // in GF(q)^*
    Element z;  // in U_{q+1}
};

/// x = y*z with y the square root of the norm x^(q+1) and z = x / y.
inline UnitDecomposition decompose_unit(const FieldSpec& field, Element x) {
    const std::int64_t q = std::int64_t{1} << half_degree(field);
    if (x.bits == 0) throw std::invalid_argument("decompose_unit requires x != 0");
    const Element y = field.sqrt(field.pow(x, q + 1));
    return {y, field.mul(x, field.inv(y))};
}

/// True iff no four distinct elements of U_{q+1} sum to zero.
///
/// For q+1 <= 65 every 4-subset is enumerated. Above that the equivalent
/// pair form is scanned: u1+u2+u3+u4 = 0 with distinct u's exactly when two
/// different unordered pairs share the sum u1+u2 = u3+u4 (pairs sharing one
/// element cannot collide).
inline bool four_sum_nonzero(const FieldSpec& field) {
    const std::vector<Element> u = field.subgroup_u();
    const std::size_t k = u.size();
    if (k <= 65) {
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b) {
                const std::uint32_t ab = u[a].bits ^ u[b].bits;
                for (std::size_t c = b + 1; c < k; ++c)
                    for (std::size_t d = c + 1; d < k; ++d)
                        if ((ab ^ u[c].bits ^ u[d].bits) == 0) return false;
            }
        return true;
    }
    std::vector<std::uint8_t> seen(field.size(), 0);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            auto& slot = seen[u[a].bits ^ u[b].bits];
            if (slot) return false;
            slot = 1;
        }
    return true;
}

}  // namespace ffspec
