#pragma once

// Differential analysis of power maps x -> x^d over GF(2^n).
//
// For a power map every DDT entry reduces to the row a = 1:
// delta(a, b) = delta(1, b / a^d), so one row of Q counts determines the
// differential uniformity and the differential spectrum.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gf2ext.hpp"
#include "parallel.hpp"

namespace ffspec {

/// d_raw mod (2^n - 1), except that nonzero multiples of 2^n - 1 map to
/// 2^n - 1 so the unit indicator x^(Q-1) keeps 0 -> 0.
inline std::uint64_t reduce_exponent(std::int64_t d_raw, int n) {
    if (n < 1 || n > 62) throw std::invalid_argument("degree out of range");
    const std::int64_t order = (std::int64_t{1} << n) - 1;
    std::int64_t r = d_raw % order;
    if (r < 0) r += order;
    if (r == 0 && d_raw != 0) r = order;
    return static_cast<std::uint64_t>(r);
}

class PowerFunction {
  public:
    PowerFunction(const FieldSpec& field, std::int64_t d_raw)
        : field_(&field), d_raw_(d_raw), d_(reduce_exponent(d_raw, field.degree())) {}

    const FieldSpec& field() const noexcept { return *field_; }
    std::int64_t raw_exponent() const noexcept { return d_raw_; }
    std::uint64_t exponent() const noexcept { return d_; }

    Element operator()(Element x) const {
        if (x.bits == 0) return d_ == 0 ? kOne : kZero;
        const std::uint64_t l = field_->log(x);
        return field_->exp((l * (d_ % field_->order())) % field_->order());
    }

    /// T[x] = x^d for every x, in one pass over the discrete logs.
    std::vector<Element> value_table() const {
        const auto& exp = field_->exp_table();
        const std::uint32_t order = field_->order();
        const std::uint32_t step = static_cast<std::uint32_t>(d_ % order);
        std::vector<Element> table(field_->size());
        table[0] = d_ == 0 ? kOne : kZero;
        std::uint32_t image_log = 0;
        for (std::uint32_t k = 0; k < order; ++k) {
            table[exp[k].bits] = exp[image_log];
            image_log += step;
            if (image_log >= order) image_log -= order;
        }
        return table;
    }

  private:
    const FieldSpec* field_;
    std::int64_t d_raw_;
    std::uint64_t d_;
};

/// delta(1, b) for every b, indexed by b.bits.
using DdtRow = std::vector<std::uint32_t>;

/// Sparse differential spectrum {i -> omega_i}, only omega_i > 0 stored.
class Spectrum {
  public:
    using Entries = std::map<std::uint64_t, std::uint64_t>;

    Spectrum() = default;
    Spectrum(Entries entries, std::uint64_t field_size) : field_size_(field_size) {
        for (auto [i, w] : entries)
            if (w > 0) entries_.emplace(i, w);
    }

    static Spectrum from_row(std::span<const std::uint32_t> row) {
        Entries e;
        for (std::uint32_t v : row) ++e[v];
        return Spectrum(std::move(e), row.size());
    }

    const Entries& entries() const noexcept { return entries_; }
    std::uint64_t field_size() const noexcept { return field_size_; }

    std::uint64_t count(std::uint64_t i) const {
        auto it = entries_.find(i);
        return it == entries_.end() ? 0 : it->second;
    }

    /// Largest multiplicity present, i.e. the differential uniformity.
    std::uint64_t uniformity() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (auto [i, w] : entries_) s += w;
        return s;
    }
    std::uint64_t first_moment() const {
        std::uint64_t s = 0;
        for (auto [i, w] : entries_) s += i * w;
        return s;
    }
    /// sum i^2 omega_i; bounded by Q^2, so it fits for every supported n.
    std::uint64_t second_moment() const {
        std::uint64_t s = 0;
        for (auto [i, w] : entries_) s += i * i * w;
        return s;
    }

    /// sum omega_i = Q and sum i*omega_i = Q.
    bool satisfies_identities() const { return total() == field_size_ && first_moment() == field_size_; }

    bool all_even() const {
        return std::all_of(entries_.begin(), entries_.end(), [](auto& e) { return e.first % 2 == 0; });
    }

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

  private:
    Entries entries_;
    std::uint64_t field_size_ = 0;
};

/// delta(1, b) for all b. Workers histogram private copies over contiguous
/// x-chunks and the integer counts are summed afterwards, so the result does
/// not depend on `workers`.
inline DdtRow ddt_row(const PowerFunction& f, unsigned workers = 1) {
    const std::vector<Element> table = f.value_table();
    const std::uint32_t size = f.field().size();
    workers = detail::worker_count(workers, size);
    std::vector<DdtRow> partial(workers, DdtRow(size, 0));
    detail::for_each_chunk(size, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
        DdtRow& row = partial[w];
        for (std::uint64_t x = begin; x < end; ++x) ++row[table[x ^ 1].bits ^ table[x].bits];
    });
    DdtRow row = std::move(partial[0]);
    for (unsigned w = 1; w < workers; ++w)
        for (std::uint32_t b = 0; b < size; ++b) row[b] += partial[w][b];
    return row;
}

/// Throws IdentityViolation if the histogram breaks sum omega_i = Q or
/// sum i*omega_i = Q.
inline Spectrum spectrum_of_row(std::span<const std::uint32_t> row) {
    Spectrum s = Spectrum::from_row(row);
    if (!s.satisfies_identities())
        throw IdentityViolation("differential spectrum violates sum omega_i = Q or sum i*omega_i = Q");
    return s;
}

inline Spectrum spectrum(const PowerFunction& f, unsigned workers = 1) {
    return spectrum_of_row(ddt_row(f, workers));
}

/// |{x : F(x+a) + F(x) = b}| by direct enumeration through FieldSpec::pow.
/// Deliberately shares nothing with ddt_row.
inline std::uint64_t delta_entry(const PowerFunction& f, Element a, Element b) {
    const FieldSpec& field = f.field();
    if (a.bits == 0) throw std::invalid_argument("delta_entry requires a != 0");
    if (!field.contains(a) || !field.contains(b)) throw std::invalid_argument("element is not in the field");
    const auto d = static_cast<std::int64_t>(f.exponent());
    std::uint64_t count = 0;
    for (std::uint32_t x = 0; x < field.size(); ++x) {
        const Element xe{x};
        if (field.add(field.pow(field.add(xe, a), d), field.pow(xe, d)) == b) ++count;
    }
    return count;
}

inline std::uint64_t differential_uniformity(std::span<const std::uint32_t> row) {
    return row.empty() ? 0 : *std::max_element(row.begin(), row.end());
}

inline std::uint64_t differential_uniformity(const PowerFunction& f, unsigned workers = 1) {
    return differential_uniformity(ddt_row(f, workers));
}

/// max delta(1, b) over b outside GF(2).
inline std::uint64_t local_uniformity(std::span<const std::uint32_t> row) {
    std::uint64_t best = 0;
    for (std::size_t b = 2; b < row.size(); ++b) best = std::max<std::uint64_t>(best, row[b]);
    return best;
}

inline std::uint64_t local_uniformity(const PowerFunction& f, unsigned workers = 1) {
    return local_uniformity(ddt_row(f, workers));
}

enum class Locality { None, LocallyApn, Locally4Uniform };

inline Locality classify_locality(std::uint64_t local) {
    if (local <= 2) return Locality::LocallyApn;
    if (local <= 4) return Locality::Locally4Uniform;
    return Locality::None;
}

inline std::string to_string(Locality l) {
    switch (l) {
        case Locality::LocallyApn: return "locally-APN";
        case Locality::Locally4Uniform: return "locally-4-uniform";
        case Locality::None: break;
    }
    return "none";
}

/// Niho test over GF(2^(2m)): d = 2^j (mod 2^m - 1) for some 0 <= j < m.
/// Returns the smallest such j.
inline std::optional<int> is_niho(std::int64_t d, int m) {
    if (m < 1 || m > 62) throw std::invalid_argument("half-degree out of range");
    const std::int64_t modulus = (std::int64_t{1} << m) - 1;
    std::int64_t r = d % modulus;
    if (r < 0) r += modulus;
    for (int j = 0; j < m; ++j)
        if ((std::int64_t{1} << j) % modulus == r) return j;
    return std::nullopt;
}

}  // namespace ffspec
