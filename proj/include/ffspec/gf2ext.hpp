#pragma once

// Binary extension fields GF(2^n), 1 <= n <= 24, in polynomial basis.
//
// Elements are n-bit masks. Multiplication goes through discrete log/antilog
// tables built once per field; the tables themselves are built with
// shift-and-reduce carryless multiplication.

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffspec {

inline constexpr int kMaxDegree = 24;

/// Polynomial over GF(2) as a bit mask, bit i = coefficient of x^i.
using PolyMask = std::uint64_t;

struct Element {
    std::uint32_t bits = 0;

    constexpr auto operator<=>(const Element&) const = default;
};

inline constexpr Element kZero{0};
inline constexpr Element kOne{1};

namespace poly {

inline int degree(PolyMask p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

inline PolyMask mod(PolyMask a, PolyMask m) {
    const int dm = degree(m);
    for (int da = degree(a); da >= dm; da = degree(a)) a ^= m << (da - dm);
    return a;
}

/// a*b mod m; both operands must already be reduced (degree < deg m <= 31).
inline PolyMask mulmod(PolyMask a, PolyMask b, PolyMask m) {
    const int dm = degree(m);
    const PolyMask top = PolyMask{1} << dm;
    PolyMask r = 0;
    while (b != 0) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= m;
    }
    return r;
}

inline PolyMask gcd(PolyMask a, PolyMask b) {
    while (b != 0) {
        a = mod(a, b);
        std::swap(a, b);
    }
    return a;
}

/// x^(2^k) mod m.
inline PolyMask x_pow2k(int k, PolyMask m) {
    PolyMask r = mod(0b10, m);
    for (int i = 0; i < k; ++i) r = mulmod(r, r, m);
    return r;
}

inline std::vector<int> prime_factors(std::uint64_t v) {
    std::vector<int> out;
    for (std::uint64_t p = 2; p * p <= v; ++p) {
        if (v % p == 0) {
            out.push_back(static_cast<int>(p));
            while (v % p == 0) v /= p;
        }
    }
    if (v > 1) out.push_back(static_cast<int>(v));
    return out;
}

/// Rabin's irreducibility test: f of degree n is irreducible iff
/// x^(2^n) = x mod f and gcd(x^(2^(n/p)) - x, f) = 1 for every prime p | n.
inline bool is_irreducible(PolyMask f) {
    const int n = degree(f);
    if (n < 1 || n > 31) return false;
    if (n == 1) return true;
    if ((f & 1) == 0) return false;
    if (x_pow2k(n, f) != 0b10) return false;
    for (int p : prime_factors(static_cast<std::uint64_t>(n))) {
        const PolyMask h = x_pow2k(n / p, f) ^ 0b10;
        if (gcd(f, h) != 1) return false;
    }
    return true;
}

inline std::string to_hex(PolyMask p) {
    std::ostringstream os;
    os << "0x" << std::hex << p;
    return os.str();
}

}  // namespace poly

inline void check_degree(int n) {
    if (n < 1 || n > kMaxDegree)
        throw std::invalid_argument("field degree " + std::to_string(n) + " outside supported range 1.." +
                                    std::to_string(kMaxDegree));
}

/// Smallest irreducible degree-n polynomial with nonzero constant term, by
/// integer value of its mask. For n = 1 that is x+1.
inline PolyMask default_modulus(int n) {
    check_degree(n);
    for (PolyMask f = (PolyMask{1} << n) | 1; f < (PolyMask{2} << n); f += 2)
        if (poly::is_irreducible(f)) return f;
    throw std::logic_error("no irreducible polynomial of degree " + std::to_string(n));
}

class FieldSpec {
  public:
    /// Builds GF(2^n). Throws std::invalid_argument for n out of range, a
    /// modulus of the wrong degree, or a reducible modulus.
    explicit FieldSpec(int n, std::optional<PolyMask> modulus = std::nullopt)
        : n_(n), modulus_(0), size_(0), order_(0) {
        check_degree(n);
        modulus_ = modulus.value_or(0);
        if (!modulus) {
            modulus_ = default_modulus(n);
        } else if (poly::degree(*modulus) != n) {
            throw std::invalid_argument("modulus " + poly::to_hex(*modulus) + " does not have degree " +
                                        std::to_string(n));
        } else if (!poly::is_irreducible(*modulus)) {
            throw std::invalid_argument("modulus " + poly::to_hex(*modulus) + " is reducible over GF(2)");
        }
        size_ = std::uint32_t{1} << n;
        order_ = size_ - 1;
        generator_ = find_generator();
        build_tables();
    }

    int degree() const noexcept { return n_; }
    PolyMask modulus() const noexcept { return modulus_; }
    std::string modulus_hex() const { return poly::to_hex(modulus_); }
    /// Number of field elements, 2^n.
    std::uint32_t size() const noexcept { return size_; }
    /// Order of the unit group, 2^n - 1.
    std::uint32_t order() const noexcept { return order_; }
    Element generator() const noexcept { return generator_; }

    bool contains(Element a) const noexcept { return a.bits < size_; }
    bool same_field(const FieldSpec& other) const noexcept {
        return n_ == other.n_ && modulus_ == other.modulus_;
    }

    Element add(Element a, Element b) const {
        check(a);
        check(b);
        return Element{a.bits ^ b.bits};
    }

    Element mul(Element a, Element b) const {
        check(a);
        check(b);
        return mul_unchecked(a, b);
    }

    /// Shift-and-reduce product, independent of the tables.
    Element mul_carryless(Element a, Element b) const {
        check(a);
        check(b);
        return Element{static_cast<std::uint32_t>(poly::mulmod(a.bits, b.bits, modulus_))};
    }

    Element square(Element a) const { return mul(a, a); }

    /// Multiplicative inverse with the convention inv(0) = 0.
    Element inv(Element a) const {
        check(a);
        if (a.bits == 0) return kZero;
        const std::uint32_t l = log_[a.bits];
        return exp_[l == 0 ? 0 : order_ - l];
    }

    /// a^e for any signed e. Exponents act modulo 2^n - 1 on units;
    /// 0^e = 0 for e != 0 and 0^0 = 1.
    Element pow(Element a, std::int64_t e) const {
        check(a);
        if (a.bits == 0) return e == 0 ? kOne : kZero;
        return exp_[mul_mod_order(log_[a.bits], reduce(e))];
    }

    /// a^(2^k), 0 <= k < n.
    Element frobenius(Element a, int k) const {
        check(a);
        if (k < 0 || k >= n_) throw std::invalid_argument("frobenius power out of range");
        if (a.bits == 0) return kZero;
        return exp_[mul_mod_order(log_[a.bits], (std::uint64_t{1} << k) % order_)];
    }

    /// Unique square root, a^(2^(n-1)).
    Element sqrt(Element a) const { return frobenius(a, n_ - 1); }

    /// Discrete log w.r.t. generator(); a must be nonzero.
    std::uint32_t log(Element a) const {
        check(a);
        if (a.bits == 0) throw std::invalid_argument("log of zero");
        return log_[a.bits];
    }

    Element exp(std::uint64_t k) const { return exp_[k % order_]; }

    /// True iff a lies in the subfield GF(2^m); m must divide n.
    bool in_subfield(Element a, int m) const {
        if (m < 1 || n_ % m != 0)
            throw std::invalid_argument("subfield degree " + std::to_string(m) + " does not divide " +
                                        std::to_string(n_));
        if (m == n_) {
            check(a);
            return true;
        }
        return frobenius(a, m) == a;
    }

    /// The unit circle U_{q+1} = {x : x^(q+1) = 1} for n = 2m, q = 2^m,
    /// listed as g^(k(q-1)) for k = 0..q.
    std::vector<Element> subgroup_u() const {
        if (n_ % 2 != 0) throw std::invalid_argument("unit circle requires an even-degree field");
        const std::uint64_t q = std::uint64_t{1} << (n_ / 2);
        std::vector<Element> out;
        out.reserve(q + 1);
        for (std::uint64_t k = 0; k <= q; ++k) out.push_back(exp_[(k * (q - 1)) % order_]);
        return out;
    }

    /// Table-driven product without range checks, for hot loops.
    Element mul_unchecked(Element a, Element b) const noexcept {
        if (a.bits == 0 || b.bits == 0) return kZero;
        std::uint32_t s = log_[a.bits] + log_[b.bits];
        if (s >= order_) s -= order_;
        return exp_[s];
    }

    /// Raw tables for bulk passes: exp_table()[k] = g^k for k < order(),
    /// log_table()[a] = log_g(a) for a != 0.
    const std::vector<Element>& exp_table() const noexcept { return exp_; }
    const std::vector<std::uint32_t>& log_table() const noexcept { return log_; }

    /// e mod (2^n - 1) in [0, 2^n - 2].
    std::uint64_t reduce(std::int64_t e) const noexcept {
        const std::int64_t o = order_;
        std::int64_t r = e % o;
        if (r < 0) r += o;
        return static_cast<std::uint64_t>(r);
    }

  private:
    void check(Element a) const {
        if (!contains(a))
            throw std::invalid_argument("element 0x" + to_hex_bits(a.bits) + " is not in GF(2^" +
                                        std::to_string(n_) + ")");
    }

    static std::string to_hex_bits(std::uint32_t v) {
        std::ostringstream os;
        os << std::hex << v;
        return os.str();
    }

    std::uint32_t mul_mod_order(std::uint64_t a, std::uint64_t b) const noexcept {
        return static_cast<std::uint32_t>((a * b) % order_);
    }

    std::uint32_t slow_pow(std::uint32_t a, std::uint64_t e) const {
        PolyMask r = 1, base = a;
        while (e != 0) {
            if (e & 1) r = poly::mulmod(r, base, modulus_);
            base = poly::mulmod(base, base, modulus_);
            e >>= 1;
        }
        return static_cast<std::uint32_t>(r);
    }

    Element find_generator() const {
        const auto primes = poly::prime_factors(order_);
        for (std::uint32_t g = 1; g < size_; ++g) {
            bool primitive = true;
            for (int p : primes) {
                if (slow_pow(g, order_ / static_cast<std::uint32_t>(p)) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) return Element{g};
        }
        throw std::logic_error("no primitive element found");
    }

    void build_tables() {
        exp_.resize(order_);
        log_.assign(size_, 0);
        PolyMask x = 1;
        for (std::uint32_t k = 0; k < order_; ++k) {
            exp_[k] = Element{static_cast<std::uint32_t>(x)};
            log_[x] = k;
            x = poly::mulmod(x, generator_.bits, modulus_);
        }
        if (x != 1) throw std::logic_error("generator order mismatch");
    }

    int n_;
    PolyMask modulus_;
    std::uint32_t size_;
    std::uint32_t order_;
    Element generator_{};
    std::vector<Element> exp_;
    std::vector<std::uint32_t> log_;
};

inline FieldSpec make_field(int n, std::optional<PolyMask> modulus = std::nullopt) {
    return FieldSpec(n, modulus);
}

/// An element bound to its field. The field must outlive the value.
class FieldElement {
  public:
    FieldElement(const FieldSpec& field, Element value) : field_(&field), value_(value) {
        if (!field.contains(value)) throw std::invalid_argument("element is not in the field");
    }
    FieldElement(const FieldSpec& field, std::uint32_t bits) : FieldElement(field, Element{bits}) {}

    const FieldSpec& field() const noexcept { return *field_; }
    Element value() const noexcept { return value_; }
    std::uint32_t bits() const noexcept { return value_.bits; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.require_same(b);
        return {*a.field_, a.field_->add(a.value_, b.value_)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.require_same(b);
        return {*a.field_, a.field_->mul(a.value_, b.value_)};
    }
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.field_->same_field(*b.field_) && a.value_ == b.value_;
    }

    FieldElement inv() const { return {*field_, field_->inv(value_)}; }
    FieldElement pow(std::int64_t e) const { return {*field_, field_->pow(value_, e)}; }
    FieldElement frobenius(int k) const { return {*field_, field_->frobenius(value_, k)}; }
    FieldElement sqrt() const { return {*field_, field_->sqrt(value_)}; }

  private:
    void require_same(const FieldElement& other) const {
        if (!field_->same_field(*other.field_)) throw std::invalid_argument("field mismatch");
    }

    const FieldSpec* field_;
    Element value_;
};

}  // namespace ffspec
