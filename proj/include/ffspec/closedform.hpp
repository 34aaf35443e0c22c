#pragma once

// Exact closed forms for F(x) = x^(3q-2) over GF(q^2), q = 2^m.
//
// The rational sequence tau_m enters every formula multiplied by q = 2^m, so
// everything is carried as the integer s_m = 2^m * tau_m:
//   s_1 = 1, s_2 = -7, s_m = s_{m-1} - 4 s_{m-2}.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "powerfn.hpp"

namespace ffspec {

using BigInt = boost::multiprecision::cpp_int;

/// Exact value numerator / 2^log2_denominator, kept canonical (odd numerator,
/// or zero with denominator 1).
class DyadicRational {
  public:
    DyadicRational() = default;
    DyadicRational(BigInt numerator, unsigned log2_denominator)
        : num_(std::move(numerator)), shift_(log2_denominator) {
        canonicalize();
    }

    const BigInt& numerator() const noexcept { return num_; }
    unsigned log2_denominator() const noexcept { return shift_; }
    BigInt denominator() const { return BigInt(1) << shift_; }

    /// "-7/4"; integers print without a denominator.
    std::string to_string() const {
        if (shift_ == 0) return num_.str();
        return num_.str() + "/" + denominator().str();
    }

    friend bool operator==(const DyadicRational&, const DyadicRational&) = default;

  private:
    void canonicalize() {
        if (num_ == 0) {
            shift_ = 0;
            return;
        }
        while (shift_ > 0 && (num_ & 1) == 0) {
            num_ >>= 1;
            --shift_;
        }
    }

    BigInt num_ = 0;
    unsigned shift_ = 0;
};

inline void require_index(int m) {
    if (m < 1) throw std::invalid_argument("index m must be >= 1, got " + std::to_string(m));
}

/// s_m = 2^m * tau_m via the integer recurrence.
inline BigInt tau_scaled(int m) {
    require_index(m);
    BigInt prev = 1, cur = -7;  // s_1, s_2
    if (m == 1) return prev;
    for (int k = 3; k <= m; ++k) {
        BigInt next = cur - 4 * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

inline DyadicRational tau(int m) { return {tau_scaled(m), static_cast<unsigned>(m)}; }

/// tau_m from the binomial sum 2^(1-2m) * sum_i C(m, 2i) (-15)^i.
inline DyadicRational tau_binomial(int m) {
    require_index(m);
    BigInt sum = 0, binom = 1, power = 1;  // C(m, k), (-15)^(k/2)
    for (int k = 0; k <= m; ++k) {
        if (k % 2 == 0) {
            sum += binom * power;
            power *= -15;
        }
        binom = binom * (m - k) / (k + 1);
    }
    return {sum, static_cast<unsigned>(2 * m - 1)};
}

inline BigInt pow2(int k) { return BigInt(1) << k; }

namespace detail {
inline BigInt exact_div(const BigInt& a, int b, const char* what) {
    if (a % b != 0) throw IdentityViolation(std::string("inexact division in ") + what);
    return a / b;
}
}  // namespace detail

/// Predicted differential spectrum of x^(3q-2) over GF(q^2), m even.
struct PredictedSpectrum {
    int m = 0;
    BigInt q;
    BigInt omega_0, omega_2, omega_4, omega_q;

    /// Nonzero multiplicities keyed by delta. For m = 2 the single b with
    /// delta = q = 4 is already counted in omega_4 and omega_q is 0.
    std::map<BigInt, BigInt> entries() const {
        std::map<BigInt, BigInt> out;
        auto put = [&](const BigInt& delta, const BigInt& count) {
            if (count > 0) out[delta] += count;
        };
        put(0, omega_0);
        put(2, omega_2);
        put(4, omega_4);
        put(q, omega_q);
        return out;
    }

    /// As a Spectrum over GF(q^2); requires 2m < 64.
    Spectrum to_spectrum() const {
        if (2 * m >= 64) throw std::invalid_argument("predicted spectrum too large for a machine-word Spectrum");
        Spectrum::Entries e;
        for (const auto& [d, c] : entries()) e[d.convert_to<std::uint64_t>()] = c.convert_to<std::uint64_t>();
        return Spectrum(std::move(e), std::uint64_t{1} << (2 * m));
    }
};

inline PredictedSpectrum predicted_spectrum(int m) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("predicted spectrum requires even m >= 2");
    PredictedSpectrum p;
    p.m = m;
    p.q = pow2(m);
    if (m == 2) {
        p.omega_0 = 12;
        p.omega_4 = 4;
        return p;
    }
    const BigInt& q = p.q;
    const BigInt s = tau_scaled(m);
    const BigInt q2 = q * q;
    p.omega_0 = detail::exact_div(5 * q2 + 4 * q - s - 7, 8, "omega_0");
    p.omega_2 = detail::exact_div(q2 - 2 * q + s - 1, 4, "omega_2");
    p.omega_4 = detail::exact_div(q2 - s + 1, 8, "omega_4");
    p.omega_q = 1;
    return p;
}

/// Nonzero solutions of x1+x2+x3 = 0, x1^d+x2^d+x3^d = 0 over GF(q^2).
inline BigInt n3_closed(int m) {
    require_index(m);
    const BigInt q = pow2(m);
    return (m % 2 == 0 ? q - 2 : q) * (q * q - 1);
}

/// Nonzero solutions of the four-variable system over GF(q^2).
inline BigInt n4_closed(int m) {
    require_index(m);
    const BigInt q = pow2(m);
    const BigInt base = 5 * q * q - tau_scaled(m) - 6 * q;
    return (m % 2 == 0 ? base + 4 : base) * (q * q - 1);
}

/// All solutions (zeros allowed) of the four-variable system over GF(q^2).
inline BigInt N4_closed(int m) {
    require_index(m);
    const BigInt q = pow2(m);
    const BigInt base = 5 * q * q - tau_scaled(m) - 2 * q;
    return 1 + (m % 2 == 0 ? base + 2 : base + 6) * (q * q - 1);
}

/// sum omega_i = Q, sum i*omega_i = Q and (Q-1) sum i^2 omega_i = N4 - Q^2.
inline bool moment_check(const Spectrum& s, const BigInt& N4) {
    const BigInt Q = s.field_size();
    if (!s.satisfies_identities()) return false;
    return (Q - 1) * BigInt(s.second_moment()) == N4 - Q * Q;
}

/// |s_m| < 4^m (i.e. |tau_m| < 2^m) for 1 <= m <= m_max. Also enforces the
/// sharper |s_m| <= 2^(m+1); a failure there throws IdentityViolation.
inline bool tau_bound_check(int m_max) {
    require_index(m_max);
    bool ok = true;
    BigInt prev = 1, cur = -7;
    for (int m = 1; m <= m_max; ++m) {
        const BigInt& s = m == 1 ? prev : cur;
        const BigInt mag = abs(s);
        if (mag > pow2(m + 1)) throw IdentityViolation("|s_" + std::to_string(m) + "| exceeds 2^(m+1)");
        if (mag >= pow2(2 * m)) ok = false;
        if (m >= 2) {
            BigInt next = cur - 4 * prev;
            prev = std::move(cur);
            cur = std::move(next);
        }
    }
    return ok;
}

}  // namespace ffspec
