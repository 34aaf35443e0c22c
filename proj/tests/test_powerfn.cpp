#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "ffspec/errors.hpp"
#include "ffspec/powerfn.hpp"
#include "test_oracles.hpp"

using namespace ffspec;

namespace {

std::int64_t three_q_minus_2(int m) { return 3 * (std::int64_t{1} << m) - 2; }

Spectrum::Entries oracle_entries(int n, std::uint64_t modulus, std::uint64_t d) {
    Spectrum::Entries e;
    for (auto [k, v] : oracles::naive_spectrum(oracles::naive_power_table(n, modulus, d))) e[k] = v;
    return e;
}

}  // namespace

TEST(ReduceExponent, Examples) {
    EXPECT_EQ(reduce_exponent(46, 8), 46u);
    EXPECT_EQ(reduce_exponent(190, 12), 190u);
    EXPECT_EQ(reduce_exponent(255, 8), 255u);
    EXPECT_EQ(reduce_exponent(510, 8), 255u);
    EXPECT_EQ(reduce_exponent(256, 8), 1u);
    EXPECT_EQ(reduce_exponent(-1, 8), 254u);
    EXPECT_EQ(reduce_exponent(0, 8), 0u);
}

TEST(PowerFunction, EvaluatesLikeFieldPow) {
    const FieldSpec f = make_field(8);
    for (std::int64_t d : {0, 1, 3, 46, 254, 255, 300, -1}) {
        const PowerFunction F(f, d);
        const auto table = F.value_table();
        for (std::uint32_t x = 0; x < f.size(); ++x) {
            ASSERT_EQ(F(Element{x}), f.pow(Element{x}, d)) << "d=" << d << " x=" << x;
            ASSERT_EQ(table[x], F(Element{x}));
        }
    }
}

TEST(DeltaEntry, Examples) {
    const FieldSpec f8 = make_field(8);
    const PowerFunction F(f8, 46);
    EXPECT_EQ(delta_entry(F, kOne, kOne), 16u);
    EXPECT_EQ(delta_entry(F, kOne, F(kOne)), delta_entry(F, kOne, kOne));  // F(1)+F(0) = 1
    EXPECT_THROW(delta_entry(F, kZero, kOne), std::invalid_argument);

    const FieldSpec f4 = make_field(4);
    EXPECT_EQ(delta_entry(PowerFunction(f4, 10), kOne, kOne), 4u);
}

TEST(DeltaEntry, ScalingRuleForPowerMaps) {
    // delta(a, b) = delta(1, b / a^d)
    const FieldSpec f = make_field(8);
    const PowerFunction F(f, 46);
    std::mt19937 rng(5);
    for (int i = 0; i < 200; ++i) {
        const Element a{static_cast<std::uint32_t>(1 + rng() % 255)};
        const Element b{static_cast<std::uint32_t>(rng() % 256)};
        const Element b1 = f.mul(b, f.inv(f.pow(a, 46)));
        ASSERT_EQ(delta_entry(F, a, b), delta_entry(F, kOne, b1));
    }
}

TEST(DdtRow, MatchesDeltaEntry) {
    for (int m : {2, 4}) {
        const FieldSpec f = make_field(2 * m);
        const PowerFunction F(f, three_q_minus_2(m));
        const auto row = ddt_row(F);
        ASSERT_EQ(row.size(), f.size());
        EXPECT_EQ(std::accumulate(row.begin(), row.end(), std::uint64_t{0}), f.size());
        for (std::uint32_t b = 0; b < f.size(); ++b) EXPECT_EQ(row[b], delta_entry(F, kOne, Element{b}));
    }
}

TEST(DdtRow, IdentityMap) {
    const FieldSpec f = make_field(6);
    const auto row = ddt_row(PowerFunction(f, 1));
    for (std::uint32_t b = 0; b < f.size(); ++b) EXPECT_EQ(row[b], b == 1 ? f.size() : 0u);
}

TEST(Spectrum, KnownSpectra) {
    const Spectrum s4 = spectrum(PowerFunction(make_field(8), 46));
    EXPECT_EQ(s4.entries(), (Spectrum::Entries{{0, 165}, {2, 60}, {4, 30}, {16, 1}}));
    const Spectrum s6 = spectrum(PowerFunction(make_field(12), 190));
    EXPECT_EQ(s6.entries(), (Spectrum::Entries{{0, 2592}, {2, 990}, {4, 513}, {64, 1}}));
    const Spectrum s8 = spectrum(PowerFunction(make_field(16), 766));
    EXPECT_EQ(s8.entries(), (Spectrum::Entries{{0, 41115}, {2, 16200}, {4, 8220}, {256, 1}}));
    const Spectrum s2 = spectrum(PowerFunction(make_field(4), 10));
    EXPECT_EQ(s2.entries(), (Spectrum::Entries{{0, 12}, {4, 4}}));
}

TEST(Spectrum, AgreesWithNaiveOracle) {
    for (int n = 2; n <= 8; ++n) {
        const FieldSpec f = make_field(n);
        for (std::uint64_t d : {3u, 5u, 7u, 11u, 13u, 46u}) {
            const std::uint64_t dr = reduce_exponent(static_cast<std::int64_t>(d), n);
            EXPECT_EQ(spectrum(PowerFunction(f, static_cast<std::int64_t>(d))).entries(),
                      oracle_entries(n, f.modulus(), dr))
                << "n=" << n << " d=" << d;
        }
    }
}

TEST(Spectrum, IdentitiesAndEvenness) {
    for (int n = 2; n <= 12; ++n) {
        const FieldSpec f = make_field(n);
        for (std::int64_t d : {3, 5, 7, 9, 21, 46, 190}) {
            const Spectrum s = spectrum(PowerFunction(f, d));
            EXPECT_TRUE(s.satisfies_identities());
            EXPECT_TRUE(s.all_even()) << "n=" << n << " d=" << d;
            EXPECT_EQ(s.total(), f.size());
        }
    }
}

TEST(Spectrum, RejectsBrokenRow) {
    const std::vector<std::uint32_t> row{2, 0, 0, 0};  // sum i*w_i = 2 != 4
    EXPECT_THROW(spectrum_of_row(row), IdentityViolation);
}

TEST(Uniformity, GoldFamily) {
    for (int n = 3; n <= 10; ++n) {
        const FieldSpec f = make_field(n);
        for (int t = 1; t < n; ++t) {
            const std::uint64_t s = std::gcd(t, n);
            EXPECT_EQ(differential_uniformity(PowerFunction(f, (std::int64_t{1} << t) + 1)), std::uint64_t{1} << s)
                << "n=" << n << " t=" << t;
        }
    }
}

TEST(Uniformity, IdentityHasFullUniformity) {
    const FieldSpec f = make_field(5);
    EXPECT_EQ(differential_uniformity(PowerFunction(f, 1)), 32u);
}

TEST(Uniformity, ThreeQMinusTwoEqualsQ) {
    for (int m : {2, 4, 6, 8}) {
        const FieldSpec f = make_field(2 * m);
        EXPECT_EQ(differential_uniformity(PowerFunction(f, three_q_minus_2(m))), std::uint64_t{1} << m);
    }
}

TEST(LocalUniformity, Examples) {
    EXPECT_EQ(local_uniformity(PowerFunction(make_field(8), 46)), 4u);
    EXPECT_EQ(local_uniformity(PowerFunction(make_field(8), 31)), 2u);
    EXPECT_EQ(local_uniformity(PowerFunction(make_field(4), 10)), 4u);
    EXPECT_EQ(classify_locality(2), Locality::LocallyApn);
    EXPECT_EQ(classify_locality(4), Locality::Locally4Uniform);
    EXPECT_EQ(classify_locality(6), Locality::None);
    EXPECT_EQ(to_string(Locality::LocallyApn), "locally-APN");
}

TEST(LocalUniformity, ExcludesPrimeSubfieldOnly) {
    const FieldSpec f = make_field(8);
    const PowerFunction F(f, 46);
    std::uint64_t expect = 0;
    for (std::uint32_t b = 2; b < f.size(); ++b) expect = std::max(expect, delta_entry(F, kOne, Element{b}));
    EXPECT_EQ(local_uniformity(F), expect);
}

TEST(Niho, Examples) {
    for (int m = 1; m <= 10; ++m) {
        const std::int64_t q = std::int64_t{1} << m;
        EXPECT_EQ(is_niho(3 * q - 2, m), std::optional<int>(0)) << m;
        EXPECT_EQ(is_niho(2 * q - 1, m), std::optional<int>(0)) << m;
    }
    EXPECT_FALSE(is_niho(5, 4).has_value());  // 5 mod 15 is not in {1, 2, 4, 8}
    EXPECT_EQ(is_niho(8 + 15, 4), std::optional<int>(3));
}

TEST(Spectrum, InvariantUnderModulusChange) {
    for (auto [n, alt] : {std::pair{8, std::uint64_t{0x11d}}, std::pair{12, std::uint64_t{0x1053}}}) {
        ASSERT_TRUE(oracles::irreducible_by_trial_division(alt));
        const FieldSpec a = make_field(n);
        const FieldSpec b = make_field(n, alt);
        ASSERT_NE(a.modulus(), b.modulus());
        for (std::int64_t d : {3, 7, 46, 190, 1000}) EXPECT_EQ(spectrum(PowerFunction(a, d)), spectrum(PowerFunction(b, d)));
    }
}

TEST(Spectrum, ThreadCountIndependent) {
    const FieldSpec f = make_field(12);
    const PowerFunction F(f, 190);
    const auto base = ddt_row(F, 1);
    for (unsigned w : {2u, 3u, 7u, 16u}) EXPECT_EQ(ddt_row(F, w), base) << w;
}
