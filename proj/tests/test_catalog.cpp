#include <gtest/gtest.h>

#include <set>

#include "ffspec/catalog.hpp"
#include "ffspec/powerfn.hpp"

using namespace ffspec;

namespace {

const catalog::CatalogEntry& entry(const std::string& id) {
    for (const auto& e : catalog::entries())
        if (e.family_id == id) return e;
    throw std::out_of_range(id);
}

bool has_family(const std::vector<catalog::Match>& ms, const std::string& id) {
    for (const auto& m : ms)
        if (m.entry->family_id == id) return true;
    return false;
}

// Degrees where the tabulated uniformity formula degenerates. At n = 2 the
// rules 2^(n/2)-2 and 2^m-2 evaluate to 0 while the members are linear maps;
// the "6 or 8" Mersenne rows only hold from n = 6 on (x^3 and x^7 are APN or
// 4-uniform at n = 4, 5).
const std::set<std::pair<std::string, int>> kSmallDegreeExceptions = {
    {"mersenne-half", 2},     {"k-times-q-minus-1", 2}, {"mersenne-3-or-n-2", 4},
    {"mersenne-3-or-n-2", 5}, {"mersenne-odd", 5},
};

}  // namespace

TEST(Catalog, FifteenEntries) {
    const auto& es = catalog::entries();
    ASSERT_EQ(es.size(), 15u);
    std::set<std::string> ids;
    for (const auto& e : es) ids.insert(e.family_id);
    EXPECT_EQ(ids.size(), 15u);
}

TEST(Catalog, NamedRows) {
    const auto& gold = entry("gold");
    EXPECT_EQ(gold.exponent_rule, "2^t+1");
    EXPECT_EQ(gold.uniformity_rule, "2^s");
    const auto& plus3 = entry("q-plus-three");
    for (const auto& m : plus3.members(8)) EXPECT_EQ(m.uniformity_candidates, (std::vector<std::uint64_t>{16, 18}));
    const auto& ours = entry("3q-minus-2");
    EXPECT_EQ(ours.locality, Locality::Locally4Uniform);
    EXPECT_EQ(ours.uniformity_rule, "2^m");
}

TEST(Catalog, CyclotomicClass) {
    EXPECT_EQ(catalog::cyclotomic_class(3, 4), (std::set<std::uint64_t>{3, 6, 12, 9}));
    EXPECT_EQ(catalog::cyclotomic_class(46, 8), (std::set<std::uint64_t>{46, 92, 184, 113, 226, 197, 139, 23}));
    EXPECT_THROW(catalog::cyclotomic_class(3, 33), std::invalid_argument);
}

TEST(Catalog, MatchExamples) {
    const auto m46 = catalog::match(8, 46);
    ASSERT_TRUE(has_family(m46, "3q-minus-2"));
    for (const auto& m : m46) {
        if (m.entry->family_id != "3q-minus-2") continue;
        EXPECT_EQ(m.member.params.at("m"), 4);
    }

    const auto m31 = catalog::match(8, 31);
    bool locally_apn = false;
    for (const auto& m : m31) locally_apn |= m.entry->locality == Locality::LocallyApn;
    EXPECT_TRUE(locally_apn);

    const auto m3 = catalog::match(7, 3);
    ASSERT_TRUE(has_family(m3, "gold"));
    for (const auto& m : m3) {
        if (m.entry->family_id != "gold") continue;
        EXPECT_EQ(m.member.uniformity_candidates, (std::vector<std::uint64_t>{2}));
    }

    // Matching is up to cyclotomic equivalence.
    EXPECT_TRUE(has_family(catalog::match(8, 92), "3q-minus-2"));
}

TEST(Catalog, ThreeQMinusTwoNeedsEvenMAtLeast4) {
    for (int m = 1; m <= 8; ++m) {
        const std::int64_t d = 3 * (std::int64_t{1} << m) - 2;
        EXPECT_EQ(has_family(catalog::match(2 * m, d), "3q-minus-2"), m >= 4 && m % 2 == 0) << m;
    }
}

TEST(Catalog, EvaluationExponent) {
    catalog::FamilyMember mem;
    mem.exponent = 0;
    EXPECT_EQ(catalog::evaluation_exponent(mem, 2), 3);
    mem.exponent = 46;
    EXPECT_EQ(catalog::evaluation_exponent(mem, 8), 46);
}

TEST(Catalog, UniformitySweepUpTo12) {
    int checked = 0;
    for (int n = 1; n <= 12; ++n) {
        const FieldSpec field = make_field(n);
        for (const auto& e : catalog::entries()) {
            if (kSmallDegreeExceptions.contains({e.family_id, n})) continue;
            for (const auto& mem : e.members(n)) {
                const auto row = ddt_row(PowerFunction(field, catalog::evaluation_exponent(mem, n)));
                const std::uint64_t du = differential_uniformity(row);
                const std::uint64_t lu = local_uniformity(row);
                const auto& c = mem.uniformity_candidates;
                EXPECT_NE(std::find(c.begin(), c.end(), du), c.end())
                    << e.family_id << " n=" << n << " d=" << mem.exponent << " got " << du;
                if (e.locality == Locality::LocallyApn) {
                    EXPECT_LE(lu, 2u) << e.family_id << " n=" << n;
                } else if (e.locality == Locality::Locally4Uniform) {
                    EXPECT_LE(lu, 4u) << e.family_id << " n=" << n;
                }
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 100);
}

TEST(Catalog, ExceptionsReallyFail) {
    // Keeps the exception list honest: each listed degree must break the rule.
    for (const auto& [id, n] : kSmallDegreeExceptions) {
        const FieldSpec field = make_field(n);
        bool any_off = false;
        for (const auto& mem : entry(id).members(n)) {
            const auto du = differential_uniformity(ddt_row(PowerFunction(field, catalog::evaluation_exponent(mem, n))));
            const auto& c = mem.uniformity_candidates;
            any_off |= std::find(c.begin(), c.end(), du) == c.end();
        }
        EXPECT_TRUE(any_off) << id << " n=" << n;
    }
}

TEST(Catalog, JsonSchema) {
    const auto j = catalog::export_json();
    ASSERT_TRUE(j.is_array());
    ASSERT_EQ(j.size(), 15u);
    for (const auto& row : j) {
        for (const char* key : {"family_id", "rule", "condition", "uniformity", "locality", "reference"}) {
            ASSERT_TRUE(row.contains(key)) << key;
            EXPECT_TRUE(row[key].is_string()) << key;
        }
    }
    EXPECT_EQ(j.back()["reference"], "new");
    const auto mj = catalog::to_json(catalog::match(8, 46).front());
    EXPECT_TRUE(mj.contains("params"));
    EXPECT_TRUE(mj.contains("exponent"));
}
