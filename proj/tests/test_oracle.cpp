#include <catch2/catch_amalgamated.hpp>

#include "sl2cv/oracle.hpp"

using namespace sl2cv;

namespace {

FqFieldPtr field_of_order(std::int64_t q) {
    for (std::int64_t p = 2; p <= q; ++p) {
        if (!detail::is_prime_i64(p)) continue;
        std::int64_t pk = p;
        for (std::int64_t k = 1; pk <= q; ++k, pk *= p)
            if (pk == q) return FqField::make(p, k);
    }
    throw std::invalid_argument("not a prime power");
}

}  // namespace

TEST_CASE("the unimodular group has order q^3 - q") {
    for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9}) {
        auto F = field_of_order(q);
        CHECK(static_cast<std::int64_t>(enumerate_sl2(F).size()) == q * q * q - q);
    }
    CHECK_THROWS_AS(enumerate_sl2(FqField::make(5, 2)), work_bound_exceeded);
}

TEST_CASE("homomorphism counts are stable") {
    CHECK(enumerate_homs(klein_presentation(), FqField::make(2)).size() == 18);
    CHECK(enumerate_homs(trefoil_presentation(), FqField::make(2)).size() == 12);
    CHECK(enumerate_homs(klein_presentation(), FqField::make(3)).size() == 72);
    CHECK(enumerate_homs(trefoil_presentation(), FqField::make(3)).size() == 72);
    CHECK(enumerate_homs_glued(GluingMatrix(0, 1, -1, 0), FqField::make(2)).size() == 28);

    CHECK_THROWS_AS(enumerate_homs(klein_presentation(), FqField::make(3), 10),
                    work_bound_exceeded);
    CHECK_THROWS_AS(enumerate_homs(glued_presentation(GluingMatrix(1, 0, 0, 1)),
                                   FqField::make(2)),
                    std::invalid_argument);
}

TEST_CASE("every enumerated assignment satisfies the relators") {
    auto f3 = FqField::make(3);
    auto pres = klein_presentation();
    for (const auto& rep : enumerate_homs(pres, f3))
        CHECK(verify_relations(rep, pres).ok);
    GluingMatrix phi(0, 1, -1, 0);
    auto glued = glued_presentation(phi);
    for (const auto& rep : enumerate_homs_glued(phi, f3))
        CHECK(verify_relations(rep, glued).ok);
}

TEST_CASE("census coverage for the two pieces") {
    for (std::int64_t q : {2, 3, 4, 5}) {
        auto F = field_of_order(q);
        for (auto m : {Manifold::Klein, Manifold::Trefoil}) {
            auto report = census(m, F);
            CHECK(report.coverage_checked);
            CHECK(report.uncovered.empty());
            std::int64_t total = 0;
            for (auto& [key, count] : report.tuples) total += count;
            CHECK(total == report.hom_count);
        }
    }
}

TEST_CASE("glued census is informational") {
    GluingMatrix phi(0, 1, -1, 0);
    auto report = census(Manifold::Glued, FqField::make(2), &phi);
    CHECK(!report.coverage_checked);
    CHECK(report.uncovered.empty());
    CHECK(report.hom_count == 28);
    REQUIRE(report.orbit_counts.has_value());  // q <= 4
    std::int64_t orbits = 0;
    for (auto& [key, count] : *report.orbit_counts) orbits += count;
    CHECK(orbits >= static_cast<std::int64_t>(report.tuples.size()));

    CHECK_THROWS_AS(census(Manifold::Glued, FqField::make(2), nullptr), std::invalid_argument);
}

TEST_CASE("family specializations appear in the enumeration") {
    auto f5 = FqField::make(5);
    auto homs = enumerate_homs(klein_presentation(), f5);
    auto contains = [&homs](const GenAssignment<FqElem>& rep) {
        for (const auto& h : homs)
            if (h[0] == rep[0] && h[1] == rep[1]) return true;
        return false;
    };
    for (std::int64_t y : {2, 3, 4}) {
        FamilySpec spec;
        spec.tag = FamilyTag::KleinIrreducible;
        spec.field = f5;
        auto num = instantiate_numeric(spec, {{"y", f5->from_int(y)}});
        CHECK(contains(num.rep));
    }

    auto tre_homs = enumerate_homs(trefoil_presentation(), f5);
    FamilySpec tre;
    tre.tag = FamilyTag::TrefoilIrreducible;
    tre.field = f5;
    auto num = instantiate_numeric(tre, {{"x", f5->from_int(2)}});
    bool found = false;
    for (const auto& h : tre_homs)
        if (h[0] == num.rep[0] && h[1] == num.rep[1]) found = true;
    CHECK(found);
}

TEST_CASE("conjugation consistency") {
    CHECK(conjugation_consistency(Manifold::Klein, FqField::make(3), 100));
    CHECK(conjugation_consistency(Manifold::Trefoil, FqField::make(2, 2), 100));
    GluingMatrix phi(0, 1, -1, 0);
    CHECK(conjugation_consistency(Manifold::Glued, FqField::make(2), 0, &phi));  // exhaustive
}

TEST_CASE("glued family specializations appear in the glued census") {
    auto tuple_key = [](const GenAssignment<FqElem>& rep) {
        std::vector<std::int64_t> key;
        for (const auto& e : char_tuple(rep)) key.push_back(e.index());
        return key;
    };
    auto census_keys = [](const CensusReport& report) {
        std::set<std::vector<std::int64_t>> keys;
        for (auto& [key, count] : report.tuples) keys.insert(key);
        return keys;
    };

    // sphere-orbifold shape over F_5 (where a square root of -1 exists):
    // torus-component slices and the odd-characteristic torus curve
    {
        GluingMatrix phi(0, 1, -1, -6);
        auto f5 = FqField::make(5);
        auto keys = census_keys(census(Manifold::Glued, f5, &phi));
        FamilySpec spec;
        spec.field = f5;
        spec.eps = +1;  // matches phi.l
        spec.k_odd = false;
        int found = 0;
        for (std::int64_t e = 0; e < 5; ++e)
            for (int sigma : {+1, -1}) {
                spec.tag = FamilyTag::GluedTorusOddChar;
                spec.sigma = sigma;
                auto num = instantiate_numeric(spec, {{"e", f5->element(e)}});
                REQUIRE(num.field->same_as(*f5));
                CHECK(keys.count(tuple_key(num.rep)) == 1);
                ++found;
            }
        spec.tag = FamilyTag::GluedTorusSlice;
        for (std::int64_t y : {2, 3}) {
            spec.fixed_y = f5->element(y);
            for (std::int64_t f = 1; f < 5; ++f) {
                auto num = instantiate_numeric(spec, {{"f", f5->element(f)}});
                CHECK(keys.count(tuple_key(num.rep)) == 1);
                ++found;
            }
        }
        CHECK(found == 18);
    }

    // separating-genus-2 shape over F_2: the characteristic-2 torus curve
    // and the separating curve
    {
        GluingMatrix phi(0, 1, -1, 0);
        auto f2 = FqField::make(2);
        auto keys = census_keys(census(Manifold::Glued, f2, &phi));
        FamilySpec spec;
        spec.field = f2;
        spec.tag = FamilyTag::GluedTorusChar2;
        for (std::int64_t u = 0; u < 2; ++u) {
            auto num = instantiate_numeric(spec, {{"u", f2->element(u)}});
            CHECK(keys.count(tuple_key(num.rep)) == 1);
        }
        spec.tag = FamilyTag::GluedGenus2Separating;
        auto num = instantiate_numeric(spec, {{"y", f2->one()}});
        CHECK(keys.count(tuple_key(num.rep)) == 1);
    }

    // non-separating shape over F_5: the boundary-matched curve at every
    // allowed parameter
    {
        GluingMatrix phi(1, 0, 0, 1);
        auto f5 = FqField::make(5);
        auto keys = census_keys(census(Manifold::Glued, f5, &phi));
        FamilySpec spec;
        spec.field = f5;
        spec.tag = FamilyTag::GluedGenus2Nonseparating;
        for (std::int64_t x : {2, 3}) {
            auto num = instantiate_numeric(spec, {{"x", f5->element(x)}});
            CHECK(keys.count(tuple_key(num.rep)) == 1);
        }
    }
}
