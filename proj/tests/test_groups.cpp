#include <catch2/catch_amalgamated.hpp>

#include "sl2cv/groups.hpp"

using namespace sl2cv;

TEST_CASE("presentations") {
    auto klein = klein_presentation();
    CHECK(klein.num_generators == 2);
    REQUIRE(klein.relators.size() == 1);
    CHECK(klein.relators[0] ==
          Word::from_syllables({{0, 1}, {1, 1}, {0, -1}, {1, 1}}));

    auto trefoil = trefoil_presentation();
    CHECK(trefoil.num_generators == 2);
    REQUIRE(trefoil.relators.size() == 1);
    CHECK(trefoil.relators[0].letter_count() == 6);  // g h g h^-1 g^-1 h^-1

    auto glued = glued_presentation(GluingMatrix(1, 0, 0, 1));
    CHECK(glued.num_generators == 4);
    CHECK(glued.relators.size() == 4);

    CHECK_THROWS_AS(GluingMatrix(1, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("peripheral words") {
    auto [ka, kb] = peripheral_words(Manifold::Klein);
    CHECK(ka == Word::gen(0, 2));
    CHECK(kb == Word::gen(1));

    auto [mer, lon] = peripheral_words(Manifold::Trefoil);
    CHECK(mer == Word::gen(0));
    CHECK(lon == Word::from_syllables({{0, -4}, {1, 1}, {0, 2}, {1, 1}}));
    CHECK(lon.letter_count() == 8);
}

TEST_CASE("first homology in closed form") {
    CHECK(h1_closed_form(GluingMatrix(1, 0, 0, 1)) == AbelianGroup{{0}});       // Z
    CHECK(h1_closed_form(GluingMatrix(1, 0, 6, 1)) == AbelianGroup{{24}});      // Z_24
    CHECK(h1_closed_form(GluingMatrix(1, 1, -2, -1)) == AbelianGroup{{8}});     // Z_8
    CHECK(h1_closed_form(GluingMatrix(0, 1, -1, 0)) == AbelianGroup{{2, 2}});   // Z_2 + Z_2
}

TEST_CASE("Smith-form homology oracle matches on spot checks") {
    CHECK(h1_smith(GluingMatrix(1, 0, 0, 1)) == AbelianGroup{{0}});
    CHECK(h1_smith(GluingMatrix(1, 0, 6, 1)) == AbelianGroup{{24}});
    CHECK(h1_smith(GluingMatrix(0, 1, -1, 0)) == AbelianGroup{{2, 2}});
}

TEST_CASE("closed form equals Smith form for all small gluing matrices") {
    int count = 0;
    for (std::int64_t k = -6; k <= 6; ++k)
        for (std::int64_t l = -6; l <= 6; ++l)
            for (std::int64_t m = -6; m <= 6; ++m)
                for (std::int64_t n = -6; n <= 6; ++n) {
                    if (k * n - l * m != 1) continue;
                    GluingMatrix phi(k, l, m, n);
                    CHECK(h1_closed_form(phi) == h1_smith(phi));
                    ++count;
                }
    CHECK(count == 372);
}

TEST_CASE("surface-case classification") {
    auto single = classify_surface_cases(GluingMatrix(7, 1, 6, 1));  // (1+6k, k; 6, 1) at k=1
    CHECK(single.cases == std::vector<SurfaceCase>{SurfaceCase::S1});
    CHECK(single.kind == ManifoldKind::Graph);

    auto s2 = classify_surface_cases(GluingMatrix(0, 1, -1, 0));
    CHECK(s2.has(SurfaceCase::S2));
    CHECK(s2.kind == ManifoldKind::Graph);
    CHECK(!s2.has(SurfaceCase::S3));

    auto s3 = classify_surface_cases(GluingMatrix(1, 3, 0, 1));
    CHECK(s3.has(SurfaceCase::S3));
    CHECK(s3.kind == ManifoldKind::Graph);

    auto s4 = classify_surface_cases(GluingMatrix(0, 1, -1, -6));
    CHECK(s4.has(SurfaceCase::S4));
    CHECK(s4.kind == ManifoldKind::SeifertS2223);

    auto s5 = classify_surface_cases(GluingMatrix(1, 0, -6, 1));
    CHECK(s5.has(SurfaceCase::S5));
    CHECK(s5.kind == ManifoldKind::SeifertRP2);

    // mixed signs do not qualify
    auto mixed = classify_surface_cases(GluingMatrix(-1, 3, 0, -1));
    CHECK(mixed.has(SurfaceCase::S3));
    auto not_s3 = classify_surface_cases(GluingMatrix(2, 1, 1, 1));
    CHECK(!not_s3.has(SurfaceCase::S3));
}

TEST_CASE("the S4 and S5 shapes are disjoint and unimodular over a range") {
    for (std::int64_t k = -8; k <= 8; ++k)
        for (std::int64_t e : {+1, -1}) {
            auto s4 = classify_surface_cases(GluingMatrix(k, e, -e - 6 * k, -6 * e));
            CHECK(s4.has(SurfaceCase::S4));
            CHECK(!s4.has(SurfaceCase::S5));
            auto s5 = classify_surface_cases(GluingMatrix(e, k, -6 * e, e - 6 * k));
            CHECK(s5.has(SurfaceCase::S5));
            CHECK(!s5.has(SurfaceCase::S4));
        }
}

namespace {

// Normal form b^i a^j in the Klein-bottle group, via a b^e = b^-e a.
std::pair<std::int64_t, std::int64_t> klein_normal_form(const Word& w) {
    std::int64_t i = 0, j = 0;
    for (auto& [g, e] : w.syllables) {
        if (g == 0) j += e;
        else i += (j % 2 == 0) ? e : -e;
    }
    return {i, j};
}

}  // namespace

TEST_CASE("recurrence words") {
    CHECK(alpha_word(0) == Word::from_syllables({{1, -1}, {0, 1}}));  // b^-1 a
    CHECK(alpha_word(1) == Word::gen(0));                             // a
    CHECK(alpha_word(2) ==
          Word::from_syllables({{0, -1}, {1, -1}, {0, 2}}));          // a^-1 b^-1 a^2
    CHECK_THROWS_AS(alpha_word(-1), std::invalid_argument);

    // In the Klein-bottle group the recurrence marches through the slopes:
    // the q-th word reduces to b^{q-1} a.
    for (std::int64_t q = 0; q <= 12; ++q) {
        auto [i, j] = klein_normal_form(alpha_word(q));
        CHECK(i == q - 1);
        CHECK(j == 1);
        // free abelianization: conjugation-invariant, so period two
        auto sums = alpha_word(q).abelianized(2);
        CHECK(sums[0] == 1);
        CHECK(sums[1] == (q % 2 == 0 ? -1 : 0));
    }
}
