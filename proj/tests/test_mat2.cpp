#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sl2cv/fq.hpp"
#include "sl2cv/mat2.hpp"
#include "sl2cv/oracle.hpp"
#include "sl2cv/word.hpp"

using namespace sl2cv;

namespace {

Mat2<FqElem> mk(const FqFieldPtr& F, std::int64_t a, std::int64_t b, std::int64_t c,
                std::int64_t d) {
    return Mat2<FqElem>(F->from_int(a), F->from_int(b), F->from_int(c), F->from_int(d));
}

// Independent reducibility oracle: try every line of P^1 over the quadratic
// extension for invariance under all matrices.
bool has_common_line_bruteforce(const std::vector<Mat2<FqElem>>& mats) {
    auto E = FqField::make(mats[0].a11.field()->p(), 2 * mats[0].a11.field()->k());
    std::vector<Mat2<FqElem>> lifted;
    for (const auto& M : mats)
        lifted.push_back(Mat2<FqElem>(embed(M.a11, E), embed(M.a12, E), embed(M.a21, E),
                                      embed(M.a22, E)));
    std::vector<std::pair<FqElem, FqElem>> lines;
    for (std::int64_t w = 0; w < E->order(); ++w) lines.push_back({E->one(), E->element(w)});
    lines.push_back({E->zero(), E->one()});
    for (auto& [x, y] : lines) {
        bool ok = true;
        for (const auto& M : lifted) {
            FqElem wx = M.a11 * x + M.a12 * y;
            FqElem wy = M.a21 * x + M.a22 * y;
            if (!(wx * y - wy * x).is_zero()) { ok = false; break; }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("basic matrix algebra") {
    auto f5 = FqField::make(5);
    auto E = Mat2<FqElem>::identity_like(f5->one());
    CHECK(E.trace() == f5->from_int(2));
    auto f2 = FqField::make(2);
    CHECK(Mat2<FqElem>::identity_like(f2->one()).trace() == f2->zero());

    auto rot = mk(f5, 0, -1, 1, 0);  // the Klein-bottle generator image
    CHECK(rot.det() == f5->one());
    CHECK(rot.inverse() == mk(f5, 0, 1, -1, 0));
    CHECK(rot * rot.inverse() == E);
    CHECK_THROWS_AS(mk(f5, 1, 2, 2, 4).inverse(), std::domain_error);
}

TEST_CASE("word evaluation on explicit representations") {
    auto f5 = FqField::make(5);
    // Klein relator a b a^-1 b on the rotation/diagonal pair
    GenAssignment<FqElem> klein{mk(f5, 0, -1, 1, 0), mk(f5, 2, 0, 0, 3)};
    Word rel = Word::from_syllables({{0, 1}, {1, 1}, {0, -1}, {1, 1}});
    CHECK(word_eval(klein, rel).is_identity());

    auto f7 = FqField::make(7);
    // trefoil pair at x = 2 (2^-1 = 4 mod 7)
    GenAssignment<FqElem> trefoil{mk(f7, 2, 1, 0, 4), mk(f7, 4, 0, -1, 2)};
    Word ghg = Word::from_syllables({{0, 1}, {1, 1}, {0, 1}});
    Word hgh = Word::from_syllables({{1, 1}, {0, 1}, {1, 1}});
    CHECK(word_eval(trefoil, ghg) == word_eval(trefoil, hgh));
    Word central = Word::from_syllables({{0, 2}, {1, 1}, {0, 2}, {1, 1}});
    CHECK(word_eval(trefoil, central) == -Mat2<FqElem>::identity_like(f7->one()));

    CHECK(word_eval(trefoil, Word()).is_identity());
    CHECK_THROWS_AS(word_eval(trefoil, Word::gen(5)), std::invalid_argument);
}

TEST_CASE("commutator traces") {
    auto f5 = FqField::make(5);
    auto E = Mat2<FqElem>::identity_like(f5->one());
    CHECK(commutator_trace(E, E) == f5->from_int(2));

    // Klein pair at y = 2: y^2 + y^-2 = 4 + 4 = 3 mod 5
    CHECK(commutator_trace(mk(f5, 0, -1, 1, 0), mk(f5, 2, 0, 0, 3)) == f5->from_int(3));

    // trefoil pair at x = 2 over F_7: x^2 + 1 + x^-2 = 4 + 1 + 2 = 0 mod 7
    auto f7 = FqField::make(7);
    CHECK(commutator_trace(mk(f7, 2, 1, 0, 4), mk(f7, 4, 0, -1, 2)) == f7->zero());
}

TEST_CASE("common invariant lines") {
    auto f5 = FqField::make(5);
    auto E = Mat2<FqElem>::identity_like(f5->one());
    auto only_e = common_invariant_line({E});
    REQUIRE(only_e.has_value());
    CHECK(only_e->x == f5->one());
    CHECK(only_e->y == f5->zero());

    // upper-triangular with central partner: the line (1:0)
    auto tri = common_invariant_line({mk(f5, 2, 1, 0, 3), -E});
    REQUIRE(tri.has_value());
    CHECK(tri->x == tri->x.one());
    CHECK(tri->y == tri->y.zero());

    // irreducible Klein pair at y = 2 over F_5: no line, even over F_25
    CHECK(!common_invariant_line({mk(f5, 0, -1, 1, 0), mk(f5, 2, 0, 0, 3)}).has_value());
    CHECK(!has_common_line_bruteforce({mk(f5, 0, -1, 1, 0), mk(f5, 2, 0, 0, 3)}));

    CHECK_THROWS_AS(common_invariant_line({}), std::invalid_argument);
}

TEST_CASE("is_irreducible on the Klein families") {
    auto f5 = FqField::make(5);
    CHECK(is_irreducible({mk(f5, 0, -1, 1, 0), mk(f5, 2, 0, 0, 3)}));   // y^2 != 1
    CHECK(!is_irreducible({mk(f5, 0, -1, 1, 0), mk(f5, 1, 0, 0, 1)}));  // y = 1
    CHECK(!is_irreducible({mk(f5, 2, 0, 0, 3), mk(f5, 2, 0, 0, 3)}));   // abelian pair
}

TEST_CASE("reducibility criterion agrees with the brute-force oracle, exhaustively") {
    for (auto [p, k] : {std::pair<std::int64_t, std::int64_t>{2, 1}, {3, 1}}) {
        auto F = FqField::make(p, k);
        auto sl2 = enumerate_sl2(F);
        FqElem two = F->from_int(2);
        for (const auto& A : sl2)
            for (const auto& B : sl2) {
                bool line = common_invariant_line({A, B}).has_value();
                CHECK(line == has_common_line_bruteforce({A, B}));
                CHECK(line == (commutator_trace(A, B) == two));
            }
    }
}

TEST_CASE("random-word properties") {
    auto f9 = FqField::make(3, 2);
    auto sl2 = enumerate_sl2(f9, 16);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, sl2.size() - 1);
    std::uniform_int_distribution<int> gen_pick(0, 1);
    std::uniform_int_distribution<std::int64_t> exp_pick(-3, 3);
    FqElem one = f9->one();
    for (int trial = 0; trial < 200; ++trial) {
        GenAssignment<FqElem> rep{sl2[pick(rng)], sl2[pick(rng)]};
        Word w;
        for (int s = 0; s < 6; ++s) w.append(gen_pick(rng), exp_pick(rng));
        auto M = word_eval(rep, w);
        CHECK(M.det() == one);
        CHECK(word_eval(rep, w.inverse()) == M.inverse());
        const auto& P = sl2[pick(rng)];
        CHECK(M.conjugated_by(P).trace() == M.trace());
    }
}
