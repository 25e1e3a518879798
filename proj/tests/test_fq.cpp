#include <catch2/catch_amalgamated.hpp>

#include "sl2cv/fq.hpp"

using namespace sl2cv;

TEST_CASE("field construction and canonical moduli") {
    auto f2 = FqField::make(2);
    CHECK(f2->order() == 2);
    CHECK(f2->modulus() == std::vector<std::int64_t>{0, 1});

    auto f4 = FqField::make(2, 2);
    CHECK(f4->order() == 4);
    // the only irreducible monic quadratic over Z_2
    CHECK(f4->modulus() == std::vector<std::int64_t>{1, 1, 1});

    auto f5 = FqField::make(5);
    CHECK(f5->order() == 5);

    CHECK_THROWS_AS(FqField::make(4), std::invalid_argument);
    CHECK_THROWS_AS(FqField::make(1), std::invalid_argument);
    CHECK_THROWS_AS(FqField::make(5, 0), std::invalid_argument);
}

TEST_CASE("prime field arithmetic") {
    auto f5 = FqField::make(5);
    CHECK(f5->from_int(4) + f5->from_int(4) == f5->from_int(3));
    CHECK(f5->from_int(4).inv() == f5->from_int(4));  // 4*4 = 16 = 1 mod 5
    CHECK(f5->from_int(2).pow(-2) == f5->from_int(4));
    CHECK(f5->from_int(7) == f5->from_int(2));
    CHECK((-f5->from_int(1)) == f5->from_int(4));
    CHECK_THROWS_AS(f5->zero().inv(), std::domain_error);
}

TEST_CASE("quartic field: g*g reduces by the modulus") {
    auto f4 = FqField::make(2, 2);
    FqElem g = f4->generator();
    // X^2 = X + 1 mod X^2+X+1
    CHECK(g * g == g + f4->one());
    CHECK(g.pow(3) == f4->one());
    CHECK(g.inv() * g == f4->one());
}

TEST_CASE("cross-field operations are errors") {
    auto f5 = FqField::make(5);
    auto f7 = FqField::make(7);
    CHECK_THROWS_AS(f5->one() + f7->one(), std::invalid_argument);
    // two handles to the same (p, k) are the same field
    auto f5b = FqField::make(5);
    CHECK(f5->from_int(3) + f5b->from_int(4) == f5->from_int(2));
}

TEST_CASE("square roots of minus one") {
    CHECK(FqField::make(2)->sqrt_minus_one().value() == FqField::make(2)->one());
    auto f5 = FqField::make(5);
    auto x5 = f5->sqrt_minus_one();
    REQUIRE(x5.has_value());
    CHECK(*x5 == f5->from_int(2));  // smallest of {2, 3}
    CHECK(!FqField::make(3)->sqrt_minus_one().has_value());
    auto f9 = FqField::make(3, 2);
    auto x9 = f9->sqrt_minus_one();
    REQUIRE(x9.has_value());
    CHECK((*x9) * (*x9) == -f9->one());
    auto f101 = FqField::make(101);
    auto x101 = f101->sqrt_minus_one();
    REQUIRE(x101.has_value());
    CHECK((*x101) * (*x101) == -f101->one());
}

TEST_CASE("enumeration is complete and duplicate-free") {
    for (auto [p, k] : {std::pair<std::int64_t, std::int64_t>{2, 1}, {2, 2}, {3, 2}}) {
        auto F = FqField::make(p, k);
        auto elems = F->enumerate();
        CHECK(static_cast<std::int64_t>(elems.size()) == F->order());
        for (std::size_t i = 0; i < elems.size(); ++i) {
            CHECK(elems[i].pow(F->order()) == elems[i]);  // a^{p^k} = a
            for (std::size_t j = i + 1; j < elems.size(); ++j) CHECK(elems[i] != elems[j]);
        }
    }
}

TEST_CASE("field axioms, exhaustively for small fields") {
    for (auto [p, k] : {std::pair<std::int64_t, std::int64_t>{2, 2}, {3, 1}, {3, 2}, {5, 1}, {7, 1}}) {
        auto F = FqField::make(p, k);
        auto elems = F->enumerate();
        for (const auto& a : elems) {
            if (!a.is_zero()) CHECK(a * a.inv() == F->one());
            for (const auto& b : elems) {
                CHECK(a + b == b + a);
                CHECK(a * b == b * a);
                for (const auto& c : elems) {
                    CHECK((a + b) + c == a + (b + c));
                    CHECK((a * b) * c == a * (b * c));
                    CHECK(a * (b + c) == a * b + a * c);
                }
            }
        }
    }
}

TEST_CASE("Frobenius is additive, exhaustively up to order 81") {
    for (auto [p, k] : {std::pair<std::int64_t, std::int64_t>{2, 2}, {2, 3}, {2, 4},
                        {3, 2}, {3, 4}, {5, 2}, {7, 2}}) {
        auto F = FqField::make(p, k);
        auto elems = F->enumerate();
        for (const auto& a : elems)
            for (const auto& b : elems) CHECK((a + b).pow(p) == a.pow(p) + b.pow(p));
    }
}

TEST_CASE("embedding into extensions is a field homomorphism") {
    auto f4 = FqField::make(2, 2);
    auto f16 = FqField::make(2, 4);
    for (const auto& a : f4->enumerate()) {
        for (const auto& b : f4->enumerate()) {
            CHECK(embed(a + b, f16) == embed(a, f16) + embed(b, f16));
            CHECK(embed(a * b, f16) == embed(a, f16) * embed(b, f16));
        }
        CHECK(embed(a, f16).pow(4) == embed(a, f16));  // image lies in the F_4 subfield
    }
    auto f3 = FqField::make(3);
    auto f9 = FqField::make(3, 2);
    CHECK(embed(f3->from_int(2), f9) == f9->from_int(2));
    CHECK_THROWS_AS(embed(f3->one(), FqField::make(2, 2)), std::invalid_argument);
}

TEST_CASE("element coefficient access") {
    auto f9 = FqField::make(3, 2);
    FqElem e = f9->element(5);  // 5 = 2 + 1*3
    CHECK(e.coeffs() == std::vector<std::int64_t>{2, 1});
}
