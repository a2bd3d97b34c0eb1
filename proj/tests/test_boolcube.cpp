#include "blockcomp/boolcube.hpp"
#include "blockcomp/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <numeric>

using namespace blockcomp;

TEST_CASE("truth tables use x1 as the low bit") {
    const auto f = dictator_function(3, 0);
    CHECK(f(0b001));
    CHECK_FALSE(f(0b110));
    const std::uint8_t x[] = {1, 0, 0};
    CHECK(f.evaluate(x));
    const std::uint8_t short_input[] = {1, 0};
    CHECK_THROWS_AS(f.evaluate(short_input), ArityMismatch);
}

TEST_CASE("constructor validates the table") {
    CHECK_THROWS_AS(BooleanFunction(2, {0, 1, 1}), ArityMismatch);
    CHECK_THROWS_AS(BooleanFunction(1, {0, 2}), ParseError);
}

TEST_CASE("builtins") {
    CHECK(or_function(3).is_constant() == false);
    CHECK(constant_function(3, true).is_constant());
    CHECK(and_function(3)(7));
    CHECK_FALSE(and_function(3)(6));
    CHECK(parity_function(3)(0b111));
    CHECK(majority_function(5)(0b10101));
    CHECK_FALSE(majority_function(5)(0b10001));
    CHECK(threshold_function(4, 2)(0b1001));
    CHECK(or_function(2).negation() == BooleanFunction(2, {1, 0, 0, 0}));
}

TEST_CASE("Fourier transform matches the defining sum") {
    for (int n = 1; n <= 4; ++n) {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const auto f = BooleanFunction::from_predicate(n, [&](std::uint64_t x) {
                return ((x * 2654435761u + seed * 97) >> 3) & 1;
            });
            const auto spectrum = fourier(f);
            const auto expected = oracle::fourier(n, oracle::as_rationals(f));
            CHECK(spectrum.coeffs == expected);
            CHECK(inverse_fourier(spectrum) == oracle::as_rationals(f));
        }
    }
}

TEST_CASE("parity spectrum sits on the top character") {
    const auto s = fourier(parity_function(4));
    CHECK(s[0] == Rational(1, 2));
    CHECK(s[15] == Rational(-1, 2));
    CHECK(s.min_support_weight() == 0);
    CHECK(s.max_abs() == Rational(1, 2));
}

TEST_CASE("symmetric profiles") {
    SUBCASE("OR has ell0 = 1") {
        const auto p = symmetric_profile(or_function(6));
        CHECK(p.ell0 == 1);
        CHECK(p.ell1 == 0);
    }
    SUBCASE("AND has ell1 = 1") {
        const auto p = symmetric_profile(and_function(6));
        CHECK(p.ell0 == 0);
        CHECK(p.ell1 == 1);
    }
    SUBCASE("threshold at the top") {
        const std::uint8_t v[] = {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
        const auto p = profile_from_values(v);
        CHECK(p.n == 16);
        CHECK(p.ell0 == 0);
        CHECK(p.ell1 == 5);
    }
    SUBCASE("odd-n middle flip is outside both windows") {
        const auto p = symmetric_profile(majority_function(3));
        CHECK(p.ell0 == 0);
        CHECK(p.ell1 == 0);
    }
    CHECK_THROWS_AS(symmetric_profile(dictator_function(3, 1)), NotSymmetric);
}

TEST_CASE("inner functions") {
    const auto ip = inner_product_function(2);
    CHECK(ip.at(0b11, 0b01) == Cell::one);
    CHECK(ip.at(0b11, 0b11) == Cell::zero);
    CHECK(ip.is_total());

    const auto d = disjointness_restricted(6);
    CHECK_FALSE(d.is_total());
    CHECK(d.at(0b000011, 0b001100) == Cell::zero);
    CHECK(d.at(0b000011, 0b000110) == Cell::one);
    CHECK(d.at(0b000011, 0b000011) == Cell::undefined);  // two shared elements
    CHECK(d.at(0b000111, 0b000000) == Cell::undefined);  // wrong weight

    CHECK(random_inner_function(3, 9) == random_inner_function(3, 9));
    CHECK_FALSE(random_inner_function(3, 9) == random_inner_function(3, 10));
}

TEST_CASE("block composition") {
    const auto f = parity_function(2);
    const auto g = inner_product_function(2);
    const auto fg = block_compose(f, g);
    CHECK(fg.bits_per_party() == 4);
    for (std::uint64_t x = 0; x < 16; ++x)
        for (std::uint64_t y = 0; y < 16; ++y) {
            const int expected = oracle::parity_of(x & y);
            CHECK(fg.at(x, y) == to_cell(expected));
        }
    CHECK_THROWS_AS(block_compose(or_function(5), inner_product_function(3)), SizeGuardExceeded);
}

TEST_CASE("composition propagates undefined blocks") {
    const auto g = disjointness_restricted(3);
    const auto f = or_function(2);
    CHECK(composed_value(f, g, 0b001'001, 0b010'001) == Cell::one);
    CHECK(composed_value(f, g, 0b001'001, 0b010'010) == Cell::zero);
    CHECK(composed_value(f, g, 0b011'001, 0b010'010) == Cell::undefined);
}

TEST_CASE("pad_restrict fills the top variables") {
    const auto f = threshold_function(5, 3);
    const auto g = pad_restrict(f, 1, 2);  // f(x1 x2 1 0 0)
    CHECK(g.arity() == 2);
    CHECK_FALSE(g(0b01));
    CHECK(g(0b11));
    CHECK_THROWS_AS(pad_restrict(f, 3, 2), ArityMismatch);
    CHECK_THROWS_AS(pad_restrict(f, -1, 0), ParameterError);
}
