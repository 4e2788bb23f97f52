#include <doctest.h>

#include <cmlab/cartan.hpp>
#include <cmlab/errors.hpp>
#include <cmlab/subgrp.hpp>

#include "helpers.hpp"

using namespace cmlab;
using namespace testutil;

TEST_SUITE("cartan") {
TEST_CASE("cartan_params") {
    auto s = shape(-4, 1, 16);
    CHECK(s.delta == rmod(-1, 16));
    CHECK(s.phi == 0);
    s = shape(-3, 1, 8);
    CHECK(s.delta == rmod(-1, 8));
    CHECK(s.phi == 1);
    s = shape(-3, 1, 9);
    CHECK(s.delta == (Residue(-3, 9) * res_inv(Residue(4, 9))).value());
    CHECK(s.phi == 0);
    s = shape(-7, 1, 8);
    CHECK(s.delta == rmod(-2, 8));
    CHECK(s.phi == 1);
}

TEST_CASE("invalid orders") {
    CHECK_THROWS_AS(validate(OrderDesc{-5, 1}), InvalidOrder);
    CHECK_THROWS_AS(validate(OrderDesc{-12, 1}), InvalidOrder);
    CHECK_THROWS_AS(validate(OrderDesc{-3, 0}), InvalidOrder);
    CHECK_NOTHROW(validate(OrderDesc{-40, 6}));
    CHECK(is_fundamental_discriminant(-8));
    CHECK_FALSE(is_fundamental_discriminant(-16));
}

TEST_CASE("cartan_group") {
    CHECK(cartan_group(shape_from_params(1, 1, 2)).order() == 3);
    CHECK(C(-3, 1, 3).order() == 6);
    // 2 is not a square mod 5
    CHECK(cartan_group(shape_from_params(2, 0, 5)).order() == 24);
    CHECK(C(-3, 1, 3).is_abelian());
}

TEST_CASE("normalizer_group") {
    const auto g = normalizer_group(shape_from_params(1, 1, 2));
    CHECK(g.order() == 6);
    CHECK(g == gl2_group(2));
    CHECK(N(-7, 1, 8).order() == 32);
    for (u32 level : {3u, 4u, 5u, 8u, 9u, 16u, 25u, 27u})
        for (i64 d : {-3, -4, -7, -8, -15, -24}) CHECK(index_in(C(d, 1, level), N(d, 1, level)) == 2);
    // level 2 with phi = 0: c_0 is the identity mod 2
    CHECK(index_in(C(-4, 1, 2), N(-4, 1, 2)) == 1);
}

TEST_CASE("cartan_order_formula") {
    CHECK(cartan_order_formula(OrderDesc{-3, 1}, 3, 2) == 54);
    CHECK(cartan_order_formula(OrderDesc{-7, 1}, 3, 1) == 8);
    for (i64 d : {-3, -4, -7, -8, -11, -15, -19, -20, -24, -40})
        for (i64 f = 1; f <= 6; ++f)
            for (u64 p : {2u, 3u, 5u, 7u})
                for (int n = 1; n <= 3; ++n) {
                    const OrderDesc o{d, f};
                    CHECK(cartan_order_formula(o, p, n + 1) == p * p * cartan_order_formula(o, p, n));
                }
}

TEST_CASE("unit_to_matrix") {
    const auto s4 = shape_from_params(-1, 0, 4);
    CHECK(unit_to_matrix(1, 0, s4) == Mat2::identity(4));
    const Mat2 i = unit_to_matrix(0, 1, s4);
    CHECK(i == Mat2(0, 1, -1, 0, 4));
    CHECK(mat_order(i) == 4);
    CHECK(unit_to_matrix(1, 1, shape_from_params(-1, 1, 8)) == Mat2(2, 1, -1, 1, 8));
    CHECK_THROWS_AS(unit_to_matrix(2, 0, s4), NotAUnit);
    const auto [a, b] = matrix_to_unit(Mat2(2, 1, -1, 1, 8), shape_from_params(-1, 1, 8));
    CHECK(a == 1);
    CHECK(b == 1);
}

TEST_CASE("cc_action") {
    const auto s = shape_from_params(-1, 0, 8);
    CHECK(cc_action(Mat2::identity(8), s) == Mat2::identity(8));
    CHECK(cc_action(Mat2(0, 1, -1, 0, 8), s) == Mat2(0, -1, 1, 0, 8));
    for (i64 d : {-3, -7, -8}) {
        const auto sh = shape(d, 1, 8);
        const Subgroup Cg = cartan_group(sh), Ng = normalizer_group(sh);
        for (const Mat2& g : Ng.elements()) {
            if (Cg.contains(g)) continue;
            for (const Mat2& m : Cg.elements()) CHECK(g * m * mat_inv(g) == cc_action(m, sh));
        }
    }
}

TEST_CASE("conj_class") {
    CHECK(conj_class(shape(-3, 1, 7), 7) == ConjClass::split);
    CHECK(conj_class(shape(-3, 1, 5), 5) == ConjClass::nonsplit);
    CHECK(conj_class(shape(-3, 1, 3), 3) == ConjClass::ramified_or_singular);
}

TEST_CASE("weber_quotient_order") {
    CHECK(weber_quotient_order(OrderDesc{-3, 1}, 3) == 1);
    CHECK(weber_quotient_order(OrderDesc{-4, 1}, 2) == 1);
    CHECK(weber_quotient_order(OrderDesc{-7, 1}, 3) == 4);
}

TEST_CASE("sqrt_mod_prime_power") {
    const auto r = sqrt_mod_prime_power(-7, 2, 5);
    REQUIRE(r);
    CHECK((u64(*r) * *r) % 32 == rmod(-7, 32));
    CHECK_FALSE(sqrt_mod_prime_power(2, 5, 2));
    const auto t = sqrt_mod_prime_power(2, 7, 3);
    REQUIRE(t);
    CHECK((u64(*t) * *t) % 343 == 2);
}
}
