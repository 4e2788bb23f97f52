#include <doctest.h>

#include <cmlab/divpoly.hpp>
#include <cmlab/errors.hpp>
#include <cmlab/oracle.hpp>

using namespace cmlab;

TEST_SUITE("divpoly") {
TEST_CASE("small m") {
    const Param A{0, 0}, B{0, 1};
    CHECK(division_poly(A, B, 1) == BivarPoly::constant(1));
    const BivarPoly x3s = BivarPoly::monomial(1, 3, 0) + BivarPoly::monomial(1, 0, 1);
    CHECK(division_poly(A, B, 2) == x3s);
    const BivarPoly q = BivarPoly::monomial(1, 6, 0) + BivarPoly::monomial(20, 3, 1) + BivarPoly::monomial(-8, 0, 2);
    CHECK(division_poly(A, B, 4) == x3s * q);
    // psi_3 = 3x^4 + 6Ax^2 + 12Bx - A^2
    const BivarPoly p3 = BivarPoly::monomial(3, 4, 0) + BivarPoly::monomial(12, 1, 1);
    CHECK(division_poly(A, B, 3) == p3);
}

TEST_CASE("quotient and resolvent") {
    const auto rep = verify_j0_quartic();
    CHECK(rep.pass);
    CHECK(rep.quotient == "x^6 + 20*s*x^3 - 8*s^2");
    for (const auto& c : rep.checks) CHECK_MESSAGE(c.pass, c.name << ": " << c.detail);
    const auto [q, r] = divmod_monic_x(division_poly({0, 0}, {0, 1}, 4), division_poly({0, 0}, {0, 1}, 2));
    CHECK(r.is_zero());
}

TEST_CASE("parse_param") {
    CHECK(parse_param("0") == Param{0, 0});
    CHECK(parse_param("s") == Param{0, 1});
    CHECK(parse_param("-3") == Param{-3, 0});
    CHECK(parse_param("2s") == Param{0, 2});
    CHECK(parse_param("1-2s") == Param{1, -2});
    CHECK(parse_param("-s") == Param{0, -1});
    CHECK_THROWS_AS(parse_param("x"), UsageError);
}

TEST_CASE("torsion points") {
    CHECK(verify_divpoly_identity().pass);
    CHECK(verify_divpoly_points(5, 6).pass);
    CHECK(verify_divpoly_points(7, 5).pass);
}
}
