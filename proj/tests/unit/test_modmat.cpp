#include <doctest.h>

#include <cmlab/errors.hpp>
#include <cmlab/modmat.hpp>

using namespace cmlab;

TEST_SUITE("modmat") {
TEST_CASE("res_inv") {
    CHECK(res_inv(Residue(4, 9)) == Residue(7, 9));
    for (u32 n : {2u, 9u, 16u, 49u}) CHECK(res_inv(Residue(1, n)) == Residue(1, n));
    CHECK_THROWS_AS(res_inv(Residue(2, 8)), NotAUnit);
    CHECK(res_inv(Residue(-5, 27)) * Residue(-5, 27) == Residue(1, 27));
}

TEST_CASE("mat_mul") {
    const Mat2 A(3, 5, 7, 2, 16);
    CHECK(Mat2::identity(16) * A == A);
    CHECK(A * Mat2::identity(16) == A);
    const Mat2 F(1, 1, 1, 0, 2);
    CHECK(F * F == Mat2(0, 1, 1, 1, 2));
    CHECK(mat_pow(F, 3) == Mat2::identity(2));
    CHECK_THROWS_AS(Mat2(1, 0, 0, 1, 4) * Mat2(1, 0, 0, 1, 8), LevelMismatch);
}

TEST_CASE("mat_inv") {
    CHECK(mat_inv(Mat2::identity(8)) == Mat2::identity(8));
    const Mat2 S(0, 1, 1, 0, 8);
    CHECK(mat_inv(S) == S);
    const Mat2 A(2, 1, -1, 2, 8);  // det 5
    const Mat2 Ai = mat_inv(A);
    CHECK(A * Ai == Mat2::identity(8));
    // adjugate times det^-1: 5^-1 = 5 mod 8
    CHECK(Ai == Mat2(2 * 5, -1 * 5, 1 * 5, 2 * 5, 8));
    CHECK_THROWS_AS(mat_inv(Mat2(2, 0, 0, 1, 8)), Singular);
}

TEST_CASE("mat_order") {
    CHECK(mat_order(Mat2::identity(9)) == 1);
    CHECK(mat_order(Mat2(1, 1, 1, 0, 2)) == 3);
    for (u32 n : {3u, 4u, 8u, 9u, 25u, 27u}) CHECK(mat_order(Mat2(-1, 0, 0, 1, n)) == 2);
    CHECK(mat_order(Mat2(1, 1, 0, 1, 27)) == 27);
}

TEST_CASE("modular helpers") {
    CHECK(rmod(-1, 8) == 7);
    CHECK(inv_mod(3, 8) == 3);
    CHECK(valuation(24, 2, 10) == 3);
    CHECK(valuation(0, 3, 4) == 4);
    CHECK(prime_power(81) == std::pair<u64, int>{3, 4});
    CHECK(prime_power(12).first == 0);
    CHECK(gl2_order(2) == 6);
    CHECK(gl2_order(49) == 4840416);
    CHECK(gl2_order(12) == gl2_order(4) * gl2_order(3));
}

TEST_CASE("text round trip") {
    const Mat2 A(3, 6, -6, -3, 8);
    CHECK(to_text(A) == "3,6;2,5");
    CHECK(parse_text(to_text(A), 8) == A);
    CHECK(to_json_text(A) == "[[3,6],[2,5]] mod 8");
    CHECK(Mat2::from_key(A.key(), 8) == A);
}
}
