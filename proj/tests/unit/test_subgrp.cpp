#include <doctest.h>

#include <cmlab/cartan.hpp>
#include <cmlab/errors.hpp>
#include <cmlab/subgrp.hpp>

#include "helpers.hpp"

using namespace cmlab;
using namespace testutil;

TEST_SUITE("subgrp") {
TEST_CASE("closure") {
    CHECK(Subgroup::closure(std::span<const Mat2>{}, 8).order() == 1);
    CHECK(Subgroup::closure({Mat2(1, 1, 1, 0, 2)}, 2).order() == 3);
    const auto s = shape_from_params(-4, 0, 16);
    const Subgroup J = Subgroup::closure({Mat2::scalar(5, 16), Mat2(1, 1, -4, 1, 16)}, 16);
    CHECK(J.order() * 2 == cartan_group(s).order());
    CHECK(J.is_subgroup_of(cartan_group(s)));
}

TEST_CASE("index_in") {
    const Subgroup g = C(-7, 1, 9);
    CHECK(index_in(g, g) == 1);
    CHECK(index_in(C(-7, 1, 9), N(-7, 1, 9)) == 2);
    CHECK_THROWS_AS(index_in(N(-7, 1, 9), C(-7, 1, 9)), NotASubgroup);
}

TEST_CASE("reduce_mod") {
    const Subgroup g = N(-7, 1, 27);
    CHECK(reduce_mod(g, 27) == g);
    CHECK(reduce_mod(C(-7, 1, 25), 5) == C(-7, 1, 5));
    CHECK(reduce_mod(C(-3, 1, 8), 2) == C(-3, 1, 2));
    // elkies-analog shape at level 9: the Cartan part reduces onto C(3), with c_1 onto N(3)
    const u32 d9 = shape(-3, 1, 9).delta;
    const Mat2 two = Mat2::scalar(2, 9), u(1, 1, d9, 1, 9);
    CHECK(index_in(Subgroup::closure({two, u}, 9), C(-3, 1, 9)) == 3);
    CHECK(reduce_mod(Subgroup::closure({two, u}, 9), 3) == C(-3, 1, 3));
    CHECK(reduce_mod(Subgroup::closure({two, u, c_eps(1, 9)}, 9), 3) == N(-3, 1, 3));
    CHECK_THROWS_AS(reduce_mod(g, 4), NotDivisor);
}

TEST_CASE("full_preimage and kernels") {
    const Subgroup amb = C(-7, 1, 25);
    CHECK(full_preimage(reduce_mod(amb, 5), amb) == amb);
    for (auto [p, q] : {std::pair<u32, u32>{3, 9}, {5, 25}, {2, 4}, {4, 8}}) {
        const Subgroup hi = C(-7, 1, q), lo = C(-7, 1, p);
        const Subgroup ker = reduction_kernel(hi, p);
        const u32 prime = p % 2 == 0 ? 2 : p;
        CHECK(ker.order() == u64(prime) * prime);
        CHECK(full_preimage(lo, hi) == hi);
        CHECK(full_preimage(Subgroup(p), hi) == ker);
        if (!lo.generators().empty()) {
            const Subgroup sub = Subgroup::closure({lo.generators()[0]}, p);
            CHECK(full_preimage(sub, hi).order() == sub.order() * ker.order());
        }
    }
    CHECK(reduction_kernel(gl2_group(9), 3).order() == 81);
    CHECK(reduction_kernel(gl2_group(8), 4).order() == 16);
}

TEST_CASE("abelian_invariants") {
    CHECK(abelian_invariants(C(-4, 1, 8)) == std::vector<u64>{2, 4, 4});
    CHECK(abelian_invariants(C(-3, 1, 9)) == std::vector<u64>{3, 3, 6});
    CHECK(abelian_invariants(C(-8, 1, 8)) == std::vector<u64>{2, 2, 8});
    for (i64 d : {-3, -4, -7, -8, -15}) {
        const Subgroup g = C(d, 2, 16);
        CHECK(abelian_invariants(g) == abelian_invariants_by_order_stats(g));
    }
    CHECK(invariants_of_product({2, 4, 3}) == std::vector<u64>{2, 12});
    CHECK_THROWS_AS(abelian_invariants(gl2_group(2)), NotAbelian);
}

TEST_CASE("subgroups_of_prime_index") {
    const Subgroup cyc = Subgroup::closure({Mat2(1, 1, 1, 0, 2)}, 2);
    CHECK(subgroups_of_prime_index(cyc, 2).empty());
    CHECK(subgroups_of_prime_index(C(-4, 1, 4), 2).size() == 3);
    CHECK(subgroups_of_prime_index(C(-3, 1, 4), 3).size() == 1);
    // (k^r - 1)/(k - 1) against the full lattice
    for (const Subgroup& g : {C(-4, 1, 8), C(-3, 1, 9), C(-8, 1, 8), C(-7, 1, 9)}) {
        const auto lattice = all_subgroups(g);
        for (u64 k : {2u, 3u}) {
            std::size_t brute = 0;
            for (const auto& h : lattice) brute += h.order() * k == g.order();
            CHECK(subgroups_of_prime_index(g, k).size() == brute);
        }
    }
}

TEST_CASE("subgroups_of_index 6") {
    const Subgroup g = C(-3, 1, 9);
    std::size_t brute = 0;
    for (const auto& h : all_subgroups(g)) brute += h.order() * 6 == g.order();
    CHECK(subgroups_of_index(g, 6).size() == brute);
}

TEST_CASE("is_stable_under") {
    const auto s = shape(-3, 1, 4);
    const auto cc = cc_automorphism(s);
    CHECK(is_stable_under(cartan_group(s), cc));
    CHECK_FALSE(is_stable_under(Subgroup::closure({unit_to_matrix(1, 1, s)}, 4), cc));
    for (u32 q : {8u, 16u, 32u}) {
        const auto t = shape(-4, 1, q);
        const Subgroup h = Subgroup::closure({Mat2::scalar(-3, q), unit_to_matrix(2, -1, t)}, q);
        CHECK(is_stable_under(h, cc_automorphism(t)));
    }
}

TEST_CASE("conjugators") {
    const Subgroup amb = N(-7, 1, 9);
    for (const Mat2& a : {c_eps(1, 9), c_eps(-1, 9)}) {
        const auto xs = conjugators(a, a, amb);
        CHECK(std::find(xs.begin(), xs.end(), Mat2::identity(9)) != xs.end());
    }
    for (u32 q : {3u, 5u, 9u}) {
        const auto xs = conjugators_in_gl(c_eps(-1, q), c_eps(1, q));
        std::size_t anti = 0;
        for (u32 b = 0; b < q; ++b)
            for (u32 c = 0; c < q; ++c) anti += Mat2(0, b, c, 0, q).invertible();
        CHECK(xs.size() == anti);
        for (const Mat2& x : xs) CHECK((x.a11 == 0 && x.a22 == 0));
    }
    CHECK(conjugators(c_eps(1, 9), c_eps(-1, 9), N(-3, 1, 9)).empty());
}

TEST_CASE("enumeration cap") {
    const u64 old = enumeration_cap();
    set_enumeration_cap(1000);
    CHECK_THROWS_AS(gl2_group(16), TooLarge);
    set_enumeration_cap(u64(1) << 40);
    CHECK(enumeration_cap() == kHardCap);
    set_enumeration_cap(old);
}

TEST_CASE("from_keys verification") {
    const Subgroup g = C(-7, 1, 8);
    std::vector<u64> keys = g.keys();
    CHECK(Subgroup::from_keys(8, keys, {}, true) == g);
    keys.pop_back();
    CHECK_THROWS_AS(Subgroup::from_keys(8, keys, {}, true), NotASubgroup);
}
}
