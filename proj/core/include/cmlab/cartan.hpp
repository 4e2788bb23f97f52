#pragma once
// Imaginary quadratic orders, Cartan subgroups C_{delta,phi}(N) and their normalizers.

#include <string>

#include "cmlab/modmat.hpp"
#include "cmlab/subgrp.hpp"

namespace cmlab {

struct OrderDesc {
    i64 disc_K = -3;  // fundamental discriminant
    i64 conductor = 1;

    i64 disc() const { return disc_K * conductor * conductor; }
    friend bool operator==(const OrderDesc&, const OrderDesc&) = default;
};

bool is_fundamental_discriminant(i64 d);
// Throws InvalidOrder.
void validate(const OrderDesc& o);

struct CartanShape {
    u32 level = 2;
    u32 delta = 0;
    u32 phi = 0;
    OrderDesc source;
    friend bool operator==(const CartanShape&, const CartanShape&) = default;
};

// Abstract shape (no arithmetic provenance), for statements about (delta, phi) pairs.
CartanShape shape_from_params(i64 delta, i64 phi, u32 level);

enum class ConjClass { split, nonsplit, ramified_or_singular };
std::string to_string(ConjClass c);

enum class JClass { generic, j_zero, j_1728 };
JClass j_class(const OrderDesc& o);

CartanShape cartan_params(const OrderDesc& order, u32 level);

// (a + b*phi, b; delta*b, a)
Mat2 unit_to_matrix(i64 a, i64 b, const CartanShape& s);
bool in_cartan(const Mat2& m, const CartanShape& s);
// (a, b) with m = unit_to_matrix(a, b); throws NotInCartan.
std::pair<u32, u32> matrix_to_unit(const Mat2& m, const CartanShape& s);
Mat2 cc_action(const Mat2& m, const CartanShape& s);
// c_phi = (-1 0; phi 1)
Mat2 cc_phi(const CartanShape& s);
// c_eps = (eps 0; 0 -eps)
Mat2 c_eps(int eps, u32 level);

Subgroup cartan_group(const CartanShape& s);
Subgroup normalizer_group(const CartanShape& s);

int kronecker(i64 d, u64 p);
u64 cartan_order_formula(const OrderDesc& order, u64 p, int n);
ConjClass conj_class(const CartanShape& s, u64 p);

// Automorphism induced by complex conjugation on the Cartan subgroup.
Automorphism cc_automorphism(const CartanShape& s);

u64 weber_quotient_order(const OrderDesc& order, u32 level);

// Square root of a mod p^n by Hensel lifting (p odd, or a = 1 mod 8 for p = 2).
// Returns nullopt when none exists.
std::optional<u32> sqrt_mod_prime_power(i64 a, u64 p, int n);

}  // namespace cmlab
