#include "cmlab/cartan.hpp"

#include <cstdlib>

namespace cmlab {

namespace {

bool squarefree(i64 m) {
    u64 x = std::llabs(m);
    for (u64 d = 2; d * d <= x; ++d)
        if (x % (d * d) == 0) return false;
    return true;
}

int mod4(i64 d) { return int(rmod(d, 4)); }

}  // namespace

bool is_fundamental_discriminant(i64 d) {
    if (d == 0 || d == 1) return false;
    if (mod4(d) == 1) return squarefree(d);
    if (mod4(d) != 0) return false;
    const i64 m = d / 4;
    const int r = mod4(m);
    return (r == 2 || r == 3) && squarefree(m);
}

void validate(const OrderDesc& o) {
    if (o.disc_K >= 0) throw InvalidOrder("discriminant must be negative, got " + std::to_string(o.disc_K));
    if (!is_fundamental_discriminant(o.disc_K))
        throw InvalidOrder(std::to_string(o.disc_K) + " is not a fundamental discriminant");
    if (o.conductor < 1) throw InvalidOrder("conductor must be >= 1");
}

CartanShape shape_from_params(i64 delta, i64 phi, u32 level) {
    if (level < 2 || level > kMaxLevel) throw TooLarge("level " + std::to_string(level));
    CartanShape s;
    s.level = level;
    s.delta = rmod(delta, level);
    s.phi = rmod(phi, level);
    s.source = OrderDesc{0, 0};
    return s;
}

std::string to_string(ConjClass c) {
    switch (c) {
        case ConjClass::split: return "split";
        case ConjClass::nonsplit: return "nonsplit";
        default: return "ramified-or-singular";
    }
}

JClass j_class(const OrderDesc& o) {
    if (o.disc_K == -3 && o.conductor == 1) return JClass::j_zero;
    if (o.disc_K == -4 && o.conductor == 1) return JClass::j_1728;
    return JClass::generic;
}

CartanShape cartan_params(const OrderDesc& order, u32 level) {
    validate(order);
    if (level < 2) throw InvalidOrder("level must be >= 2");
    if (level > kMaxLevel) throw TooLarge("level " + std::to_string(level));
    const i64 D = order.disc();
    CartanShape s;
    s.level = level;
    s.source = order;
    if (mod4(D) == 0) {
        s.delta = rmod(D / 4, level);
        s.phi = 0;
    } else if (level % 2 == 1) {
        s.delta = u32(u64(rmod(D, level)) * inv_mod(4, level) % level);
        s.phi = 0;
    } else {
        // D = 1 mod 4 here, so (disc_K - 1)/4 is integral.
        s.delta = rmod((order.disc_K - 1) / 4 * order.conductor * order.conductor, level);
        s.phi = rmod(order.conductor, level);
    }
    return s;
}

Mat2 unit_to_matrix(i64 a, i64 b, const CartanShape& s) {
    const u32 n = s.level;
    const i64 ar = rmod(a, n), br = rmod(b, n);
    Mat2 m(ar + br * s.phi, br, i64(u64(s.delta) * br % n), ar, n);
    if (!m.invertible())
        throw NotAUnit("a=" + std::to_string(ar) + " b=" + std::to_string(br) + " is not a unit");
    return m;
}

bool in_cartan(const Mat2& m, const CartanShape& s) {
    if (m.n != s.level) return false;
    const u64 n = s.level;
    return m.a21 == u64(s.delta) * m.a12 % n && m.a11 == (m.a22 + u64(s.phi) * m.a12) % n &&
           m.invertible();
}

std::pair<u32, u32> matrix_to_unit(const Mat2& m, const CartanShape& s) {
    if (m.n != s.level) throw LevelMismatch("matrix_to_unit");
    if (!in_cartan(m, s)) throw NotInCartan(to_text(m));
    return {m.a22, m.a12};
}

Mat2 cc_action(const Mat2& m, const CartanShape& s) {
    auto [a, b] = matrix_to_unit(m, s);
    const u64 n = s.level;
    return Mat2(a, -i64(b), -i64(u64(s.delta) * b % n), i64((a + u64(b) * s.phi) % n), s.level);
}

Mat2 cc_phi(const CartanShape& s) { return Mat2(-1, 0, s.phi, 1, s.level); }

Mat2 c_eps(int eps, u32 level) { return Mat2(eps, 0, 0, -eps, level); }

Subgroup cartan_group(const CartanShape& s) {
    const u32 n = s.level;
    check_cap(u64(n) * n, "Cartan subgroup");
    std::vector<u64> keys;
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b) {
            const u64 ab = u64(a) * b % n * s.phi % n;
            const u64 db = u64(s.delta) * b % n * b % n;
            const u64 norm = (u64(a) * a + ab + n - db) % n;
            if (!is_unit(norm, n)) continue;
            keys.push_back(Mat2((a + u64(b) * s.phi) % n, b, u64(s.delta) * b % n, a, n).key());
        }
    return Subgroup::from_keys(n, std::move(keys));
}

Subgroup normalizer_group(const CartanShape& s) {
    const Subgroup c = cartan_group(s);
    const Mat2 g = cc_phi(s);
    std::vector<u64> keys = c.keys();
    for (u64 k : c.keys()) keys.push_back(mat_mul(g, Mat2::from_key(k, s.level)).key());
    return Subgroup::from_keys(s.level, std::move(keys));
}

int kronecker(i64 d, u64 p) {
    if (p == 2) {
        if (d % 2 == 0) return 0;
        const u32 r = rmod(d, 8);
        return (r == 1 || r == 7) ? 1 : -1;
    }
    const u32 a = rmod(d, u32(p));
    if (a == 0) return 0;
    return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

u64 cartan_order_formula(const OrderDesc& order, u64 p, int n) {
    validate(order);
    if (!is_prime(p) || n < 1) throw InvalidOrder("need a prime p and n >= 1");
    if ((order.disc_K * order.conductor) % i64(p) == 0) return ipow(p, 2 * n - 1) * (p - 1);
    const u64 base = ipow(p, 2 * (n - 1));
    return kronecker(order.disc_K, p) == 1 ? base * (p - 1) * (p - 1) : base * (p * p - 1);
}

ConjClass conj_class(const CartanShape& s, u64 p) {
    if (s.level % p != 0) throw NotDivisor("prime does not divide the level");
    const u32 q = u32(p);
    if (p == 2) {
        int roots = 0;
        for (u32 r = 0; r < 2; ++r)
            if ((r * r + 2 * q - (s.phi % 2) * r - s.delta % 2) % 2 == 0) ++roots;
        return roots == 2 ? ConjClass::split : roots == 0 ? ConjClass::nonsplit
                                                          : ConjClass::ramified_or_singular;
    }
    const u64 phi = s.phi % q;
    const u32 d = u32((s.delta % q + phi * phi % q * inv_mod(4, q)) % q);
    if (d == 0) return ConjClass::ramified_or_singular;
    return pow_mod(d, (p - 1) / 2, p) == 1 ? ConjClass::split : ConjClass::nonsplit;
}

Automorphism cc_automorphism(const CartanShape& s) {
    return Automorphism{[s](const Mat2& m) { return cc_action(m, s); }};
}

u64 weber_quotient_order(const OrderDesc& order, u32 level) {
    validate(order);
    if (level < 2) throw InvalidOrder("level must be >= 2");
    u64 units = 1;
    for (auto [p, e] : factorize(level)) units *= cartan_order_formula(order, p, e);
    u64 w = 2;
    if (j_class(order) == JClass::j_zero) w = 6;
    if (j_class(order) == JClass::j_1728) w = 4;
    if (level == 2) w /= 2;
    return units / w;
}

std::optional<u32> sqrt_mod_prime_power(i64 a, u64 p, int n) {
    const u64 m = ipow(p, n);
    if (p == 2) {
        if (rmod(a, 8) != 1) return std::nullopt;
        const int top = std::max(n + 1, 3);
        const u64 big = ipow(2, top);
        u64 r = 1;
        const u64 target = rmod(a, u32(big));
        for (int k = 3; k < top; ++k) {
            const u64 mk1 = ipow(2, k + 1);
            if ((r * r) % mk1 != target % mk1) r += ipow(2, k - 1);
        }
        r %= m;
        if (r % 4 == 3) r = (m - r) % m;
        return u32(r);
    }
    const u32 a0 = rmod(a, u32(p));
    if (a0 == 0) return std::nullopt;
    u64 r = 0;
    for (u64 x = 1; x < p; ++x)
        if (x * x % p == a0) {
            r = x;
            break;
        }
    if (r == 0) return std::nullopt;
    u64 pk = p;
    for (int k = 1; k < n; ++k) {
        pk *= p;
        const i64 fr = i64((r * r) % pk) - i64(rmod(a, u32(pk)));
        const u64 inv2r = inv_mod(i64(2 * r), u32(pk));
        r = rmod(i64(r) - i64(u64(rmod(fr, u32(pk))) * inv2r % pk), u32(pk));
    }
    return u32(r % m);
}

}  // namespace cmlab
