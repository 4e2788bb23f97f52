#include "cmlab/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "oracle_util.hpp"

namespace cmlab {

std::string witness_text(const Mat2& m) { return "level " + std::to_string(m.n) + ": " + to_text(m); }

std::string witness_text(const Subgroup& g) {
    std::string s = "subgroup level " + std::to_string(g.level()) + " order " + std::to_string(g.order()) + " gens";
    for (const auto& m : g.generators()) s += " " + to_text(m);
    return s;
}

Subgroup brute_normalizer(const Subgroup& sub) {
    const u32 N = sub.level();
    check_cap(gl2_order(N), "brute_normalizer");
    const auto& gens = sub.generators();
    std::vector<u64> keys;
    for_each_gl2(N, [&](const Mat2& g) {
        const Mat2 gi = mat_inv(g);
        for (const auto& h : gens)
            if (!sub.contains(g * h * gi)) return true;
        keys.push_back(g.key());
        return true;
    });
    std::sort(keys.begin(), keys.end());
    return Subgroup::from_keys(N, std::move(keys));
}

namespace oracle_detail {

u64 raw_cartan_count(const CartanShape& s) {
    const u64 N = s.level;
    u64 count = 0;
    for (u64 a = 0; a < N; ++a)
        for (u64 b = 0; b < N; ++b) {
            const u64 norm = ((a + b * s.phi) % N * a % N + N * N - (s.delta * b % N) * b % N) % N;
            if (gcd_u64(norm, N) == 1) ++count;
        }
    return count;
}

bool raw_cartan_pattern(const Mat2& m, const CartanShape& s) {
    const u64 N = s.level;
    return m.a21 == (u64(s.delta) * m.a12) % N && m.a11 == (m.a22 + u64(s.phi) * m.a12) % N && m.invertible();
}

Subgroup closure_of_set(std::vector<Mat2> gens, const std::vector<Mat2>& extra, u32 level) {
    Subgroup cur = Subgroup::closure(gens, level);
    for (const auto& x : extra)
        if (!cur.contains(x)) {
            gens.push_back(x);
            cur = Subgroup::closure(gens, level);
        }
    return cur;
}

Subgroup project(const Subgroup& g, u32 m) {
    std::vector<u64> keys;
    keys.reserve(g.order());
    for (u64 k : g.keys()) keys.push_back(mat_reduce(Mat2::from_key(k, g.level()), m).key());
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return Subgroup::from_keys(m, std::move(keys));
}

bool cc_stable(const Subgroup& h, const CartanShape& s) {
    const Mat2 c = Mat2(-1, 0, s.phi, 1, h.level());
    for (const auto& g : h.generators())
        if (!h.contains(c * g * c)) return false;
    return true;
}

Timer::Timer(LemmaReport& r) : r_(r), t0_(std::chrono::steady_clock::now()) {}
Timer::~Timer() {
    r_.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
}

LemmaReport make_report(const std::string& id, std::vector<std::pair<std::string, i64>> params) {
    LemmaReport r;
    r.lemma_id = id;
    r.params = std::move(params);
    return r;
}

std::vector<std::pair<std::string, i64>> order_params(const OrderDesc& o, u64 p, int n) {
    return {{"disc", o.disc_K}, {"f", o.conductor}, {"p", i64(p)}, {"n", n}};
}

}  // namespace oracle_detail

using namespace oracle_detail;

std::vector<LemmaReport> verify_order_formula(const OrderDesc& order, u64 p, u32 max_level) {
    auto r = make_report("order-formula", {{"disc", order.disc_K}, {"f", order.conductor}, {"p", i64(p)}});
    {
        Timer t(r);
        u64 prev = 0;
        int n = 1;
        for (u64 q = p; q <= max_level; q *= p, ++n) {
            const u64 count = raw_cartan_count(cartan_params(order, u32(q)));
            const u64 formula = cartan_order_formula(order, p, n);
            r.expect(count == formula, "n=" + std::to_string(n) + ": enumerated " + std::to_string(count) +
                                           ", formula " + std::to_string(formula));
            if (prev)
                r.expect(count == prev * p * p, "n=" + std::to_string(n) + ": ratio " + std::to_string(count) + "/" +
                                                    std::to_string(prev) + " is not p^2");
            prev = count;
        }
        r.params.push_back({"max_level", max_level});
    }
    return {r};
}

LemmaReport verify_crt(const OrderDesc& order, u32 m1, u32 m2) {
    auto r = make_report("crt", {{"disc", order.disc_K}, {"f", order.conductor}, {"m1", m1}, {"m2", m2}});
    Timer t(r);
    const auto c1 = cartan_group(cartan_params(order, m1));
    const auto c2 = cartan_group(cartan_params(order, m2));
    const auto c12 = cartan_group(cartan_params(order, m1 * m2));
    const u64 raw = raw_cartan_count(cartan_params(order, m1 * m2));
    r.expect(raw == c12.order(), "cartan_group order " + std::to_string(c12.order()) + " vs enumerated " +
                                     std::to_string(raw));
    r.expect(raw == c1.order() * c2.order(), "order not multiplicative: " + std::to_string(raw));
    std::vector<u64> parts;
    for (auto x : abelian_invariants_by_order_stats(c1)) parts.push_back(x);
    for (auto x : abelian_invariants_by_order_stats(c2)) parts.push_back(x);
    r.expect(abelian_invariants(c12) == invariants_of_product(parts), witness_text(c12));
    return r;
}

LemmaReport verify_weber(const OrderDesc& order, u32 level) {
    auto r = make_report("weber", {{"disc", order.disc_K}, {"f", order.conductor}, {"level", level}});
    Timer t(r);
    const auto s = cartan_params(order, level);
    // a generator of the roots of unity of the order, in the (delta, phi) model
    Mat2 zeta = Mat2::scalar(-1, level);
    const JClass j = j_class(order);
    if (j == JClass::j_1728) zeta = Mat2(0, 1, s.delta, 0, level);  // tau = i
    if (j == JClass::j_zero) {
        if (level % 2 == 0)
            zeta = Mat2(s.phi, 1, s.delta, 0, level);  // tau = (1 + sqrt(-3))/2
        else
            zeta = Mat2(inv_mod(2, level), 1, s.delta, inv_mod(2, level), level);  // 1/2 + sqrt(-3)/2
    }
    const u64 w = (j == JClass::j_zero) ? 6 : (j == JClass::j_1728) ? 4 : 2;
    r.expect(raw_cartan_pattern(zeta, s), "root of unity outside the Cartan: " + witness_text(zeta));
    r.expect(mat_pow(zeta, w).is_identity(), "root of unity has wrong order: " + witness_text(zeta));
    const u64 units = raw_cartan_count(s);
    const u64 expected = units / mat_order(zeta);
    const u64 got = weber_quotient_order(order, level);
    r.expect(got == expected, "weber quotient " + std::to_string(got) + " vs " + std::to_string(expected));
    return r;
}

LemmaReport verify_cartan_model(const OrderDesc& order, u32 level) {
    auto r = make_report("cartan-model", {{"disc", order.disc_K}, {"f", order.conductor}, {"level", level}});
    Timer t(r);
    const u64 N = level;
    const auto s = cartan_params(order, level);
    r.params.push_back({"delta", s.delta});
    r.params.push_back({"phi", s.phi});
    const i64 D = order.disc();
    r.expect(rmod(i64(s.phi) * s.phi + 4 * i64(s.delta) - D, level) == 0, "phi^2 + 4 delta differs from the discriminant");
    const Subgroup C = cartan_group(s);
    r.expect(C.order() == raw_cartan_count(s), witness_text(C));
    r.expect(C.is_abelian(), "Cartan not abelian: " + witness_text(C));
    for (const auto& m : C.elements()) {
        if (!raw_cartan_pattern(m, s)) r.fail("element outside the pattern: " + witness_text(m));
        const auto [a, b] = matrix_to_unit(m, s);
        if (cc_action(m, s) != unit_to_matrix(i64(a) + i64(b) * s.phi, -i64(b), s))
            r.fail("cc_action is not conjugation of units at " + witness_text(m));
        if (cc_action(cc_action(m, s), s) != m) r.fail("cc_action not an involution at " + witness_text(m));
    }
    // unit multiplication law (a + b w)(c + d w), w^2 = phi w + delta
    if (N <= 16)
        for (u64 a = 0; a < N; ++a)
            for (u64 b = 0; b < N; ++b)
                for (u64 c = 0; c < N; ++c)
                    for (u64 d = 0; d < N; ++d) {
                        auto raw = [&](u64 x, u64 y) { return Mat2(i64(x + y * s.phi), i64(y), i64(s.delta * y), i64(x), level); };
                        const Mat2 lhs = raw(a, b) * raw(c, d);
                        const Mat2 rhs = raw((a * c + s.delta * b % N * d) % N, (a * d + b * c + s.phi * b % N * d) % N);
                        if (lhs != rhs) r.fail("multiplication law fails at " + witness_text(lhs));
                    }
    const Mat2 cphi = cc_phi(s);
    r.expect(cphi.trace() == 0 && cphi.det() == N - 1 && (cphi * cphi).is_identity(), "c_phi: " + witness_text(cphi));
    const Subgroup Nz = normalizer_group(s);
    const bool cphi_in_C = C.contains(cphi);
    r.expect(Nz.order() == (cphi_in_C ? 1 : 2) * C.order(), witness_text(Nz));
    if (cphi_in_C) r.notes.push_back("c_phi lies in the Cartan at this level; normalizer index 1");
    std::set<u64> coset;
    for (const auto& m : C.elements()) coset.insert((cphi * m).key());
    for (const auto& g : Nz.elements()) {
        if (!C.contains(g) && !coset.count(g.key())) r.fail("normalizer element outside C and c_phi C: " + witness_text(g));
    }
    const bool all_pairs = Nz.order() * C.order() <= (u64(1) << 20);
    const auto cel = all_pairs ? C.elements() : C.generators();
    for (const auto& g : Nz.elements()) {
        if (C.contains(g)) continue;
        const Mat2 gi = mat_inv(g);
        for (const auto& m : cel)
            if (g * m * gi != cc_action(m, s)) {
                r.fail("non-Cartan element does not act as conjugation: " + witness_text(g));
                break;
            }
    }
    if (gl2_order(level) <= (u64(1) << 18)) {
        const Subgroup br = brute_normalizer(C);
        r.expect(Nz.is_subgroup_of(br), "normalizer_group not inside the brute normalizer");
        r.notes.push_back("brute normalizer index over N: " + std::to_string(br.order() / Nz.order()));
    }
    return r;
}

// ---------------------------------------------------------------- normalizers

namespace {

LemmaReport normalizer_report(u64 p, int n, u32 delta, u32 phi) {
    return make_report("normalizer-" + std::string(n == 1 ? "modp" : "modpn"),
                       {{"p", i64(p)}, {"n", n}, {"delta", delta}, {"phi", phi}});
}

bool is_square_mod(u64 x, u64 p) {
    for (u64 y = 1; y < p; ++y)
        if (y * y % p == x % p) return true;
    return false;
}

u32 primitive_root(u64 p) {
    const auto fac = factorize(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [q, e] : fac)
            if (pow_mod(g, (p - 1) / q, p) == 1) ok = false;
        if (ok) return u32(g);
    }
    return 1;
}

void compare(LemmaReport& r, const Subgroup& brute, const Subgroup& described, const Subgroup& C) {
    if (brute == described) return;
    for (const auto& g : brute.elements())
        if (!described.contains(g)) return r.fail("in the brute normalizer only: " + witness_text(g));
    for (const auto& g : described.elements())
        if (!brute.contains(g)) return r.fail("in the description only: " + witness_text(g));
    (void)C;
}

std::vector<LemmaReport> modp(u64 p) {
    std::vector<LemmaReport> out;
    const u32 q = u32(p);
    if (p == 2) {
        const Subgroup GL = gl2_group(2);
        for (u32 delta : {1u, 0u})
            for (u32 phi : {1u, 0u}) {
                auto& r = out.emplace_back(normalizer_report(2, 1, delta, phi));
                Timer t(r);
                const auto s = shape_from_params(delta, phi, 2);
                const Subgroup C = cartan_group(s), br = brute_normalizer(C);
                if (delta == 1 && phi == 1) {
                    r.expect(C.order() == 3 && abelian_invariants_by_order_stats(C) == std::vector<u64>{3}, witness_text(C));
                    r.expect(br == GL && br.order() == 6, witness_text(br));
                    compare(r, br, Subgroup::closure({C.generators()[0], cc_phi(s)}, 2), C);
                } else if (delta == 0 && phi == 1) {
                    r.expect(C.order() == 1, witness_text(C));
                    r.expect(br == GL, witness_text(br));
                } else if (delta == 1) {
                    r.expect(C == Subgroup::closure({Mat2(0, 1, 1, 0, 2)}, 2), witness_text(C));
                    r.expect(br == C, witness_text(br));
                } else {
                    r.expect(C == Subgroup::closure({Mat2(1, 1, 0, 1, 2)}, 2), witness_text(C));
                    r.expect(br == C, witness_text(br));
                }
            }
        return out;
    }
    const Mat2 c(-1, 0, 0, 1, q);
    for (u32 delta = 0; delta < q; ++delta) {
        auto& r = out.emplace_back(normalizer_report(p, 1, delta, 0));
        Timer t(r);
        const auto s = shape_from_params(delta, 0, q);
        const Subgroup C = cartan_group(s), br = brute_normalizer(C);
        const auto inv = abelian_invariants_by_order_stats(C);
        std::vector<Mat2> gens = C.generators();
        if (delta != 0) {
            const bool sq = is_square_mod(delta, p);
            const std::vector<u64> want = sq ? std::vector<u64>{p - 1, p - 1} : std::vector<u64>{p * p - 1};
            r.expect(inv == want, witness_text(C));
            gens.push_back(c);
            compare(r, br, Subgroup::closure(gens, q), C);
            r.expect(br.order() == 2 * C.order(), witness_text(br));
        } else {
            r.expect(inv == std::vector<u64>{p * (p - 1)}, witness_text(C));
            gens.push_back(Mat2(primitive_root(p), 0, 0, 1, q));
            compare(r, br, Subgroup::closure(gens, q), C);
            r.expect(br.order() == (p - 1) * C.order(), witness_text(br));
            // N/C is cyclic, so its subgroups are generated by single cosets diag(t, 1) C
            std::vector<u64> pm;
            for (u32 a = 1; a < q; ++a)
                for (u32 b = 0; b < q; ++b)
                    for (int sg : {1, -1}) pm.push_back(Mat2(sg * i64(a), b, 0, a, q).key());
            std::sort(pm.begin(), pm.end());
            pm.erase(std::unique(pm.begin(), pm.end()), pm.end());
            const Subgroup want = Subgroup::from_keys(q, pm, {}, true);
            int found = 0;
            for (u32 tt = 1; tt < q; ++tt) {
                auto g2 = C.generators();
                g2.push_back(Mat2(tt, 0, 0, 1, q));
                const Subgroup H = Subgroup::closure(g2, q);
                if (H.order() != 2 * C.order()) continue;
                ++found;
                r.expect(H == want, "index-2 overgroup differs from {(+-a b; 0 a)}: " + witness_text(H));
            }
            r.expect(found >= 1, "no overgroup with quotient of order 2");
        }
    }
    return out;
}

// Generators of C, plus c0 (or c_phi), plus the congruence-described set S.
std::vector<LemmaReport> modpn(u64 p, int n) {
    std::vector<LemmaReport> out;
    const u32 q = u32(ipow(p, n));
    std::vector<std::pair<u32, u32>> shapes;
    for (u32 d = 0; d < q; ++d) shapes.push_back({d, 0});
    if (p == 2)
        for (u32 phi = 1; phi < q; phi += 2)
            for (u32 d = 0; d < q; ++d) shapes.push_back({d, phi});
    for (auto [delta, phi] : shapes) {
        auto& r = out.emplace_back(normalizer_report(p, n, delta, phi));
        Timer t(r);
        const auto s = shape_from_params(delta, phi, q);
        const Subgroup C = cartan_group(s);
        const int j = delta == 0 ? n : valuation(delta, p, n);
        if (phi == 0) r.params.push_back({"j", j});
        std::vector<Mat2> S;
        std::vector<u64> brute_keys;
        const auto& cg = C.generators();
        const u64 m1 = ipow(p, std::max(n - j - (p == 2 ? 1 : 0), 0));  // modulus for the diagonal condition
        const u64 m2 = p == 2 ? ipow(2, n - 1) : q;                       // modulus for the g condition
        for_each_gl2(q, [&](const Mat2& g) {
            const Mat2 gi = mat_inv(g);
            bool norm = true;
            for (const auto& h : cg)
                if (!C.contains(g * h * gi)) {
                    norm = false;
                    break;
                }
            if (norm) brute_keys.push_back(g.key());
            if (phi != 0) return true;
            for (int eps : {1, -1}) {
                const i64 e = eps;
                bool in;
                if (p == 2) {
                    // (1+e k; g 1+h) with e, k, g, h even
                    in = g.a11 % 2 == 1 && g.a22 % 2 == 1 && g.a12 % 2 == 0 && g.a21 % 2 == 0;
                    in = in && (j >= n || rmod(i64(g.a22) - e * i64(g.a11), u32(m1)) == 0);
                    in = in && rmod(i64(g.a21) - e * i64(delta) * g.a12, u32(m2)) == 0;
                } else {
                    in = g.a11 % p != 0 && g.a22 % p != 0;
                    in = in && rmod(i64(g.a11) - e * i64(g.a22), u32(m1)) == 0;
                    in = in && rmod(i64(g.a21) - e * i64(delta) * g.a12, u32(m2)) == 0;
                }
                if (in) {
                    S.push_back(g);
                    break;
                }
            }
            return true;
        });
        std::sort(brute_keys.begin(), brute_keys.end());
        const Subgroup br = Subgroup::from_keys(q, std::move(brute_keys));
        r.expect(normalizer_group(s).is_subgroup_of(br), "normalizer_group not inside the brute normalizer");
        std::vector<Mat2> base = cg;
        if (phi == 0) {
            base.push_back(c_eps(-1, q));  // c_0 = (-1 0; 0 1)
            const Subgroup desc = closure_of_set(base, S, q);
            compare(r, br, desc, C);
        } else if (delta % 2 == 1) {
            base.push_back(cc_phi(s));
            compare(r, br, Subgroup::closure(base, q), C);
            r.expect(br.order() == 2 * C.order(), witness_text(br));
        } else {
            base.push_back(cc_phi(s));
            base.push_back(Mat2(1, 0, ipow(2, n - 1), 1, q));
            base.push_back(Mat2(1 + ipow(2, n - 1), 0, 0, 1, q));
            compare(r, br, Subgroup::closure(base, q), C);
            r.expect(br.order() == 8 * C.order(), "index " + std::to_string(br.order() / C.order()));
        }
        r.notes.push_back("index over the Cartan: " + std::to_string(br.order() / C.order()));
    }
    return out;
}

}  // namespace

std::vector<LemmaReport> verify_normalizer_props(u64 p, int n) {
    if (!is_prime(p) || n < 1) throw UsageError("normalizer check needs a prime and n >= 1");
    return n == 1 ? modp(p) : modpn(p, n);
}

// ---------------------------------------------------------------- kernel

LemmaReport verify_kernel_lemma(u64 p, int n, const CartanShape& shape) {
    const u32 q = u32(ipow(p, n)), Q = u32(ipow(p, n + 1));
    auto r = make_report("kernel", {{"p", i64(p)}, {"n", n}, {"delta", shape.delta}, {"phi", shape.phi}});
    Timer t(r);
    if (shape.level != Q) throw UsageError("kernel check: shape must live at level p^(n+1)");
    std::vector<u64> keys;
    for (u64 x = 0; x < p; ++x)
        for (u64 y = 0; y < p; ++y)
            for (u64 z = 0; z < p; ++z)
                for (u64 w = 0; w < p; ++w) keys.push_back(Mat2(1 + q * x, q * y, q * z, 1 + q * w, Q).key());
    std::sort(keys.begin(), keys.end());
    const Subgroup K = Subgroup::from_keys(Q, keys, {}, true);
    r.expect(K.order() == p * p * p * p, witness_text(K));
    r.expect(K.is_abelian() && abelian_invariants_by_order_stats(K) == std::vector<u64>(4, p), witness_text(K));
    const Subgroup Kg = Subgroup::closure({Mat2(1, q, 0, 1, Q), Mat2(1, 0, q, 1, Q), Mat2(1 + q, 0, 0, 1, Q),
                                           Mat2(1, 0, 0, 1 + q, Q)},
                                          Q);
    r.expect(Kg == K, "stated kernel generators: " + witness_text(Kg));
    const Subgroup C = cartan_group(shape);
    std::vector<u64> ik;
    for (u64 k : K.keys())
        if (C.contains_key(k)) ik.push_back(k);
    const Subgroup I = Subgroup::from_keys(Q, ik, {}, true);
    r.expect(abelian_invariants_by_order_stats(I) == std::vector<u64>(2, p), witness_text(I));
    Subgroup Ig;
    if (p == 2)
        Ig = Subgroup::closure({Mat2(1 + u64(shape.phi) * q, q, u64(shape.delta) * q, 1, Q), Mat2::scalar(1 + q, Q)}, Q);
    else
        Ig = Subgroup::closure({Mat2(1, q, u64(shape.delta) * q, 1, Q), Mat2::scalar(1 + q, Q)}, Q);
    r.expect(Ig == I, "stated intersection generators: " + witness_text(Ig));
    r.expect(intersect(K, C) == I, "intersect() disagrees with the scan");
    r.notes.push_back("kernel order " + std::to_string(K.order()) + ", intersection order " + std::to_string(I.order()));
    return r;
}

// ---------------------------------------------------------------- complex conjugation

LemmaReport verify_cc_identities(u64 p, int n, u32 delta) {
    const u32 q = u32(ipow(p, n));
    auto r = make_report("cc-identities", {{"p", i64(p)}, {"n", n}, {"delta", delta}});
    Timer t(r);
    if (p == 2) throw UsageError("cc identities need an odd prime");
    const Mat2 c1 = c_eps(1, q), cm1 = c_eps(-1, q);
    u64 admissible = 0, applied[3] = {0, 0, 0}, uncovered = 0;
    const i64 d = delta;
    for (i64 a = 0; a < q; ++a)
        for (i64 b = 0; b < q; ++b) {
            if (rmod(a * a - d * b * b, q) != 1) continue;
            ++admissible;
            const Mat2 g(-a, b, -d * b, a, q);
            if (g.trace() != 0 || g.det() != q - 1) r.fail("gamma not trace 0 / det -1: " + witness_text(g));
            const Mat2 X[3] = {Mat2(a - 1, -b, -d * b, a - 1, q), Mat2(a + 1, -b, -d * b, a + 1, q),
                               Mat2(-d * b, a + 1, d * (a + 1), -d * b, q)};
            const u32 dets[3] = {rmod(2 * (1 - a), q), rmod(2 * (1 + a), q), rmod(-2 * d * (1 + a), q)};
            const Mat2 target[3] = {c1, cm1, c1};
            bool any = false;
            for (int k = 0; k < 3; ++k) {
                if (X[k].det() != dets[k]) r.fail("determinant side condition " + std::to_string(k + 1) + ": " + witness_text(X[k]));
                if (!X[k].invertible()) continue;
                any = true;
                ++applied[k];
                if (X[k] * g * mat_inv(X[k]) != target[k])
                    r.fail("identity " + std::to_string(k + 1) + " fails for gamma " + witness_text(g));
            }
            if (!any) ++uncovered;
        }
    r.notes.push_back("admissible pairs " + std::to_string(admissible) + "; identity uses " + std::to_string(applied[0]) +
                      "/" + std::to_string(applied[1]) + "/" + std::to_string(applied[2]) + "; no invertible conjugator " +
                      std::to_string(uncovered));
    return r;
}

LemmaReport verify_cc_conjugators(u64 p, int n) {
    const u32 q = u32(ipow(p, n));
    auto r = make_report("cc-conjugators", {{"p", i64(p)}, {"n", n}});
    Timer t(r);
    const Mat2 A = c_eps(-1, q), B = c_eps(1, q);
    std::vector<u64> scan;
    for_each_gl2(q, [&](const Mat2& X) {
        if (X * A == B * X) scan.push_back(X.key());
        return true;
    });
    std::sort(scan.begin(), scan.end());
    std::vector<u64> anti;
    for (u32 b = 0; b < q; ++b)
        for (u32 c = 0; c < q; ++c)
            if (b % p && c % p) anti.push_back(Mat2(0, b, c, 0, q).key());
    std::sort(anti.begin(), anti.end());
    auto lib = conjugators_in_gl(A, B);
    std::vector<u64> libk;
    for (const auto& m : lib) libk.push_back(m.key());
    std::sort(libk.begin(), libk.end());
    r.expect(libk == scan, "conjugators_in_gl disagrees with the scan");
    if (p == 2) {
        r.notes.push_back("2-adic level " + std::to_string(q) + ": " + std::to_string(scan.size()) +
                          " conjugators vs " + std::to_string(anti.size()) + " antidiagonal units (logged only)");
    } else if (scan != anti) {
        for (u64 k : scan)
            if (!std::binary_search(anti.begin(), anti.end(), k))
                r.fail("non-antidiagonal conjugator " + witness_text(Mat2::from_key(k, q)));
        r.fail("antidiagonal unit that does not conjugate");
    }
    return r;
}

LemmaReport verify_cc_conjugators_ramified(const OrderDesc& order, u64 p, int n) {
    const u32 q = u32(ipow(p, n));
    auto r = make_report("cc-conjugators", order_params(order, p, n));
    Timer t(r);
    const auto s = cartan_params(order, q);
    r.params.push_back({"delta", s.delta});
    if (s.delta % p != 0 || s.phi != 0) throw UsageError("ramified conjugator check needs p | delta");
    const Mat2 A = c_eps(1, q), B = c_eps(-1, q);
    const Subgroup Nz = normalizer_group(s);
    for (const auto& X : Nz.elements())
        if (X * A == B * X) r.fail("conjugator inside the normalizer: " + witness_text(X));
    r.expect(conjugators(A, B, Nz).empty(), "conjugators() reports a solution");
    return r;
}

LemmaReport verify_insidecartan_constraint(const CartanShape& s, u64 p) {
    const u32 L = s.level;
    auto r = make_report("insidecartan", {{"p", i64(p)}, {"level", L}, {"delta", s.delta}, {"phi", s.phi}});
    Timer t(r);
    if (L != (p == 2 ? 4u : u32(p))) throw UsageError("insidecartan: level must be p, or 4 for p = 2");
    const Subgroup C = cartan_group(s);
    u64 checked = 0;
    for (i64 e = 0; e < L; ++e)
        for (i64 g = 0; g < L; ++g) {
            // every element of c_phi C: (-e g; phi e - delta g  e)
            const Mat2 gam(-e, g, i64(s.phi) * e - i64(s.delta) * g, e, L);
            if (gam.det() != L - 1) continue;
            ++checked;
            if (gam.trace() != 0) r.fail("trace not 0: " + witness_text(gam));
            if (raw_cartan_pattern(gam, s) || C.contains(gam)) r.fail("trace-0 det -1 element inside the Cartan: " + witness_text(gam));
        }
    // the congruences forcing membership make the determinant a non-unit
    for (i64 e = 0; e < L; ++e)
        for (i64 g = 0; g < L; ++g) {
            const Mat2 gam(-e, g, i64(s.phi) * e - i64(s.delta) * g, e, L);
            const bool pattern = rmod(-2 * e - i64(s.phi) * g, L) == 0 && rmod(i64(s.phi) * e - 2 * i64(s.delta) * g, L) == 0;
            if (pattern && is_unit(i64(gam.det()), L)) r.fail("pattern with unit determinant: " + witness_text(gam));
        }
    r.notes.push_back("trace-0 det -1 elements checked: " + std::to_string(checked));
    return r;
}

}  // namespace cmlab
