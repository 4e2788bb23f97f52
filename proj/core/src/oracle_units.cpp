// Unit-group structure of 2-adic and 3-adic Cartans, and their distinguished subgroups.

#include <algorithm>
#include <optional>

#include "cmlab/oracle.hpp"
#include "oracle_util.hpp"

namespace cmlab {
using namespace oracle_detail;

namespace {

std::string ints(const std::vector<u64>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

// 2-adic root of x, reduced mod 2^n, via a root mod 2^(n+1) (spurious roots mod 2^n are avoided).
std::optional<u32> two_adic_root(i64 x, int n) {
    const u32 big = u32(ipow(2, n + 1)), q = u32(ipow(2, n));
    for (u32 r = 1; r < big; r += 2)
        if (rmod(i64(r) * r - x, big) == 0) return r % q;
    return std::nullopt;
}

struct Shape2 {
    std::string branch;
    std::vector<Mat2> gens;
    std::vector<u64> cyclic;
};

std::vector<u64> pw2(int e) { return {e <= 0 ? 1 : ipow(2, e)}; }

std::vector<u64> cat(std::initializer_list<std::vector<u64>> parts) {
    std::vector<u64> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

Shape2 two_adic_shape(const OrderDesc& o, int n, const CartanShape& s, LemmaReport& r) {
    const i64 d = o.disc_K, f = o.conductor;
    const u32 q = s.level;
    auto U = [&](i64 a, i64 b) { return unit_to_matrix(a, b, s); };
    auto root = [&](i64 x) {
        auto R = two_adic_root(x, n);
        if (!R) {
            r.fail("no 2-adic square root of " + std::to_string(x));
            return u32(1);
        }
        const auto lib = sqrt_mod_prime_power(x, 2, n);
        r.expect(lib && (*lib == *R || (*lib + *R) % q == 0), "sqrt_mod_prime_power disagrees for " + std::to_string(x));
        return *R;
    };
    const u32 d8 = rmod(d, 8);
    Shape2 sh;
    if (d8 % 4 == 1) {
        if (f % 4 == 0) {
            sh = {"1a", {U(-1, 0), U(3, 0), U(1, 1)}, n == 1 ? pw2(1) : cat({pw2(1), pw2(n - 2), pw2(n)})};
        } else if (f % 4 == 2) {
            if (d8 == 1) {
                const u32 R = root(d * f * f / 4);
                sh = {"1b", {U(-1, 0), U(3, 0), U(0, inv_mod(R, q)), U(1, 2)},
                      n == 1 ? pw2(1) : cat({pw2(1), pw2(n - 2), pw2(1), pw2(n - 1)})};
            } else {
                sh = {"1c", {U(-1, 0), U(0, 1), U(1, 2)}, cat({pw2(1), pw2(n - 1), pw2(n - 1)})};
            }
        } else if (d8 == 1) {
            const u32 R = root(d), Ri = inv_mod(R, q), fi = inv_mod(f, q);
            sh = {"4a", {U(-1, 0), U(3, 0), U(-i64(Ri), -2 * i64(fi) * fi % q * Ri), U(1, 4)},
                  n == 1 ? pw2(0) : cat({pw2(1), pw2(n - 2), pw2(1), pw2(n - 2)})};
        } else {
            sh = {"4b", {U(-1, 0), U(3, 4), U(f, -((d - 1) / 4))},
                  n == 1 ? std::vector<u64>{3} : cat({pw2(1), pw2(n - 2), {3 * ipow(2, n - 1)}})};
        }
    } else if (d8 == 0 || f % 2 == 0) {
        sh = {"3", {U(-1, 0), U(3, 0), U(1, 1)}, n == 1 ? pw2(1) : cat({pw2(1), pw2(n - 2), pw2(n)})};
    } else if (rmod(-d / 4, 8) == 1) {
        const u32 R = root(-(d * f * f / 4));
        sh = {"2a", {U(0, inv_mod(R, q)), U(3, 0), U(1, 2)}, n == 1 ? pw2(1) : cat({{4}, pw2(n - 2), pw2(n - 1)})};
    } else {
        sh = {"2b", {U(-1, 0), U(0, 1), U(1, 2)},
              n == 1 ? pw2(1) : n == 2 ? std::vector<u64>{2, 4} : cat({pw2(1), pw2(n - 1), pw2(n - 1)})};
    }
    return sh;
}

void check_structure(LemmaReport& r, const CartanShape& s, const std::vector<Mat2>& gens, const std::vector<u64>& cyclic) {
    const Subgroup C = cartan_group(s);
    r.expect(C.order() == raw_cartan_count(s), "cartan_group order " + std::to_string(C.order()));
    const Subgroup G = Subgroup::closure(gens, s.level);
    r.expect(G == C, "listed generators give " + witness_text(G));
    const auto want = invariants_of_product(cyclic);
    const auto inv = abelian_invariants(C), inv2 = abelian_invariants_by_order_stats(C);
    r.expect(inv == want && inv2 == want,
             "invariants " + ints(inv) + " / " + ints(inv2) + ", displayed " + ints(want));
    r.notes.push_back("invariants " + ints(inv));
}

}  // namespace

std::vector<LemmaReport> verify_structure_theorems(const OrderDesc& order, u64 p, int max_n, int special_max_n) {
    if (special_max_n < 0) special_max_n = max_n;
    std::vector<LemmaReport> out;
    const JClass j = j_class(order);
    if (p == 2) {
        for (int n = 1; n <= max_n; ++n) {
            auto& r = out.emplace_back(make_report("2adiccartan", order_params(order, 2, n)));
            Timer t(r);
            const auto s = cartan_params(order, u32(ipow(2, n)));
            const Shape2 sh = two_adic_shape(order, n, s, r);
            r.notes.push_back("branch " + sh.branch);
            check_structure(r, s, sh.gens, sh.cyclic);
        }
        for (int n = 1; n <= special_max_n && j != JClass::generic; ++n) {
            const u32 q = u32(ipow(2, n));
            const auto s = cartan_params(order, q);
            auto U = [&](i64 a, i64 b) { return unit_to_matrix(a, b, s); };
            if (j == JClass::j_1728) {
                auto& r = out.emplace_back(make_report("2adiccartanj1728", order_params(order, 2, n)));
                Timer t(r);
                r.expect(s.delta == q - 1 && s.phi == 0, "model is not delta = -1, phi = 0");
                check_structure(r, s, {U(0, 1), U(3, 0), U(1, 2)},
                                n == 1 ? pw2(1) : cat({{4}, pw2(n - 2), pw2(n - 1)}));
            } else {
                auto& r = out.emplace_back(make_report("2adiccartanjzero", order_params(order, 2, n)));
                Timer t(r);
                r.expect(s.delta == q - 1 && s.phi == 1, "model is not delta = -1, phi = 1");
                check_structure(r, s, {U(-1, 0), U(3, 4), U(1, 1)},
                                n == 1 ? std::vector<u64>{3} : cat({pw2(1), pw2(n - 2), {3 * ipow(2, n - 1)}}));
            }
        }
    } else if (p == 3 && j == JClass::j_zero) {
        for (int n = 1; n <= special_max_n; ++n) {
            const u32 q = u32(ipow(3, n));
            auto& r = out.emplace_back(make_report("cartan-jzero", order_params(order, 3, n)));
            Timer t(r);
            const auto s = cartan_params(order, q);
            const i64 h = inv_mod(2, q);
            const Mat2 zeta = unit_to_matrix(-h, 1, s);
            r.expect(mat_order(zeta) == 3, "zeta_3 has order " + std::to_string(mat_order(zeta)));
            const u64 t3 = ipow(3, n - 1);
            check_structure(r, s, {mat_neg(zeta), unit_to_matrix(4, 0, s), unit_to_matrix(1, 1, s)}, {6, t3, t3});
        }
    }
    return out;
}

// ---------------------------------------------------------------- subgroup lemmas

namespace {

// Statements "x in H iff x in pi(H)" over all subgroups H reduce to cyclic H = <h>.
void lift_property(LemmaReport& r, const Subgroup& C, u32 m, const Mat2& x_high, const std::string& what) {
    const Mat2 x_low = mat_reduce(x_high, m);
    const KeyArith ar(C.level());
    u64 tested = 0;
    for (u64 k : C.keys()) {
        if (mat_reduce(Mat2::from_key(k, C.level()), m) != x_low) continue;
        ++tested;
        bool hit = false;
        for (u64 y = k;; y = ar.mul(y, k)) {
            if (y == x_high.key()) hit = true;
            if (y == ar.identity()) break;
        }
        if (!hit) r.fail(what + ": <h> misses it although pi(h) matches, h = " + witness_text(Mat2::from_key(k, C.level())));
    }
    r.notes.push_back(what + ": " + std::to_string(tested) + " lifts checked");
    // cross-check on the full subgroup lattice when it is small
    if (C.order() <= 64) {
        u64 subs = 0;
        for (const auto& H : all_subgroups(C)) {
            ++subs;
            if (H.contains(x_high) != project(H, m).contains(x_low))
                r.fail(what + ": full lattice counterexample " + witness_text(H));
        }
        r.notes.push_back(what + ": " + std::to_string(subs) + " subgroups in the full lattice");
    }
}

u64 rank_at(const Subgroup& C, u64 ell) {
    u64 rk = 0;
    for (u64 d : abelian_invariants_by_order_stats(C))
        if (d % ell == 0) ++rk;
    return rk;
}

std::vector<Subgroup> index_subgroups(LemmaReport& r, const Subgroup& C, u64 k) {
    auto subs = k == 2 || k == 3 ? subgroups_of_prime_index(C, k) : subgroups_of_index(C, k);
    for (const auto& H : subs)
        if (index_in(H, C) != k) r.fail("subgroup of wrong index " + witness_text(H));
    if (k == 2 || k == 3) {
        const u64 rk = rank_at(C, k);
        const u64 want = (ipow(k, int(rk)) - 1) / (k - 1);
        r.expect(subs.size() == want, "expected " + std::to_string(want) + " subgroups of index " + std::to_string(k) +
                                          ", enumerated " + std::to_string(subs.size()));
    }
    if (C.order() <= 64) {
        u64 cnt = 0;
        for (const auto& H : all_subgroups(C))
            if (H.order() * k == C.order()) ++cnt;
        r.expect(cnt == subs.size(), "full lattice has " + std::to_string(cnt) + " subgroups of index " + std::to_string(k));
    }
    return subs;
}

bool same_set(std::vector<Subgroup> a, std::vector<Subgroup> b) {
    sort_unique(a);
    sort_unique(b);
    return a == b;
}

void lemma_index2(std::vector<LemmaReport>& out, const OrderDesc& o, int max_n) {
    const i64 dK = o.disc_K, f = o.conductor, D = o.disc();
    for (int n = 2; n <= max_n; ++n) {
        const u32 q = u32(ipow(2, n));
        auto& r = out.emplace_back(make_report("2adicindex2", order_params(o, 2, n)));
        Timer t(r);
        const auto s = cartan_params(o, q), s4 = cartan_params(o, 4);
        const Subgroup C = cartan_group(s), C4 = cartan_group(s4);
        const Mat2 m1 = Mat2::scalar(-1, q), m1_4 = Mat2::scalar(-1, 4);
        const auto subs = index_subgroups(r, C, 2);
        // (1)
        const bool dprime1 = rmod(dK, 8) == 4 && rmod(-dK / 4, 8) == 1;
        const bool cond1 = (n >= 3 && dprime1 && f % 2 == 1) || (n == 2 && rmod(dK, 8) == 4 && f % 2 == 1);
        if (cond1)
            for (const auto& H : subs) r.expect(H.contains(m1), "(1) index-2 subgroup without -1: " + witness_text(H));
        // (2)
        std::vector<Subgroup> T2;
        for (const auto& H : subs) {
            const Subgroup H2 = project(H, 4);
            if (!H2.contains(m1_4) && cc_stable(H2, s4)) T2.push_back(H);
        }
        // <k, 1+f tau> and <k, -1-f tau>; empty when 1+f tau is not a unit
        auto pair_with = [&](i64 k) {
            std::vector<Subgroup> v;
            const Mat2 g(1 + i64(s.phi), 1, s.delta, 1, q);
            if (!g.invertible()) return v;
            v.push_back(Subgroup::closure({Mat2::scalar(k, q), g}, q));
            v.push_back(Subgroup::closure({Mat2::scalar(k, q), mat_mul(m1, g)}, q));
            return v;
        };
        if (!T2.empty()) {
            r.expect(rmod(D, 16) == 0, "(2) subgroups exist although disc is not 0 mod 16: " + witness_text(T2[0]));
            r.expect(same_set(T2, pair_with(5)), "(2) the subgroups are not <5, +-(1+f tau)>: " + witness_text(T2[0]));
        } else if (rmod(D, 16) == 0) {
            r.notes.push_back("(2) disc = 0 mod 16 but no index-2 subgroup misses -1 mod 4 with cc-stable reduction");
        }
        r.notes.push_back("(2) qualifying subgroups: " + std::to_string(T2.size()));
        // (3): -1 in H_{n} iff -1 in its image at level 2^(n-1), for n - 1 >= 3
        if (n >= 4) {
            const Mat2 m1_low = Mat2::scalar(-1, q / 2);
            for (const auto& H : subs)
                r.expect(H.contains(m1) == project(H, q / 2).contains(m1_low), "(3) lifting of -1 fails: " + witness_text(H));
        }
        // (4)
        if (n >= 3) {
            std::vector<Subgroup> T4;
            for (const auto& H : subs)
                if (!H.contains(m1) && cc_stable(H, s) && project(H, 4) == C4) T4.push_back(H);
            if (!T4.empty()) {
                r.expect(rmod(dK, 8) == 0, "(4) subgroups exist although disc_K is not 0 mod 8: " + witness_text(T4[0]));
                r.expect(same_set(T4, pair_with(3)), "(4) the subgroups are not <3, +-(1+f tau)>: " + witness_text(T4[0]));
            } else if (rmod(dK, 8) == 0) {
                r.notes.push_back("(4) disc_K = 0 mod 8 but no qualifying subgroup");
            }
            r.notes.push_back("(4) qualifying subgroups: " + std::to_string(T4.size()));
        }
    }
}

void lemma_jzero_3adic(std::vector<LemmaReport>& out, const OrderDesc& o, int max_n) {
    for (int n = 2; n <= max_n; ++n) {
        const u32 q = u32(ipow(3, n));
        auto& r = out.emplace_back(make_report("subgroups-jzero-3adic", order_params(o, 3, n)));
        Timer t(r);
        const auto s = cartan_params(o, q), s3 = cartan_params(o, 3);
        const Subgroup C = cartan_group(s), C1 = cartan_group(s3);
        const i64 h = inv_mod(2, q);
        const Mat2 zeta = unit_to_matrix(-h, 1, s), m1 = Mat2::scalar(-1, q), four = Mat2::scalar(4, q);
        const Mat2 tau1 = unit_to_matrix(1, 1, s);
        // (2)
        lift_property(r, C, q / 3, m1, "(2) -1");
        std::vector<Subgroup> miss;
        for (const auto& H : index_subgroups(r, C, 2))
            if (!H.contains(m1)) miss.push_back(H);
        r.expect(miss.size() == 1 && miss[0] == Subgroup::closure({zeta, four, tau1}, q),
                 "(2) index-2 subgroups missing -1: " + std::to_string(miss.size()));
        // (3)
        if (n >= 3) lift_property(r, C, q / 3, zeta, "(3) zeta_3");
        // (4)
        for (int a = 0; a <= 1; ++a) {
            const u64 k = a ? 6 : 3;
            std::vector<Subgroup> T;
            for (const auto& H : index_subgroups(r, C, k)) {
                const Subgroup H1 = project(H, 3);
                if (!H.contains(zeta) && cc_stable(H, s) && index_in(H1, C1) == (a ? 2u : 1u)) T.push_back(H);
            }
            std::vector<Subgroup> want;
            for (int i = 0; i <= 1; ++i)
                want.push_back(Subgroup::closure({a ? Mat2::identity(q) : m1, four, mat_pow(zeta, i) * tau1}, q));
            r.expect(same_set(T, want), "(4) a=" + std::to_string(a) + ": " + std::to_string(T.size()) +
                                            " qualifying subgroups, not the two listed");
        }
    }
}

void lemma_j1728(std::vector<LemmaReport>& out, const OrderDesc& o, int max_n) {
    for (int n = 2; n <= max_n; ++n) {
        const u32 q = u32(ipow(2, n));
        auto& r = out.emplace_back(make_report("subgroups-j1728", order_params(o, 2, n)));
        Timer t(r);
        const auto s = cartan_params(o, q);
        const Subgroup C = cartan_group(s), C2 = cartan_group(cartan_params(o, 4));
        auto U = [&](i64 a, i64 b) { return unit_to_matrix(a, b, s); };
        auto sc = [&](i64 x) { return Mat2::scalar(x, q); };
        const Mat2 tau = U(0, 1), m1 = sc(-1);
        const auto idx2 = index_subgroups(r, C, 2);
        const auto idx4 = index_subgroups(r, C, 4);
        // (2)
        for (const auto& H : idx2) r.expect(H.contains(m1), "(2) index-2 subgroup without -1: " + witness_text(H));
        // (3)
        if (n >= 4) lift_property(r, C, q / 2, tau, "(3) tau");
        // (4)
        if (n >= 3) {
            std::vector<Subgroup> T;
            for (const auto& H : idx4)
                if (!H.contains(tau) && !H.contains(m1) && index_in(project(H, 4), C2) < 4 && cc_stable(H, s)) T.push_back(H);
            const std::vector<Subgroup> want = {Subgroup::closure({sc(-3), U(2, -1)}, q),
                                                Subgroup::closure({sc(-3), U(-2, 1)}, q)};
            for (const auto& H : T) {
                r.expect(index_in(project(H, 4), C2) == 2, "(4) reduction index is not 2: " + witness_text(H));
                r.expect(std::find(want.begin(), want.end(), H) != want.end(), "(4) unlisted subgroup " + witness_text(H));
            }
            r.notes.push_back("(4) qualifying subgroups: " + std::to_string(T.size()));
        }
        // (5)
        if (n == 3)
            for (const auto& H : idx2)
                if (H.contains(m1) && !H.contains(tau) && cc_stable(H, s))
                    r.expect(index_in(project(H, 4), C2) == 2, "(5) reduction mod 4 not of index 2: " + witness_text(H));
        // (6)
        for (u64 k : {2u, 4u}) {
            std::vector<Subgroup> T;
            for (const auto& H : k == 2 ? idx2 : idx4)
                if (full_preimage(project(H, 4), C) == H) T.push_back(H);
            std::vector<Subgroup> want;
            if (k == 2)
                want = {Subgroup::closure({sc(-1), sc(3), U(1, 2)}, q), Subgroup::closure({sc(-1), sc(3), U(2, 1)}, q),
                        Subgroup::closure({tau, sc(3), U(-3, 4)}, q)};
            else
                want = {Subgroup::closure({sc(5), U(1, 2)}, q), Subgroup::closure({sc(5), U(-1, -2)}, q),
                        Subgroup::closure({sc(-1), sc(5), U(-3, 4)}, q)};
            r.expect(same_set(T, want), "(6) index " + std::to_string(k) + ": " + std::to_string(T.size()) +
                                            " full preimages, not the three listed");
            r.notes.push_back("(6) index " + std::to_string(k) + ": " + std::to_string(T.size()) + " full preimages");
        }
    }
}

void lemma_jzero_2adic(std::vector<LemmaReport>& out, const OrderDesc& o, int max_n) {
    for (int n = 2; n <= max_n; ++n) {
        const u32 q = u32(ipow(2, n));
        auto& r = out.emplace_back(make_report("subgroups-jzero-2adic", order_params(o, 2, n)));
        Timer t(r);
        const auto s = cartan_params(o, q);
        const Subgroup C = cartan_group(s);
        auto U = [&](i64 a, i64 b) { return unit_to_matrix(a, b, s); };
        const Mat2 m1 = Mat2::scalar(-1, q);
        for (u64 k : {2u, 6u})
            for (const auto& H : index_subgroups(r, C, k))
                if (!H.contains(m1) && cc_stable(H, s))
                    r.fail("(2) index-" + std::to_string(k) + " subgroup missing -1 and cc-stable: " + witness_text(H));
        r.expect(mat_pow(U(1, 1), 3) == U(-3, 6), "(3) (1+tau)^3 != -3+6tau");
        // the displayed (3 6; -6 3) has the wrong sign in the corner and is not a Cartan element
        if (q > 2) r.expect(!in_cartan(Mat2(3, 6, -6, 3, q), s), "(3) (3 6; -6 3) unexpectedly in the Cartan");
        const auto i3 = index_subgroups(r, C, 3);
        r.expect(i3.size() == 1 && i3[0] == Subgroup::closure({m1, U(3, 4), U(-3, 6)}, q),
                 "(3) index-3 subgroups: " + std::to_string(i3.size()));
    }
}

}  // namespace

std::vector<LemmaReport> verify_subgroup_lemmas(const OrderDesc& order, u64 p, int max_n, int special_max_n) {
    if (special_max_n < 0) special_max_n = max_n;
    std::vector<LemmaReport> out;
    const JClass j = j_class(order);
    if (p == 2) {
        lemma_index2(out, order, max_n);
        if (j == JClass::j_1728) lemma_j1728(out, order, special_max_n);
        if (j == JClass::j_zero) lemma_jzero_2adic(out, order, special_max_n);
    } else if (p == 3 && j == JClass::j_zero) {
        lemma_jzero_3adic(out, order, special_max_n);
    }
    return out;
}

}  // namespace cmlab
