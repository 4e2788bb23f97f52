#include "cmlab/classify.hpp"

#include <algorithm>
#include <set>

namespace cmlab {

std::string to_string(Frame f) { return f == Frame::delta_phi ? "delta-phi" : "split-diagonal"; }

Subgroup split_cartan_group(u32 level) {
    check_cap(u64(level) * level, "split Cartan");
    std::vector<u64> keys;
    for (u32 a = 1; a < level; ++a) {
        if (!is_unit(a, level)) continue;
        for (u32 b = 1; b < level; ++b)
            if (is_unit(b, level)) keys.push_back(Mat2(a, 0, 0, b, level).key());
    }
    return Subgroup::from_keys(level, std::move(keys));
}

Subgroup split_normalizer_group(u32 level) {
    const Subgroup d = split_cartan_group(level);
    const Mat2 w(0, 1, 1, 0, level);
    std::vector<u64> keys = d.keys();
    for (u64 k : d.keys()) keys.push_back(mat_mul(w, Mat2::from_key(k, level)).key());
    return Subgroup::from_keys(level, std::move(keys));
}

Subgroup frame_normalizer(const ImageCandidate& c) {
    return c.frame == Frame::delta_phi ? normalizer_group(c.shape) : split_normalizer_group(c.level);
}

Subgroup frame_cartan(const ImageCandidate& c) {
    return c.frame == Frame::delta_phi ? cartan_group(c.shape) : split_cartan_group(c.level);
}

Mat2 split_frame_conjugator(const CartanShape& s, u64 p, int n) {
    if (p == 2 || s.phi != 0) throw NotAUnit("split frame needs odd p and phi = 0");
    auto r = sqrt_mod_prime_power(s.delta, p, n);
    if (!r) throw NotAUnit("delta is not a unit square mod p^n");
    return Mat2(1, 1, *r, -i64(*r), s.level);
}

namespace {

struct Level {
    u32 N;
    CartanShape s;
    Subgroup C, Nz;
};

Level level_ctx(const OrderDesc& o, u64 p, int k) {
    const u32 N = u32(ipow(p, k));
    CartanShape s = cartan_params(o, N);
    return Level{N, s, cartan_group(s), normalizer_group(s)};
}

std::vector<Mat2> gens_plus(const Subgroup& h, const Mat2& x) {
    std::vector<Mat2> g = h.generators();
    g.push_back(x);
    return g;
}

// Drop identities and repeats (e.g. -1 and 3 coincide mod 4), keeping the printed order.
std::vector<Mat2> tidy(const std::vector<Mat2>& gens) {
    std::vector<Mat2> out;
    for (const Mat2& g : gens)
        if (!g.is_identity() && std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    return out;
}

std::string eps_tag(int e) { return e > 0 ? "+1" : "-1"; }

struct Builder {
    OrderDesc order;
    u64 p;
    int n;
    Level top;
    std::vector<ImageCandidate> out;

    // parts: group already at level p^n.
    void emit(std::string label, std::string condition, const Subgroup& group, const Mat2& cc,
              std::vector<Mat2> stated_cartan, std::optional<u64> stated_index, int m,
              Frame frame = Frame::delta_phi, std::string note = {}) {
        ImageCandidate c;
        c.label = std::move(label);
        c.order = order;
        c.p = p;
        c.n = n;
        c.level = top.N;
        c.shape = top.s;
        c.frame = frame;
        c.condition = std::move(condition);
        c.note = std::move(note);
        c.group = group;
        c.cc_element = cc;
        c.stated_index = stated_index;
        c.defining_exponent = m;
        stated_cartan = tidy(stated_cartan);
        const Subgroup fc = frame == Frame::delta_phi ? top.C : split_cartan_group(top.N);
        const Subgroup fn = frame == Frame::delta_phi ? top.Nz : split_normalizer_group(top.N);
        c.cartan_part = intersect(group, fc);
        c.index_in_normalizer = fn.order() / group.order();
        if (!stated_cartan.empty()) {
            c.stated_generators = stated_cartan;
            c.stated_generators.push_back(cc);
        }
        if (!stated_cartan.empty() && Subgroup::closure(stated_cartan, top.N) == c.cartan_part)
            c.cartan_part_generators = stated_cartan;
        else
            c.cartan_part_generators = greedy_generators(c.cartan_part);
        if (!c.stated_generators.empty() && Subgroup::closure(c.stated_generators, top.N) == group) {
            c.generators = c.stated_generators;
        } else {
            std::vector<Mat2> seeds = c.cartan_part_generators;
            seeds.push_back(cc);
            c.generators = greedy_generators(group, seeds);
        }
        for (ImageCandidate& prev : out) {
            if (prev.frame == c.frame && prev.group == c.group) {
                prev.aliases.push_back(c.label);
                return;
            }
        }
        out.push_back(std::move(c));
    }

    // Group <H_m, cc> built at level p^m and lifted to the full preimage at level p^n.
    Subgroup lift(const Subgroup& low_group, Frame frame) const {
        if (low_group.level() == top.N) return low_group;
        const Subgroup amb = frame == Frame::delta_phi ? top.Nz : split_normalizer_group(top.N);
        return full_preimage(low_group, amb);
    }
};

Mat2 at(const Mat2& m, u32 level) { return Mat2(m.a11, m.a12, m.a21, m.a22, level); }

// Odd primes: everything is the full preimage of a group defined at level p (or 9).
void odd_good(Builder& b, const std::string& family, const std::string& cond) {
    const Level lp = level_ctx(b.order, b.p, 1);
    for (int e : {1, -1}) {
        const Mat2 cc = c_eps(e, b.top.N);
        const Subgroup g = b.lift(Subgroup::closure(gens_plus(lp.C, c_eps(e, lp.N)), lp.N), Frame::delta_phi);
        b.emit(family + ".normalizer.c" + eps_tag(e), cond, g, cc, {}, 1, 1);
    }
}

void odd_j0_cubes(Builder& b) {
    const Level lp = level_ctx(b.order, b.p, 1);
    KeyArith ar(lp.N);
    std::vector<u64> cubes;
    for (u64 k : lp.C.keys()) cubes.push_back(ar.pow(k, 3));
    const Subgroup h = Subgroup::from_keys(lp.N, cubes);
    for (int e : {1, -1}) {
        const Subgroup g = b.lift(Subgroup::closure(gens_plus(h, c_eps(e, lp.N)), lp.N), Frame::delta_phi);
        b.emit("good-j0.cubes.c" + eps_tag(e), "j = 0, p = 2 or 5 mod 9", g, c_eps(e, b.top.N), {},
               3, 1);
    }
}

void odd_j0_split(Builder& b) {
    const u32 q = u32(b.p);
    std::set<u32> cubes;
    for (u32 x = 1; x < q; ++x) cubes.insert(u32(u64(x) * x % q * x % q));
    std::vector<u64> keys;
    for (u32 a = 1; a < q; ++a)
        for (u32 c = 1; c < q; ++c)
            if (cubes.count(u32(u64(a) * inv_mod(c, q) % q))) keys.push_back(Mat2(a, 0, 0, c, q).key());
    const Subgroup h = Subgroup::from_keys(q, keys);
    for (int e : {1, -1}) {
        const Subgroup g =
            b.lift(Subgroup::closure(gens_plus(h, Mat2(0, e, e, 0, q)), q), Frame::split_diagonal);
        b.emit("good-j0.split-cubes.w" + eps_tag(e), "j = 0, p = 4 or 7 mod 9", g,
               Mat2(0, e, e, 0, b.top.N), {}, 3, 1, Frame::split_diagonal,
               "split-diagonal frame; conjugate into delta-phi with split_frame_conjugator");
    }
}

void odd_bad_generic(Builder& b) {
    const Level lp = level_ctx(b.order, b.p, 1);
    const u32 q = lp.N;
    std::set<u32> squares;
    for (u32 x = 1; x < q; ++x) squares.insert(u32(u64(x) * x % q));
    const Subgroup h = filter(lp.C, [&](const Mat2& m) { return squares.count(m.a22) > 0; });
    for (int e : {1, -1}) {
        const Subgroup g = b.lift(Subgroup::closure(gens_plus(h, c_eps(e, q)), q), Frame::delta_phi);
        b.emit("bad.squares.c" + eps_tag(e), "p odd, p divides f*disc_K, j != 0, 1728", g,
               c_eps(e, b.top.N), {}, 2, 1);
    }
}

void odd_bad_j0(Builder& b) {
    // delta = -3/4, phi = 0 at every level 3^k.
    const std::string cond = "j = 0, p = 3";
    const Level l3 = level_ctx(b.order, 3, 1);
    auto set_family = [&](const std::string& name, u64 index, auto pred) {
        const Subgroup h = filter(l3.C, pred);
        for (int e : {1, -1}) {
            const Subgroup g = b.lift(Subgroup::closure(gens_plus(h, c_eps(e, 3)), 3), Frame::delta_phi);
            b.emit("bad-j0." + name + ".c" + eps_tag(e), cond, g, c_eps(e, b.top.N), {}, index, 1);
        }
    };
    // at level 3, delta = 0: elements (a b; 0 a)
    set_family("a1", 2, [](const Mat2& m) { return m.a22 == 1; });
    set_family("b0", 3, [](const Mat2& m) { return m.a12 == 0; });
    if (b.n >= 2) {
        for (u64 scal : {2, 4}) {
            const u64 index = scal == 2 ? 3 : 6;
            for (int i : {0, 1}) {
                const u32 N = b.top.N;
                const Mat2 s = Mat2::scalar(i64(scal), N);
                Mat2 x = unit_to_matrix(1, 1, b.top.s);
                if (i == 1) {
                    // (-5/4 1/2; -3/8 -5/4)
                    const i64 a = i64(rmod(-5, N)) * inv_mod(4, N);
                    x = Mat2(a, inv_mod(2, N), i64(rmod(-3, N)) * inv_mod(8, N), a, N);
                }
                const Level l9 = level_ctx(b.order, 3, 2);
                const Subgroup h9 = Subgroup::closure({at(s, 9), at(x, 9)}, 9);
                for (int e : {1, -1}) {
                    const Subgroup g = b.lift(Subgroup::closure(gens_plus(h9, c_eps(e, 9)), 9), Frame::delta_phi);
                    b.emit("bad-j0.elkies" + std::to_string(index) + "-i" + std::to_string(i) + ".c" +
                               eps_tag(e),
                           cond, g, c_eps(e, N), {s, x}, index, 2,
                           Frame::delta_phi, "defined mod 9; surjects onto its mod-3 family");
                }
            }
        }
    }
    set_family("a1b0", 6, [](const Mat2& m) { return m.a22 == 1 && m.a12 == 0; });
}

void two_generic(Builder& b) {
    const Level& t = b.top;
    const std::optional<u64> one = 1;
    b.emit("2adic.normalizer.cphi", "p = 2", t.Nz, cc_phi(t.s), {}, one, 1);
    auto twist = [&](u64 alpha, int m, const std::string& name, const std::string& cond) {
        const Level lm = level_ctx(b.order, 2, m);
        for (int sign : {1, -1}) {
            const Mat2 x = unit_to_matrix(sign, sign, t.s);
            const Mat2 xm = unit_to_matrix(sign, sign, lm.s);
            for (int e : {1, -1}) {
                const Subgroup low =
                    Subgroup::closure({Mat2::scalar(i64(alpha), lm.N), xm, c_eps(e, lm.N)}, lm.N);
                const Subgroup g = b.lift(low, Frame::delta_phi);
                b.emit("2adic." + name + (sign > 0 ? "1" : "2") + ".c" + eps_tag(e), cond, g,
                       c_eps(e, t.N), {Mat2::scalar(i64(alpha), t.N), x}, 2, m);
            }
        }
    };
    const i64 D = b.order.disc();
    if (rmod(D, 16) == 0 && b.n >= 2) twist(5, 2, "J", "disc_K*f^2 = 0 mod 16");
    if (rmod(b.order.disc_K, 8) == 0 && b.n >= 3) twist(3, 3, "Jp", "disc_K = 0 mod 8");
}

void two_j1728(Builder& b) {
    const Level& t = b.top;
    const u32 N = t.N;
    auto u = [&](i64 a, i64 c) { return unit_to_matrix(a, c, t.s); };
    auto sc = [&](i64 a) { return Mat2::scalar(a, N); };
    struct Part {
        std::string name;
        std::vector<Mat2> gens;  // empty: full Cartan
        u64 index;
        int valid_from;
    };
    const std::vector<Part> parts = {
        {"G1", {}, 1, 1},
        {"G2a", {sc(-1), sc(3), u(1, 2)}, 2, 2},
        {"G2b", {sc(-1), sc(3), u(2, 1)}, 2, 2},
        {"G4a", {sc(5), u(1, 2)}, 4, 2},
        {"G4b", {sc(5), u(-1, -2)}, 4, 2},
        {"G4c", {sc(-3), u(2, -1)}, 4, 3},
        {"G4d", {sc(-3), u(-2, 1)}, 4, 3},
    };
    const std::vector<std::pair<std::string, Mat2>> ccs = {
        {"c+1", c_eps(1, N)}, {"c-1", c_eps(-1, N)}, {"c'+1", Mat2(0, 1, 1, 0, N)}, {"c'-1", Mat2(0, -1, -1, 0, N)}};
    for (const Part& part : parts) {
        if (b.n < part.valid_from) continue;
        const Subgroup h = part.gens.empty() ? t.C : Subgroup::closure(part.gens, N);
        for (const auto& [tag, cc] : ccs) {
            const Subgroup g = Subgroup::closure(gens_plus(h, cc), N);
            b.emit("2adic-j1728." + part.name + "." + tag, "j = 1728, p = 2", g, cc, part.gens, part.index,
                   part.valid_from);
        }
    }
}

void two_j0(Builder& b) {
    const Level& t = b.top;
    const u32 N = t.N;
    const Mat2 m1 = Mat2::scalar(-1, N);
    const Mat2 a1 = unit_to_matrix(3, 4, t.s);    // 3 + 4 tau  = (7 4; -4 3)
    const Mat2 full = unit_to_matrix(1, 1, t.s);  // 1 + tau    = (2 1; -1 1)
    const Mat2 cube = unit_to_matrix(-3, 6, t.s); // (1 + tau)^3 = (3 6; -6 -3)
    const std::vector<std::pair<std::string, Mat2>> ccs = {{"c'+1", Mat2(0, 1, 1, 0, N)},
                                                           {"c'-1", Mat2(0, -1, -1, 0, N)}};
    for (int which : {0, 1}) {
        const std::vector<Mat2> gens = {m1, a1, which == 0 ? full : cube};
        const Subgroup h = which == 0 ? t.C : Subgroup::closure(gens, N);
        for (const auto& [tag, cc] : ccs) {
            const Subgroup g = Subgroup::closure(gens_plus(h, cc), N);
            b.emit(std::string("2adic-j0.") + (which == 0 ? "C" : "cubes") + "." + tag, "j = 0, p = 2",
                   g, cc, gens, which == 0 ? 1 : 3, 1);
        }
    }
}

}  // namespace

std::vector<ImageCandidate> classify(const OrderDesc& order, u64 p, int n) {
    validate(order);
    if (!is_prime(p)) throw InvalidOrder(std::to_string(p) + " is not prime");
    if (n < 1) throw InvalidOrder("exponent must be >= 1");
    const u64 N = ipow(p, n);
    if (N > kMaxLevel) throw TooLarge("level " + std::to_string(N));
    check_cap(2 * N * N, "classification");

    Builder b{order, p, n, level_ctx(order, p, n), {}};
    const JClass j = j_class(order);
    const bool bad = (order.disc_K * order.conductor) % i64(p) == 0;
    if (p == 2) {
        if (j == JClass::j_1728) two_j1728(b);
        else if (j == JClass::j_zero) two_j0(b);
        else two_generic(b);
    } else if (j == JClass::j_zero && p == 3) {
        odd_good(b, "bad-j0", "j = 0, p = 3");
        odd_bad_j0(b);
    } else if (bad) {
        odd_good(b, "bad", "p odd, p divides f*disc_K, j != 0, 1728");
        odd_bad_generic(b);
    } else if (j == JClass::j_zero) {
        const u64 r = p % 9;
        if (r == 1 || r == 8) {
            odd_good(b, "good-j0", "j = 0, p = +-1 mod 9");
        } else if (r == 2 || r == 5) {
            odd_good(b, "good-j0", "j = 0, p = 2 or 5 mod 9");
            odd_j0_cubes(b);
        } else {
            odd_good(b, "good-j0", "j = 0, p = 4 or 7 mod 9");
            odd_j0_split(b);
        }
    } else {
        odd_good(b, "good", "p odd, p does not divide f*disc_K");
    }
    return std::move(b.out);
}

CheckReport candidate_check(const ImageCandidate& c) {
    CheckReport r;
    auto add = [&](std::string name, bool applicable, bool pass, std::string detail = {}) {
        r.items.push_back(CheckItem{std::move(name), applicable, applicable ? pass : true, std::move(detail)});
        if (applicable && !pass) r.pass = false;
    };
    try {
        const u32 N = c.level;
        const Subgroup fn = frame_normalizer(c);
        const Subgroup fc = frame_cartan(c);
        const Mat2& g = c.cc_element;

        add("in-frame-normalizer", true, c.group.is_subgroup_of(fn));
        add("generators-generate", true, Subgroup::closure(c.generators, N) == c.group);
        if (!c.stated_generators.empty())
            add("stated-generators-generate", true, Subgroup::closure(c.stated_generators, N) == c.group);
        add("contains-cc", true, c.group.contains(g));
        const bool trdet = g.n == N && g.trace() == 0 && g.det() == N - 1;
        add("cc-trace0-det-1", true, trdet, "trace " + std::to_string(g.trace()) + " det " + std::to_string(g.det()));
        const Subgroup cp = intersect(c.group, fc);
        add("cartan-part-is-intersection", true, cp == c.cartan_part);
        add("cartan-part-generators", true, Subgroup::closure(c.cartan_part_generators, N) == c.cartan_part);
        const u64 ci = c.group.order() / std::max<u64>(1, cp.order());
        add("cartan-part-index-2", c.p != 2 || c.n >= 2, ci == 2, "index " + std::to_string(ci));
        const bool stable = c.frame == Frame::delta_phi
                                ? is_stable_under(cp, cc_automorphism(c.shape))
                                : is_stable_under(cp, Automorphism::conjugation(Mat2(0, 1, 1, 0, N)));
        add("cartan-part-cc-stable", true, stable);
        const u64 idx = fn.order() / c.group.order();
        add("index-in-normalizer", true, idx == c.index_in_normalizer && fn.order() % c.group.order() == 0,
            std::to_string(idx));
        if (c.stated_index)
            add("stated-index", true, idx == *c.stated_index,
                std::to_string(idx) + " vs " + std::to_string(*c.stated_index));
        if (c.p != 2) {
            std::set<u32> dets;
            for (u64 k : c.group.keys()) dets.insert(Mat2::from_key(k, N).det());
            const u64 units = ipow(c.p, c.n - 1) * (c.p - 1);
            add("det-image-index-le-2", true, dets.size() * 2 >= units,
                "index " + std::to_string(units / dets.size()));
        } else {
            add("det-image-index-le-2", false, true, "p = 2");
        }
        const bool pre_ok = c.n >= c.defining_exponent;
        if (pre_ok) {
            const u32 m = u32(ipow(c.p, c.defining_exponent));
            add("full-preimage", true, full_preimage(reduce_mod(c.group, m), fn) == c.group,
                "level " + std::to_string(m));
        } else {
            add("full-preimage", false, true, "below defining level");
        }
    } catch (const std::exception& e) {
        add("exception", true, false, e.what());
    }
    return r;
}

}  // namespace cmlab
