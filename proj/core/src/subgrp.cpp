#include "cmlab/subgrp.hpp"

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <unordered_set>

namespace cmlab {

namespace {

std::atomic<u64> g_cap{kDefaultCap};

std::size_t hash_keys(u32 level, const std::vector<u64>& keys) {
    u64 h = 1469598103934665603ull ^ level;
    for (u64 k : keys) {
        h ^= k + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 1099511628211ull;
    }
    return std::size_t(h);
}

std::vector<u64> bfs_closure(std::vector<u64> start, const std::vector<u64>& gens, u32 level) {
    KeyArith ar(level);
    absl::flat_hash_set<u64> seen(start.begin(), start.end());
    std::vector<u64>& queue = start;
    const u64 cap = enumeration_cap();
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const u64 x = queue[i];
        for (u64 g : gens) {
            const u64 y = ar.mul(x, g);
            if (seen.insert(y).second) {
                queue.push_back(y);
                if (queue.size() > cap) throw TooLarge("closure exceeds cap " + std::to_string(cap));
            }
        }
    }
    std::sort(queue.begin(), queue.end());
    return std::move(queue);
}

// Smallest k | start with x^k in the set described by `in`.
template <class In>
u64 order_mod(const KeyArith& ar, u64 x, u64 start, const In& in) {
    u64 k = start;
    for (auto [q, e] : factorize(start)) {
        (void)e;
        while (k % q == 0 && in(ar.pow(x, k / q))) k /= q;
    }
    return k;
}

u64 lcm_u64(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

}  // namespace

u64 enumeration_cap() { return g_cap.load(); }

void set_enumeration_cap(u64 cap) { g_cap.store(std::min(cap, kHardCap)); }

void check_cap(u64 size, const char* what) {
    if (size > enumeration_cap())
        throw TooLarge(std::string(what) + " needs " + std::to_string(size) + " elements, cap " +
                       std::to_string(enumeration_cap()));
}

Subgroup::Subgroup(u32 level) : Subgroup(make(level, {Mat2::identity(level).key()}, {})) {}

Subgroup Subgroup::make(u32 level, std::vector<u64> keys, std::vector<Mat2> gens) {
    auto d = std::make_shared<Data>();
    d->level = level;
    d->keys = std::move(keys);
    d->hash = hash_keys(level, d->keys);
    if (!gens.empty() || d->keys.size() == 1) {
        d->gens = std::move(gens);
        d->gens_given = true;
    }
    return Subgroup(std::shared_ptr<const Data>(std::move(d)));
}

Subgroup Subgroup::closure(std::span<const Mat2> gens, u32 level) {
    std::vector<u64> gk;
    std::vector<Mat2> kept;
    for (const Mat2& g : gens) {
        if (g.n != level) throw LevelMismatch("generator at level " + std::to_string(g.n));
        if (!g.invertible()) throw Singular(to_text(g));
        gk.push_back(g.key());
        kept.push_back(g);
    }
    auto keys = bfs_closure({Mat2::identity(level).key()}, gk, level);
    return make(level, std::move(keys), std::move(kept));
}

Subgroup Subgroup::from_keys(u32 level, std::vector<u64> keys, std::vector<Mat2> gens, bool verify) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    if (verify) {
        KeyArith ar(level);
        auto has = [&](u64 k) { return std::binary_search(keys.begin(), keys.end(), k); };
        if (!has(ar.identity())) throw NotASubgroup("identity missing");
        for (u64 x : keys)
            for (u64 y : keys)
                if (!has(ar.mul(x, y))) throw NotASubgroup("not closed under products");
    }
    return make(level, std::move(keys), std::move(gens));
}

std::vector<Mat2> Subgroup::elements() const {
    std::vector<Mat2> out;
    out.reserve(d_->keys.size());
    for (u64 k : d_->keys) out.push_back(Mat2::from_key(k, d_->level));
    return out;
}

const std::vector<Mat2>& Subgroup::generators() const {
    if (!d_->gens_given)
        std::call_once(d_->gens_once, [this] { d_->gens = greedy_generators(*this); });
    return d_->gens;
}

bool Subgroup::contains_key(u64 key) const {
    return std::binary_search(d_->keys.begin(), d_->keys.end(), key);
}

bool Subgroup::contains(const Mat2& m) const { return m.n == d_->level && contains_key(m.key()); }

bool Subgroup::is_abelian() const {
    const auto& g = generators();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
            if (mat_mul(g[i], g[j]) != mat_mul(g[j], g[i])) return false;
    return true;
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
    return level() == other.level() &&
           std::includes(other.keys().begin(), other.keys().end(), keys().begin(), keys().end());
}

bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.d_ == b.d_ || (a.level() == b.level() && a.hash() == b.hash() && a.keys() == b.keys());
}

std::vector<Mat2> greedy_generators(const Subgroup& g, std::span<const Mat2> seeds) {
    const u32 n = g.level();
    std::vector<Mat2> gens;
    std::vector<u64> gk;
    std::vector<u64> cur{Mat2::identity(n).key()};
    auto in_cur = [&](u64 k) { return std::binary_search(cur.begin(), cur.end(), k); };
    auto add = [&](const Mat2& m) {
        gens.push_back(m);
        gk.push_back(m.key());
        cur = bfs_closure(cur, gk, n);
    };
    for (const Mat2& s : seeds)
        if (g.contains(s) && !in_cur(s.key())) add(s);
    for (u64 k : g.keys()) {
        if (cur.size() == g.order()) break;
        if (!in_cur(k)) add(Mat2::from_key(k, n));
    }
    return gens;
}

u64 index_in(const Subgroup& sub, const Subgroup& super) {
    if (sub.level() != super.level())
        throw LevelMismatch(std::to_string(sub.level()) + " vs " + std::to_string(super.level()));
    if (!sub.is_subgroup_of(super)) throw NotASubgroup("not contained in the supergroup");
    return super.order() / sub.order();
}

Subgroup reduce_mod(const Subgroup& g, u32 m) {
    if (m < 2 || g.level() % m != 0)
        throw NotDivisor(std::to_string(m) + " does not divide " + std::to_string(g.level()));
    if (m == g.level()) return g;
    std::vector<u64> keys;
    keys.reserve(g.order());
    for (u64 k : g.keys()) keys.push_back(mat_reduce(Mat2::from_key(k, g.level()), m).key());
    return Subgroup::from_keys(m, std::move(keys));
}

Subgroup full_preimage(const Subgroup& sub, const Subgroup& ambient) {
    const u32 m = sub.level();
    if (ambient.level() % m != 0)
        throw NotDivisor(std::to_string(m) + " does not divide " + std::to_string(ambient.level()));
    std::vector<u64> keys;
    for (u64 k : ambient.keys()) {
        Mat2 x = Mat2::from_key(k, ambient.level());
        if (sub.contains(m == x.n ? x : mat_reduce(x, m))) keys.push_back(k);
    }
    return Subgroup::from_keys(ambient.level(), std::move(keys));
}

Subgroup reduction_kernel(const Subgroup& ambient, u32 m) {
    return full_preimage(Subgroup(m), ambient);
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
    if (a.level() != b.level()) throw LevelMismatch("intersect");
    std::vector<u64> keys;
    std::set_intersection(a.keys().begin(), a.keys().end(), b.keys().begin(), b.keys().end(),
                          std::back_inserter(keys));
    return Subgroup::from_keys(a.level(), std::move(keys));
}

Subgroup filter(const Subgroup& g, const std::function<bool(const Mat2&)>& pred) {
    std::vector<u64> keys;
    for (u64 k : g.keys())
        if (pred(Mat2::from_key(k, g.level()))) keys.push_back(k);
    return Subgroup::from_keys(g.level(), std::move(keys));
}

u64 exponent(const Subgroup& g) {
    u64 e = 1;
    for (const Mat2& x : g.generators()) e = lcm_u64(e, mat_order(x));
    return e;
}

static void require_abelian(const Subgroup& g) {
    if (!g.is_abelian()) throw NotAbelian("order " + std::to_string(g.order()));
}

std::vector<u64> abelian_invariants(const Subgroup& g) {
    require_abelian(g);
    const u32 n = g.level();
    KeyArith ar(n);
    const u64 e = exponent(g);
    std::vector<u64> h{ar.identity()};
    std::vector<u64> out;
    while (h.size() < g.order()) {
        auto in_h = [&](u64 k) { return std::binary_search(h.begin(), h.end(), k); };
        u64 best = 0, best_m = 0;
        for (u64 x : g.keys()) {
            if (in_h(x)) continue;
            const u64 m = order_mod(ar, x, e, in_h);
            if (m > best_m) best_m = m, best = x;
        }
        // <H, x> is the disjoint union of x^k H, k < m.
        std::vector<u64> next;
        next.reserve(h.size() * best_m);
        u64 p = ar.identity();
        for (u64 k = 0; k < best_m; ++k) {
            for (u64 y : h) next.push_back(ar.mul(p, y));
            p = ar.mul(p, best);
        }
        std::sort(next.begin(), next.end());
        h = std::move(next);
        out.push_back(best_m);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<u64> invariants_of_product(std::vector<u64> cyclic_orders) {
    std::map<u64, std::vector<int>> parts;
    for (u64 c : cyclic_orders)
        for (auto [q, k] : factorize(c)) parts[q].push_back(k);
    std::size_t r = 0;
    for (auto& [q, v] : parts) {
        std::sort(v.rbegin(), v.rend());
        r = std::max(r, v.size());
    }
    std::vector<u64> out(r, 1);  // out[0] is the largest
    for (auto& [q, v] : parts)
        for (std::size_t i = 0; i < v.size(); ++i) out[i] *= ipow(q, v[i]);
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<u64> abelian_invariants_by_order_stats(const Subgroup& g) {
    require_abelian(g);
    KeyArith ar(g.level());
    const u64 e = exponent(g);
    // order of every element
    std::map<u64, u64> count_by_order;
    auto is_id = [&](u64 k) { return k == ar.identity(); };
    for (u64 x : g.keys()) ++count_by_order[order_mod(ar, x, e, is_id)];
    std::vector<u64> cyclic;
    for (auto [q, kmax] : factorize(g.order())) {
        // c[k] = #{x : x^(q^k) = 1}
        std::vector<u64> c(kmax + 2, 0);
        for (int k = 0; k <= kmax + 1; ++k) {
            const u64 qk = ipow(q, k);
            for (auto [o, cnt] : count_by_order)
                if (qk % o == 0) c[k] += cnt;
        }
        // r[k] = #{cyclic q-factors with exponent >= k}
        std::vector<int> r(kmax + 2, 0);
        for (int k = 1; k <= kmax + 1; ++k) {
            u64 ratio = c[k] / c[k - 1];
            int l = 0;
            while (ratio > 1) ratio /= q, ++l;
            r[k] = l;
        }
        for (int k = 1; k <= kmax; ++k)
            for (int t = 0; t < r[k] - r[k + 1]; ++t) cyclic.push_back(ipow(q, k));
    }
    return invariants_of_product(cyclic);
}

std::vector<Subgroup> subgroups_of_prime_index(const Subgroup& g, u64 k) {
    if (!is_prime(k)) throw NotDivisor("index " + std::to_string(k) + " is not prime");
    require_abelian(g);
    if (g.order() % k != 0) return {};
    const u32 n = g.level();
    KeyArith ar(n);
    std::vector<u64> gk;
    gk.reserve(g.order());
    for (u64 x : g.keys()) gk.push_back(ar.pow(x, k));
    std::sort(gk.begin(), gk.end());
    gk.erase(std::unique(gk.begin(), gk.end()), gk.end());

    // basis t_1..t_r of G / G^k
    std::vector<u64> basis, cur = gk;
    for (u64 x : g.keys()) {
        if (cur.size() == g.order()) break;
        if (std::binary_search(cur.begin(), cur.end(), x)) continue;
        basis.push_back(x);
        std::vector<u64> next;
        u64 p = ar.identity();
        for (u64 j = 0; j < k; ++j) {
            for (u64 y : cur) next.push_back(ar.mul(p, y));
            p = ar.mul(p, x);
        }
        std::sort(next.begin(), next.end());
        cur = std::move(next);
    }
    const std::size_t r = basis.size();
    const u64 cells = ipow(k, int(r));

    // coordinates: position in sorted keys -> vector encoded base k (digit i = coefficient of t_i)
    std::vector<u32> coord(g.order());
    for (u64 v = 0; v < cells; ++v) {
        u64 rep = ar.identity(), rest = v;
        for (std::size_t i = 0; i < r; ++i, rest /= k) rep = ar.mul(rep, ar.pow(basis[i], rest % k));
        for (u64 y : gk) {
            const u64 z = ar.mul(rep, y);
            auto it = std::lower_bound(g.keys().begin(), g.keys().end(), z);
            coord[it - g.keys().begin()] = u32(v);
        }
    }
    std::vector<Subgroup> out;
    for (u64 lam = 1; lam < cells; ++lam) {
        // normalised: leading (lowest-index) nonzero coefficient equals 1
        u64 rest = lam;
        while (rest % k == 0) rest /= k;
        if (rest % k != 1) continue;
        std::vector<u64> keys;
        for (std::size_t i = 0; i < g.order(); ++i) {
            u64 a = lam, v = coord[i], s = 0;
            for (std::size_t t = 0; t < r; ++t, a /= k, v /= k) s += (a % k) * (v % k);
            if (s % k == 0) keys.push_back(g.keys()[i]);
        }
        out.push_back(Subgroup::from_keys(n, std::move(keys)));
    }
    sort_unique(out);
    return out;
}

std::vector<Subgroup> subgroups_of_index(const Subgroup& g, u64 index) {
    if (index == 1) return {g};
    if (g.order() % index != 0) return {};
    const u64 p = factorize(index).front().first;
    std::vector<Subgroup> out;
    for (const Subgroup& h : subgroups_of_prime_index(g, p))
        for (Subgroup& s : subgroups_of_index(h, index / p)) out.push_back(std::move(s));
    sort_unique(out);
    return out;
}

std::vector<Subgroup> all_subgroups(const Subgroup& g) {
    check_cap(g.order() * g.order(), "all_subgroups");
    std::vector<Subgroup> found{Subgroup(g.level())};
    std::unordered_set<Subgroup> known(found.begin(), found.end());
    for (std::size_t i = 0; i < found.size(); ++i) {
        const Subgroup h = found[i];
        for (u64 x : g.keys()) {
            if (h.contains_key(x)) continue;
            std::vector<Mat2> gens = h.generators();
            gens.push_back(Mat2::from_key(x, g.level()));
            Subgroup k = Subgroup::closure(gens, g.level());
            if (known.insert(k).second) found.push_back(k);
        }
    }
    sort_unique(found);
    return found;
}

Automorphism Automorphism::conjugation(const Mat2& m) {
    const Mat2 mi = mat_inv(m);
    return Automorphism{[m, mi](const Mat2& x) { return mat_mul(mat_mul(m, x), mi); }};
}

bool is_stable_under(const Subgroup& g, const Automorphism& a) {
    for (u64 k : g.keys())
        if (!g.contains(a.apply(Mat2::from_key(k, g.level())))) return false;
    return true;
}

Subgroup image_under(const Subgroup& g, const Automorphism& a) {
    std::vector<u64> keys;
    for (u64 k : g.keys()) keys.push_back(a.apply(Mat2::from_key(k, g.level())).key());
    return Subgroup::from_keys(g.level(), std::move(keys));
}

std::vector<Mat2> conjugators(const Mat2& A, const Mat2& B, const Subgroup& ambient) {
    if (A.n != B.n || A.n != ambient.level()) throw LevelMismatch("conjugators");
    std::vector<Mat2> out;
    for (u64 k : ambient.keys()) {
        const Mat2 g = Mat2::from_key(k, ambient.level());
        if (mat_mul(g, A) == mat_mul(B, g)) out.push_back(g);
    }
    return out;
}

void for_each_gl2(u32 n, const std::function<bool(const Mat2&)>& visit) {
    std::vector<char> unit(n);
    for (u32 i = 0; i < n; ++i) unit[i] = is_unit(i, n);
    Mat2 m = Mat2::identity(n);
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b)
            for (u32 c = 0; c < n; ++c) {
                const u64 bc = u64(b) * c % n;
                for (u32 d = 0; d < n; ++d) {
                    const u64 ad = u64(a) * d % n;
                    if (!unit[(ad + n - bc) % n]) continue;
                    m.a11 = a, m.a12 = b, m.a21 = c, m.a22 = d;
                    if (!visit(m)) return;
                }
            }
}

std::vector<Mat2> conjugators_in_gl(const Mat2& A, const Mat2& B) {
    if (A.n != B.n) throw LevelMismatch("conjugators_in_gl");
    check_cap(gl2_order(A.n), "GL(2) scan");
    std::vector<Mat2> out;
    for_each_gl2(A.n, [&](const Mat2& g) {
        if (mat_mul(g, A) == mat_mul(B, g)) out.push_back(g);
        return true;
    });
    return out;
}

Subgroup gl2_group(u32 n) {
    check_cap(gl2_order(n), "GL(2)");
    std::vector<u64> keys;
    keys.reserve(gl2_order(n));
    for_each_gl2(n, [&](const Mat2& g) {
        keys.push_back(g.key());
        return true;
    });
    return Subgroup::from_keys(n, std::move(keys));
}

bool subgroup_less(const Subgroup& a, const Subgroup& b) {
    if (a.level() != b.level()) return a.level() < b.level();
    if (a.order() != b.order()) return a.order() < b.order();
    return a.keys() < b.keys();
}

void sort_unique(std::vector<Subgroup>& v) {
    std::sort(v.begin(), v.end(), subgroup_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace cmlab
