#pragma once
// Finite subgroups of GL(2, Z/NZ), stored as sorted element keys.

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "cmlab/modmat.hpp"

namespace cmlab {

inline constexpr u64 kHardCap = u64(1) << 26;
inline constexpr u64 kDefaultCap = u64(1) << 23;

// Process-wide enumeration cap (number of group elements). Clamped to kHardCap.
u64 enumeration_cap();
void set_enumeration_cap(u64 cap);
void check_cap(u64 size, const char* what);

class Subgroup {
public:
    // Trivial group at the given level.
    explicit Subgroup(u32 level = 2);

    static Subgroup closure(std::span<const Mat2> gens, u32 level);
    static Subgroup closure(std::initializer_list<Mat2> gens, u32 level) {
        return closure(std::span<const Mat2>(gens.begin(), gens.size()), level);
    }
    // From an element set already known to be a group. `verify` checks closure.
    static Subgroup from_keys(u32 level, std::vector<u64> keys, std::vector<Mat2> gens = {},
                              bool verify = false);

    u32 level() const { return d_->level; }
    u64 order() const { return d_->keys.size(); }
    const std::vector<u64>& keys() const { return d_->keys; }
    Mat2 element(std::size_t i) const { return Mat2::from_key(d_->keys[i], d_->level); }
    std::vector<Mat2> elements() const;
    // Supplied generators, or a deterministic greedy generating set.
    const std::vector<Mat2>& generators() const;

    bool contains(const Mat2& m) const;
    bool contains_key(u64 key) const;
    bool is_abelian() const;
    bool is_subgroup_of(const Subgroup& other) const;
    std::size_t hash() const { return d_->hash; }

    friend bool operator==(const Subgroup& a, const Subgroup& b);

private:
    struct Data {
        u32 level;
        std::vector<u64> keys;
        std::size_t hash = 0;
        mutable std::once_flag gens_once;
        mutable std::vector<Mat2> gens;
        bool gens_given = false;
    };
    explicit Subgroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    static Subgroup make(u32 level, std::vector<u64> keys, std::vector<Mat2> gens);
    std::shared_ptr<const Data> d_;
};

// Deterministic small generating set: seeds first, then lexicographic greedy fill.
std::vector<Mat2> greedy_generators(const Subgroup& g, std::span<const Mat2> seeds = {});

u64 index_in(const Subgroup& sub, const Subgroup& super);
Subgroup reduce_mod(const Subgroup& g, u32 m);
Subgroup full_preimage(const Subgroup& sub, const Subgroup& ambient);
// Kernel of reduction ambient -> level m.
Subgroup reduction_kernel(const Subgroup& ambient, u32 m);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
// Subgroup of elements satisfying a predicate (caller guarantees it is a subgroup).
Subgroup filter(const Subgroup& g, const std::function<bool(const Mat2&)>& pred);

// Element order inside an abelian group's ambient, via the group exponent.
u64 exponent(const Subgroup& g);

// Invariant factors d1 | d2 | ... by iterated extraction of maximal-order elements.
std::vector<u64> abelian_invariants(const Subgroup& g);
// Same invariants derived from element-order statistics only.
std::vector<u64> abelian_invariants_by_order_stats(const Subgroup& g);
// Invariant factors of a product of cyclic groups Z/c_i.
std::vector<u64> invariants_of_product(std::vector<u64> cyclic_orders);

std::vector<Subgroup> subgroups_of_prime_index(const Subgroup& g, u64 k);
// Index 4 and 6 by composition of prime-index steps; deduplicated, canonical order.
std::vector<Subgroup> subgroups_of_index(const Subgroup& g, u64 index);
// Every subgroup, by orbit closure over cyclic pieces; only for small groups.
std::vector<Subgroup> all_subgroups(const Subgroup& g);

struct Automorphism {
    std::function<Mat2(const Mat2&)> apply;
    static Automorphism conjugation(const Mat2& m);
};
bool is_stable_under(const Subgroup& g, const Automorphism& a);
Subgroup image_under(const Subgroup& g, const Automorphism& a);

std::vector<Mat2> conjugators(const Mat2& A, const Mat2& B, const Subgroup& ambient);
// Full scan of GL(2, Z/NZ) without materialising it.
std::vector<Mat2> conjugators_in_gl(const Mat2& A, const Mat2& B);
// Visit every element of GL(2, Z/NZ); visitor returns false to stop.
void for_each_gl2(u32 n, const std::function<bool(const Mat2&)>& visit);
Subgroup gl2_group(u32 n);

// Canonical ordering helper for lists of subgroups.
bool subgroup_less(const Subgroup& a, const Subgroup& b);
void sort_unique(std::vector<Subgroup>& v);

}  // namespace cmlab

template <>
struct std::hash<cmlab::Subgroup> {
    std::size_t operator()(const cmlab::Subgroup& g) const noexcept { return g.hash(); }
};
