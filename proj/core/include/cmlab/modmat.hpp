#pragma once
// Residues and 2x2 matrices over Z/NZ.

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cmlab/errors.hpp"

namespace cmlab {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline constexpr u32 kMaxLevel = 1u << 16;

// Reduce an arbitrary signed integer into [0, n).
constexpr u32 rmod(i64 a, u32 n) {
    i64 r = a % static_cast<i64>(n);
    return static_cast<u32>(r < 0 ? r + n : r);
}

u64 gcd_u64(u64 a, u64 b);
bool is_unit(i64 a, u32 n);
// Inverse of a mod n; throws NotAUnit.
u32 inv_mod(i64 a, u32 n);
u64 pow_mod(u64 base, u64 e, u64 n);
bool is_prime(u64 n);
// Prime factorisation as (prime, exponent) pairs, ascending.
std::vector<std::pair<u64, int>> factorize(u64 n);
// Prime power check: returns (p, k) with n = p^k, or (0, 0).
std::pair<u64, int> prime_power(u64 n);
u64 ipow(u64 b, int e);
// p-adic valuation of a (a != 0), capped at cap.
int valuation(i64 a, u64 p, int cap);

class Residue {
public:
    Residue(i64 value, u32 level);
    u32 value() const { return v_; }
    u32 level() const { return n_; }
    bool is_unit() const;
    friend Residue operator+(Residue a, Residue b);
    friend Residue operator-(Residue a, Residue b);
    friend Residue operator*(Residue a, Residue b);
    friend bool operator==(Residue a, Residue b) = default;

private:
    u32 v_;
    u32 n_;
};

Residue res_inv(Residue r);

struct Mat2 {
    u32 a11 = 1, a12 = 0, a21 = 0, a22 = 1;
    u32 n = 2;

    Mat2() = default;
    Mat2(i64 x11, i64 x12, i64 x21, i64 x22, u32 level);

    static Mat2 identity(u32 level) { return Mat2(1, 0, 0, 1, level); }
    static Mat2 scalar(i64 s, u32 level) { return Mat2(s, 0, 0, s, level); }
    static Mat2 from_key(u64 key, u32 level);

    u32 level() const { return n; }
    u32 det() const;
    u32 trace() const;
    bool invertible() const;
    bool is_identity() const { return a11 == 1 % n && a22 == 1 % n && a12 == 0 && a21 == 0; }
    // ((a11*N + a12)*N + a21)*N + a22; order-preserving for the lexicographic order.
    u64 key() const;

    friend bool operator==(const Mat2&, const Mat2&) = default;
    friend std::strong_ordering operator<=>(const Mat2& x, const Mat2& y);
};

Mat2 mat_mul(const Mat2& A, const Mat2& B);
Mat2 mat_inv(const Mat2& A);
Mat2 mat_pow(const Mat2& A, u64 k);
Mat2 mat_neg(const Mat2& A);
Mat2 mat_reduce(const Mat2& A, u32 m);
u64 mat_order(const Mat2& A);

inline Mat2 operator*(const Mat2& A, const Mat2& B) { return mat_mul(A, B); }

// |GL(2, Z/NZ)|
u64 gl2_order(u32 n);

// "a11,a12;a21,a22"
std::string to_text(const Mat2& A);
// "[[a11,a12],[a21,a22]] mod N"
std::string to_json_text(const Mat2& A);
Mat2 parse_text(const std::string& s, u32 level);

// Multiplication of packed keys at a fixed level; no validation, hot path.
struct KeyArith {
    u32 n;
    u64 nn, nnn;
    explicit KeyArith(u32 level) : n(level), nn(u64(level) * level), nnn(nn * level) {}
    u64 mul(u64 x, u64 y) const {
        const u64 x11 = x / nnn, x12 = (x / nn) % n, x21 = (x / n) % n, x22 = x % n;
        const u64 y11 = y / nnn, y12 = (y / nn) % n, y21 = (y / n) % n, y22 = y % n;
        const u64 z11 = (x11 * y11 + x12 * y21) % n;
        const u64 z12 = (x11 * y12 + x12 * y22) % n;
        const u64 z21 = (x21 * y11 + x22 * y21) % n;
        const u64 z22 = (x21 * y12 + x22 * y22) % n;
        return ((z11 * n + z12) * n + z21) * n + z22;
    }
    u64 identity() const { return n == 1 ? 0 : nnn + 1; }
    u64 pow(u64 x, u64 e) const {
        u64 r = identity();
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }
};

}  // namespace cmlab

template <>
struct std::hash<cmlab::Mat2> {
    std::size_t operator()(const cmlab::Mat2& m) const noexcept {
        return std::hash<cmlab::u64>{}(m.key() ^ (cmlab::u64(m.n) << 48));
    }
};
