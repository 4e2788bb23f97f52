#include "cmlab/modmat.hpp"

#include <numeric>
#include <sstream>

namespace cmlab {

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

bool is_unit(i64 a, u32 n) { return n == 1 || std::gcd(u64(rmod(a, n)), u64(n)) == 1; }

u32 inv_mod(i64 a, u32 n) {
    i64 r0 = n, r1 = rmod(a, n), s0 = 0, s1 = 1;
    while (r1 != 0) {
        i64 q = r0 / r1;
        i64 t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) throw NotAUnit(std::to_string(rmod(a, n)) + " mod " + std::to_string(n));
    return rmod(s0, n);
}

u64 pow_mod(u64 base, u64 e, u64 n) {
    unsigned __int128 r = 1 % n, b = base % n;
    while (e) {
        if (e & 1) r = r * b % n;
        b = b * b % n;
        e >>= 1;
    }
    return u64(r);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<std::pair<u64, int>> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) n /= d, ++e;
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::pair<u64, int> prime_power(u64 n) {
    auto f = factorize(n);
    if (f.size() != 1) return {0, 0};
    return f[0];
}

u64 ipow(u64 b, int e) {
    u64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

int valuation(i64 a, u64 p, int cap) {
    if (a == 0) return cap;
    int v = 0;
    u64 x = a < 0 ? u64(-a) : u64(a);
    while (x % p == 0 && v < cap) x /= p, ++v;
    return v;
}

Residue::Residue(i64 value, u32 level) : v_(0), n_(level) {
    if (level < 1 || level > kMaxLevel) throw TooLarge("level " + std::to_string(level));
    v_ = rmod(value, level);
}

bool Residue::is_unit() const { return cmlab::is_unit(v_, n_); }

static void same_level(u32 a, u32 b) {
    if (a != b) throw LevelMismatch(std::to_string(a) + " vs " + std::to_string(b));
}

Residue operator+(Residue a, Residue b) {
    same_level(a.n_, b.n_);
    return Residue(i64(a.v_) + b.v_, a.n_);
}
Residue operator-(Residue a, Residue b) {
    same_level(a.n_, b.n_);
    return Residue(i64(a.v_) - b.v_, a.n_);
}
Residue operator*(Residue a, Residue b) {
    same_level(a.n_, b.n_);
    return Residue(i64(u64(a.v_) * b.v_ % a.n_), a.n_);
}

Residue res_inv(Residue r) { return Residue(inv_mod(r.value(), r.level()), r.level()); }

Mat2::Mat2(i64 x11, i64 x12, i64 x21, i64 x22, u32 level) : n(level) {
    if (level < 2 || level > kMaxLevel) throw TooLarge("matrix level " + std::to_string(level));
    a11 = rmod(x11, level);
    a12 = rmod(x12, level);
    a21 = rmod(x21, level);
    a22 = rmod(x22, level);
}

Mat2 Mat2::from_key(u64 key, u32 level) {
    Mat2 m;
    m.n = level;
    m.a22 = u32(key % level);
    key /= level;
    m.a21 = u32(key % level);
    key /= level;
    m.a12 = u32(key % level);
    key /= level;
    m.a11 = u32(key);
    return m;
}

u32 Mat2::det() const { return rmod(i64(u64(a11) * a22 % n) - i64(u64(a12) * a21 % n), n); }
u32 Mat2::trace() const { return u32((u64(a11) + a22) % n); }
bool Mat2::invertible() const { return is_unit(det(), n); }
u64 Mat2::key() const { return ((u64(a11) * n + a12) * n + a21) * n + a22; }

std::strong_ordering operator<=>(const Mat2& x, const Mat2& y) {
    if (auto c = x.n <=> y.n; c != 0) return c;
    return x.key() <=> y.key();
}

Mat2 mat_mul(const Mat2& A, const Mat2& B) {
    same_level(A.n, B.n);
    const u64 n = A.n;
    Mat2 C;
    C.n = A.n;
    C.a11 = u32((u64(A.a11) * B.a11 + u64(A.a12) * B.a21) % n);
    C.a12 = u32((u64(A.a11) * B.a12 + u64(A.a12) * B.a22) % n);
    C.a21 = u32((u64(A.a21) * B.a11 + u64(A.a22) * B.a21) % n);
    C.a22 = u32((u64(A.a21) * B.a12 + u64(A.a22) * B.a22) % n);
    return C;
}

Mat2 mat_inv(const Mat2& A) {
    const u32 d = A.det();
    if (!is_unit(d, A.n)) throw Singular(to_text(A) + " mod " + std::to_string(A.n));
    const u64 di = inv_mod(d, A.n);
    const u64 n = A.n;
    Mat2 R;
    R.n = A.n;
    R.a11 = u32(A.a22 * di % n);
    R.a12 = u32((n - A.a12) % n * di % n);
    R.a21 = u32((n - A.a21) % n * di % n);
    R.a22 = u32(A.a11 * di % n);
    return R;
}

Mat2 mat_pow(const Mat2& A, u64 k) {
    Mat2 r = Mat2::identity(A.n), b = A;
    while (k) {
        if (k & 1) r = mat_mul(r, b);
        b = mat_mul(b, b);
        k >>= 1;
    }
    return r;
}

Mat2 mat_neg(const Mat2& A) { return Mat2(-i64(A.a11), -i64(A.a12), -i64(A.a21), -i64(A.a22), A.n); }

Mat2 mat_reduce(const Mat2& A, u32 m) {
    if (m < 1 || A.n % m != 0)
        throw NotDivisor(std::to_string(m) + " does not divide " + std::to_string(A.n));
    if (m == 1) throw NotDivisor("level 1");
    return Mat2(A.a11 % m, A.a12 % m, A.a21 % m, A.a22 % m, m);
}

u64 gl2_order(u32 n) {
    // N^4 prod (1 - 1/p)(1 - 1/p^2) = prod p^{4(e-1)} (p^2-1)(p^2-p)
    u64 r = 1;
    for (auto [p, e] : factorize(n)) r *= ipow(p, 4 * (e - 1)) * (p * p - 1) * (p * p - p);
    return r;
}

u64 mat_order(const Mat2& A) {
    if (!A.invertible()) throw Singular(to_text(A));
    // The order divides |GL(2, Z/N)|; strip prime factors.
    u64 e = gl2_order(A.n);
    for (auto [p, k] : factorize(e)) {
        (void)k;
        while (e % p == 0 && mat_pow(A, e / p).is_identity()) e /= p;
    }
    return e;
}

std::string to_text(const Mat2& A) {
    std::ostringstream os;
    os << A.a11 << ',' << A.a12 << ';' << A.a21 << ',' << A.a22;
    return os.str();
}

std::string to_json_text(const Mat2& A) {
    std::ostringstream os;
    os << "[[" << A.a11 << ',' << A.a12 << "],[" << A.a21 << ',' << A.a22 << "]] mod " << A.n;
    return os.str();
}

Mat2 parse_text(const std::string& s, u32 level) {
    i64 v[4];
    char sep[3];
    std::istringstream is(s);
    if (!(is >> v[0] >> sep[0] >> v[1] >> sep[1] >> v[2] >> sep[2] >> v[3]) || sep[0] != ',' ||
        sep[1] != ';' || sep[2] != ',')
        throw UsageError("cannot parse matrix '" + s + "'");
    return Mat2(v[0], v[1], v[2], v[3], level);
}

}  // namespace cmlab
