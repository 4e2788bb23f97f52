#include "cmlab/divpoly.hpp"

#include <cctype>
#include <stdexcept>

#include "cmlab/errors.hpp"

namespace cmlab {

BivarPoly BivarPoly::constant(const BigInt& c) { return monomial(c, 0, 0); }

BivarPoly BivarPoly::monomial(const BigInt& c, int xdeg, int sdeg) {
    BivarPoly p;
    p.add_term({xdeg, sdeg}, c);
    return p;
}

void BivarPoly::add_term(const Key& k, const BigInt& c) {
    if (c == 0) return;
    auto [it, fresh] = t_.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

BigInt BivarPoly::coeff(int xdeg, int sdeg) const {
    auto it = t_.find({xdeg, sdeg});
    return it == t_.end() ? BigInt(0) : it->second;
}

int BivarPoly::x_degree() const {
    int d = -1;
    for (const auto& [k, c] : t_) d = std::max(d, k.first);
    return d;
}

BivarPoly BivarPoly::x_coeff(int d) const {
    BivarPoly r;
    for (const auto& [k, c] : t_)
        if (k.first == d) r.add_term({0, k.second}, c);
    return r;
}

BigInt BivarPoly::content() const {
    if (t_.empty()) return 0;
    BigInt g = 0;
    for (const auto& [k, c] : t_) g = gcd(g, abs(c));
    // leading term: highest x-degree, then highest s-degree
    Key lead{-1, -1};
    for (const auto& [k, c] : t_) lead = std::max(lead, k);
    return t_.at(lead) < 0 ? BigInt(-g) : g;
}

BivarPoly BivarPoly::primitive_part() const {
    if (t_.empty()) return *this;
    return divide_exact(content());
}

BivarPoly BivarPoly::divide_exact(const BigInt& c) const {
    BivarPoly r;
    for (const auto& [k, v] : t_) {
        if (v % c != 0) throw std::domain_error("inexact integer division of polynomial");
        r.t_.emplace(k, v / c);
    }
    return r;
}

long long BivarPoly::eval_mod(long long x, long long s, long long p) const {
    auto md = [p](BigInt v) {
        v %= p;
        if (v < 0) v += p;
        return v;
    };
    BigInt acc = 0;
    for (const auto& [k, c] : t_) {
        BigInt term = md(c);
        for (int i = 0; i < k.first; ++i) term = md(term * x);
        for (int i = 0; i < k.second; ++i) term = md(term * s);
        acc = md(acc + term);
    }
    return static_cast<long long>(acc);
}

BivarPoly operator+(const BivarPoly& a, const BivarPoly& b) {
    BivarPoly r = a;
    for (const auto& [k, c] : b.t_) r.add_term(k, c);
    return r;
}

BivarPoly operator-(const BivarPoly& a, const BivarPoly& b) {
    BivarPoly r = a;
    for (const auto& [k, c] : b.t_) r.add_term(k, -c);
    return r;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
    BivarPoly r;
    for (const auto& [ka, ca] : a.t_)
        for (const auto& [kb, cb] : b.t_) r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
}

BivarPoly operator*(const BigInt& c, const BivarPoly& a) { return BivarPoly::constant(c) * a; }

std::string BivarPoly::to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [k, c] = *it;
        const bool neg = c < 0;
        const BigInt mag = neg ? BigInt(-c) : c;
        if (out.empty()) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        std::string mono;
        auto app = [&](const char* v, int d) {
            if (d == 0) return;
            if (!mono.empty()) mono += "*";
            mono += v;
            if (d > 1) mono += "^" + std::to_string(d);
        };
        app("s", k.second);
        app("x", k.first);
        if (mono.empty()) out += mag.str();
        else if (mag == 1) out += mono;
        else out += mag.str() + "*" + mono;
    }
    return out;
}

std::pair<BivarPoly, BivarPoly> divmod_monic_x(const BivarPoly& num, const BivarPoly& den) {
    const int dd = den.x_degree();
    if (dd < 0 || !(den.x_coeff(dd) == BivarPoly::constant(1)))
        throw std::domain_error("divisor is not monic in x");
    BivarPoly q, r = num;
    while (r.x_degree() >= dd) {
        const int e = r.x_degree();
        const BivarPoly lead = r.x_coeff(e) * BivarPoly::monomial(1, e - dd, 0);
        q = q + lead;
        r = r - lead * den;
    }
    return {q, r};
}

BivarPoly Param::poly() const { return BivarPoly::monomial(c0, 0, 0) + BivarPoly::monomial(c1, 0, 1); }

Param parse_param(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw UsageError("empty parameter");
    Param p;
    std::size_t i = 0;
    bool seen = false;
    while (i < t.size()) {
        int sign = 1;
        if (t[i] == '+' || t[i] == '-') {
            sign = t[i] == '-' ? -1 : 1;
            ++i;
        } else if (seen) {
            throw UsageError("bad parameter '" + text + "'");
        }
        std::size_t j = i;
        while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) ++j;
        const bool has_num = j > i;
        const long long mag = has_num ? std::stoll(t.substr(i, j - i)) : 1;
        i = j;
        if (i < t.size() && t[i] == '*') ++i;
        if (i < t.size() && t[i] == 's') {
            p.c1 += sign * mag;
            ++i;
        } else {
            if (!has_num) throw UsageError("bad parameter '" + text + "'");
            p.c0 += sign * mag;
        }
        seen = true;
    }
    return p;
}

namespace {

// psi_m = P_m for odd m and y*P_m for even m; y^2 is replaced by F.
struct Recurrence {
    BivarPoly A, B, F;
    std::vector<BivarPoly> P;
    std::vector<bool> have;

    Recurrence(const Param& a, const Param& b) : A(a.poly()), B(b.poly()) {
        const BivarPoly x = BivarPoly::monomial(1, 1, 0);
        F = x * x * x + A * x + B;
    }

    const BivarPoly& get(int m) {
        if (m < int(P.size()) && have[m]) return P[m];
        if (m >= int(P.size())) {
            P.resize(m + 1);
            have.resize(m + 1, false);
        }
        const BivarPoly x = BivarPoly::monomial(1, 1, 0);
        const BivarPoly x2 = x * x, x3 = x2 * x, x4 = x2 * x2, x6 = x3 * x3;
        BivarPoly r;
        if (m == 0) {
        } else if (m == 1) {
            r = BivarPoly::constant(1);
        } else if (m == 2) {
            r = BivarPoly::constant(2);
        } else if (m == 3) {
            r = BigInt(3) * x4 + BigInt(6) * A * x2 + BigInt(12) * B * x - A * A;
        } else if (m == 4) {
            r = BigInt(4) * (x6 + BigInt(5) * A * x4 + BigInt(20) * B * x3 - BigInt(5) * A * A * x2 -
                             BigInt(4) * A * B * x - BigInt(8) * B * B - A * A * A);
        } else if (m % 2 == 1) {
            const int k = (m - 1) / 2;
            BivarPoly t1 = get(k + 2) * cube(get(k));
            BivarPoly t2 = get(k - 1) * cube(get(k + 1));
            if (k % 2 == 0) t1 = F * F * t1;
            else t2 = F * F * t2;
            r = t1 - t2;
        } else {
            const int k = m / 2;
            const BivarPoly inner = get(k + 2) * get(k - 1) * get(k - 1) - get(k - 2) * get(k + 1) * get(k + 1);
            r = (get(k) * inner).divide_exact(2);
        }
        P[m] = std::move(r);
        have[m] = true;
        return P[m];
    }

    static BivarPoly cube(const BivarPoly& p) { return p * p * p; }
};

}  // namespace

BivarPoly division_poly(const Param& A, const Param& B, int m) {
    if (m < 0) throw UsageError("division polynomial index must be >= 0");
    Recurrence rec(A, B);
    const BivarPoly pm = rec.get(m);
    if (m % 2 == 1 || m == 0) return pm;
    return (pm * rec.F).primitive_part();
}

DivpolyReport verify_j0_quartic() {
    DivpolyReport rep;
    const Param zero{0, 0}, s{0, 1};
    const BivarPoly p2 = division_poly(zero, s, 2);
    const BivarPoly p4 = division_poly(zero, s, 4);
    const BivarPoly x3 = BivarPoly::monomial(1, 3, 0);
    const BivarPoly F = x3 + BivarPoly::monomial(1, 0, 1);
    const BivarPoly expected = BivarPoly::monomial(1, 6, 0) + BivarPoly::monomial(20, 3, 1) + BivarPoly::monomial(-8, 0, 2);

    auto add = [&](std::string name, bool ok, std::string detail) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };
    add("psi2", p2 == F, p2.to_string());

    // ψ_2 is monic in x by construction of the reduced form
    BivarPoly p2m = p2.divide_exact(p2.content());
    auto [q, r] = divmod_monic_x(p4, p2m);
    bool exact = r.is_zero();
    BivarPoly monic = q;
    if (!q.is_zero()) {
        const BivarPoly lead = q.x_coeff(q.x_degree());
        if (lead.terms().size() == 1 && lead.terms().begin()->first.second == 0)
            monic = q.divide_exact(lead.terms().begin()->second);
        else
            exact = false;
    }
    rep.quotient = monic.to_string();
    add("quotient-exact", exact, "remainder " + r.to_string());
    add("quotient-monic", monic == expected, monic.to_string());

    // u = x^3
    bool cubic_only = true;
    for (const auto& [k, c] : monic.terms()) cubic_only = cubic_only && k.first % 3 == 0;
    const BivarPoly c1 = monic.x_coeff(3), c0 = monic.x_coeff(0);
    const BivarPoly sum = BigInt(-1) * c1, prod = c0;
    add("resolvent-in-x3", cubic_only, "u = x^3");
    add("resolvent-sum", cubic_only && sum == BivarPoly::monomial(-20, 0, 1), sum.to_string());
    add("resolvent-product", cubic_only && prod == BivarPoly::monomial(-8, 0, 2), prod.to_string());

    // (-10 + 6 r)(-10 - 6 r) with r^2 = 3, coordinates (rational, sqrt3)
    const long long ra = -10, rb = 6;
    const long long root_sum = 2 * ra;
    const long long root_prod = ra * ra - 3 * rb * rb;
    add("roots-sum", root_sum == -20, std::to_string(root_sum));
    add("roots-product", root_prod == -8, std::to_string(root_prod));

    rep.pass = true;
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
}

}  // namespace cmlab
