#pragma once
// Division polynomials of y^2 = x^3 + Ax + B over Z[s], A and B of degree <= 1 in s.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cmlab {

using BigInt = boost::multiprecision::cpp_int;

class BivarPoly {
public:
    using Key = std::pair<int, int>;  // (x-degree, s-degree)

    BivarPoly() = default;
    static BivarPoly constant(const BigInt& c);
    static BivarPoly monomial(const BigInt& c, int xdeg, int sdeg);

    const std::map<Key, BigInt>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    BigInt coeff(int xdeg, int sdeg) const;
    int x_degree() const;  // -1 for zero
    // Coefficient of x^d as a polynomial in s only.
    BivarPoly x_coeff(int d) const;
    BigInt content() const;  // gcd of coefficients, sign of the leading term
    BivarPoly primitive_part() const;
    BivarPoly divide_exact(const BigInt& c) const;  // throws if not exact
    long long eval_mod(long long x, long long s, long long p) const;  // value in [0, p)

    friend BivarPoly operator+(const BivarPoly& a, const BivarPoly& b);
    friend BivarPoly operator-(const BivarPoly& a, const BivarPoly& b);
    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
    friend BivarPoly operator*(const BigInt& c, const BivarPoly& a);
    friend bool operator==(const BivarPoly&, const BivarPoly&) = default;

    std::string to_string() const;

private:
    void add_term(const Key& k, const BigInt& c);
    std::map<Key, BigInt> t_;
};

// Divide by a divisor that is monic in x; returns {quotient, remainder}.
std::pair<BivarPoly, BivarPoly> divmod_monic_x(const BivarPoly& num, const BivarPoly& den);

// c0 + c1*s.
struct Param {
    long long c0 = 0;
    long long c1 = 0;
    BivarPoly poly() const;
    bool operator==(const Param&) const = default;
};
Param parse_param(const std::string& text);  // "0", "s", "-3", "2s", "1-2s", "-s"

// The reduced x-polynomial: psi_m for odd m; for even m, the primitive part of (psi_m / y) * (x^3+Ax+B).
BivarPoly division_poly(const Param& A, const Param& B, int m);

struct DivpolyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct DivpolyReport {
    bool pass = false;
    std::string quotient;
    std::vector<DivpolyCheck> checks;
};

DivpolyReport verify_j0_quartic();

}  // namespace cmlab
