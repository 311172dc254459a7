#pragma once

#include <string>
#include <vector>

#include "powerfree/matrix.hpp"

namespace powerfree {

// Dense polynomial over Q; c[i] is the coefficient of x^i.  Normalized: no
// trailing zero coefficients, so the zero polynomial has empty c.
struct QPoly {
    std::vector<Rat> c;

    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { normalize(); }
    static QPoly constant(const Rat& x) { return QPoly(std::vector<Rat>{x}); }
    static QPoly monomial(int d, const Rat& x = Rat(1));

    void normalize();
    int deg() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    Rat coeff(int i) const { return i >= 0 && i < int(c.size()) ? c[i] : Rat(0); }
    Rat lead() const { return c.empty() ? Rat(0) : c.back(); }

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator*(const Rat& s) const;
    bool operator==(const QPoly& o) const { return c == o.c; }

    // division with remainder; divisor must be nonzero
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const;
    QPoly derivative() const;
    Rat eval(const Rat& x) const;
    Interval eval(const Interval& x) const;
    CInterval eval(const CInterval& x) const;
    QPoly monic() const;
    std::string str(const std::string& var = "x") const;
};

QPoly gcd(const QPoly& a, const QPoly& b);  // monic gcd

// Integer polynomial; same conventions.
struct ZPoly {
    std::vector<Int> c;

    ZPoly() = default;
    explicit ZPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { normalize(); }

    void normalize();
    int deg() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    Int coeff(int i) const { return i >= 0 && i < int(c.size()) ? c[i] : Int(0); }
    Int lead() const { return c.empty() ? Int(0) : c.back(); }
    bool operator==(const ZPoly& o) const { return c == o.c; }

    ZPoly operator*(const ZPoly& o) const;
    ZPoly derivative() const;
    Int content() const;
    ZPoly primitive_part() const;
    QPoly to_q() const;
    Rat eval(const Rat& x) const;
    Interval eval(const Interval& x) const;
    std::string str(const std::string& var = "x") const;
};

ZPoly to_z(const QPoly& p);  // clears denominators, primitive, positive lead

// Characteristic polynomial det(xI - M), monic, exact (Faddeev-LeVerrier).
ZPoly char_poly(const IMat& M);

// Evaluate a polynomial at a matrix (Cayley-Hamilton checks, q(M) powers).
QMat eval_at(const QPoly& p, const QMat& M);

// Squarefree decomposition: returns list of (factor, multiplicity) with
// factors squarefree, pairwise coprime, product^mult = input (up to sign).
std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& f);

// Factorization into irreducible (primitive, positive-leading) factors with
// multiplicities.  Rational roots first, then Zassenhaus for the rest.
std::vector<std::pair<ZPoly, int>> factor_poly(const ZPoly& f);

// Sturm-based real root machinery for a squarefree polynomial.
struct SturmChain {
    std::vector<QPoly> chain;
    explicit SturmChain(const ZPoly& f);
    int variations(const Rat& x) const;
    // number of real roots in (a, b]
    int count(const Rat& a, const Rat& b) const;
};

// Isolating intervals (lo, hi] for all real roots, refined to width <= w.
std::vector<Interval> isolate_real_roots(const ZPoly& f, const Rat& w);
// Halve an isolating bracket until width <= w (bracket must contain exactly
// one root and have sign change f(lo) * f(hi) < 0, or be exact).
Interval refine_real_root(const ZPoly& f, Interval bracket, const Rat& w);

}  // namespace powerfree
