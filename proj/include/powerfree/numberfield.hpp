#pragma once

#include "powerfree/poly.hpp"

namespace powerfree {

// Q[x]/(q) for an irreducible monic-normalizable q.  Elements store the
// field pointer; rational constants may carry a null field and adopt the
// other operand's field, so Mat<NFElem> templates work unchanged.
struct NumberField {
    QPoly modulus;  // monic
    int degree;

    explicit NumberField(const ZPoly& q) : modulus(q.to_q().monic()), degree(q.deg()) {}
};

struct NFElem {
    const NumberField* field = nullptr;
    QPoly rep;  // deg < field->degree when field set; constant otherwise

    NFElem() = default;
    NFElem(int v) : rep(QPoly::constant(Rat(v))) {}
    NFElem(const Rat& v) : rep(QPoly::constant(v)) {}
    NFElem(const NumberField* f, QPoly r) : field(f), rep(std::move(r)) { reduce(); }

    static NFElem generator(const NumberField* f) {
        return NFElem(f, QPoly::monomial(1));
    }

    void reduce();
    bool is_zero() const { return rep.is_zero(); }
    bool is_rational() const { return rep.deg() <= 0; }

    NFElem operator+(const NFElem& o) const;
    NFElem operator-(const NFElem& o) const;
    NFElem operator*(const NFElem& o) const;
    NFElem operator/(const NFElem& o) const;
    NFElem operator-() const;
    NFElem& operator+=(const NFElem& o) { *this = *this + o; return *this; }
    NFElem& operator-=(const NFElem& o) { *this = *this - o; return *this; }
    NFElem& operator*=(const NFElem& o) { *this = *this * o; return *this; }
    bool operator==(const NFElem& o) const { return rep == o.rep; }

    NFElem inverse() const;

    // embed at a root enclosure of the modulus
    CInterval embed(const CInterval& root) const { return rep.eval(root); }
    std::string str() const { return rep.str("t"); }
};

const NumberField* common_field(const NFElem& a, const NFElem& b);

}  // namespace powerfree
