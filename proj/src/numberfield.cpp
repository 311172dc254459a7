#include "powerfree/numberfield.hpp"

namespace powerfree {

const NumberField* common_field(const NFElem& a, const NFElem& b) {
    if (a.field && b.field && a.field != b.field)
        throw std::logic_error("number field mismatch");
    return a.field ? a.field : b.field;
}

void NFElem::reduce() {
    if (field && rep.deg() >= field->degree) rep = rep.divmod(field->modulus).second;
}

NFElem NFElem::operator+(const NFElem& o) const {
    return NFElem(common_field(*this, o), rep + o.rep);
}

NFElem NFElem::operator-(const NFElem& o) const {
    return NFElem(common_field(*this, o), rep - o.rep);
}

NFElem NFElem::operator*(const NFElem& o) const {
    return NFElem(common_field(*this, o), rep * o.rep);
}

NFElem NFElem::operator-() const { return NFElem(field, rep * Rat(-1)); }

NFElem NFElem::inverse() const {
    if (is_zero()) throw std::domain_error("number field inverse of 0");
    if (!field || is_rational())
        return NFElem(field, QPoly::constant(Rat(1) / rep.coeff(0)));
    // extended Euclid: rep * s + modulus * t = gcd = const
    QPoly r0 = field->modulus, r1 = rep;
    QPoly s0, s1 = QPoly::constant(Rat(1));
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        QPoly ns = s0 - q * s1;
        r0 = r1; r1 = r;
        s0 = s1; s1 = ns;
    }
    if (r0.deg() != 0) throw std::logic_error("modulus not irreducible (gcd found)");
    return NFElem(field, s0 * (Rat(1) / r0.coeff(0)));
}

NFElem NFElem::operator/(const NFElem& o) const { return *this * o.inverse(); }

}  // namespace powerfree
