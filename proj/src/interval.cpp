#include "powerfree/interval.hpp"

#include <algorithm>
#include <sstream>

namespace powerfree {

Interval Interval::abs() const {
    if (sgn(lo) >= 0) return *this;
    if (sgn(hi) <= 0) return Interval(-hi, -lo);
    return Interval(Rat(0), std::max(Rat(-lo), hi));
}

Rat Interval::mag_lo() const {
    if (contains_zero()) return Rat(0);
    return sgn(lo) > 0 ? lo : Rat(-hi);
}

Rat Interval::mag_hi() const { return std::max(Rat(-lo), hi); }

Interval Interval::operator*(const Interval& o) const {
    Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return Interval(std::min(std::min(a, b), std::min(c, d)),
                    std::max(std::max(a, b), std::max(c, d)));
}

Interval Interval::operator/(const Interval& o) const {
    if (o.contains_zero()) throw std::domain_error("interval division by interval containing 0");
    Rat a = lo / o.lo, b = lo / o.hi, c = hi / o.lo, d = hi / o.hi;
    return Interval(std::min(std::min(a, b), std::min(c, d)),
                    std::max(std::max(a, b), std::max(c, d)));
}

CInterval CInterval::operator/(const CInterval& o) const {
    Interval den = o.mod_squared();
    if (den.contains_zero()) throw std::domain_error("complex interval division by 0");
    CInterval num = *this * o.conj();
    return CInterval(num.re / den, num.im / den);
}

Rat CInterval::mag_lo(unsigned bits) const {
    Rat m2 = mod_squared().lo;
    if (sgn(m2) <= 0) return Rat(0);
    return sqrt_lower(m2, bits);
}

Rat CInterval::mag_hi(unsigned bits) const { return sqrt_upper(mod_squared().hi, bits); }

std::string Interval::str() const {
    std::ostringstream os;
    if (is_point()) os << lo.get_str();
    else os << "[" << lo.get_str() << ", " << hi.get_str() << "]";
    return os.str();
}

std::string CInterval::str() const {
    std::ostringstream os;
    os << re.str();
    if (!(im.is_point() && sgn(im.lo) == 0)) os << " + " << im.str() << "*i";
    return os.str();
}

// sqrt(n/d) bracketed by scaled integer square roots:
//   isqrt(n*d*s^2) / (d*s) <= sqrt(n/d) <= (isqrt(n*d*s^2) + 1) / (d*s)
Rat sqrt_lower(const Rat& q, unsigned bits) {
    if (sgn(q) < 0) throw std::domain_error("sqrt of negative rational");
    if (sgn(q) == 0) return Rat(0);
    Int s = Int(1) << bits;
    Int scaled = q.get_num() * q.get_den() * s * s;
    Int r;
    mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
    Rat out(r, q.get_den() * s);
    out.canonicalize();
    return out;
}

Rat sqrt_upper(const Rat& q, unsigned bits) {
    if (sgn(q) < 0) throw std::domain_error("sqrt of negative rational");
    if (sgn(q) == 0) return Rat(0);
    Int s = Int(1) << bits;
    Int scaled = q.get_num() * q.get_den() * s * s;
    Int r;
    mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
    Rat out(r + 1, q.get_den() * s);
    out.canonicalize();
    return out;
}

Rat dyadic_round(const Rat& x, unsigned bits) {
    if (sgn(x) == 0) return Rat(0);
    Int s = Int(1) << bits;
    Rat scaled = x * Rat(s);
    Int num = scaled.get_num(), den = scaled.get_den();
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (Rat(r * 2) >= Rat(den)) q += 1;
    Rat out(q, s);
    out.canonicalize();
    return out;
}

Interval round_outward(const Interval& x, unsigned bits) {
    Rat eps(Int(1), Int(1) << bits);
    return Interval(dyadic_round(x.lo, bits + 2) - eps, dyadic_round(x.hi, bits + 2) + eps);
}

CInterval round_outward(const CInterval& x, unsigned bits) {
    return CInterval(round_outward(x.re, bits), round_outward(x.im, bits));
}

double to_double(const Rat& x) { return x.get_d(); }

}  // namespace powerfree
