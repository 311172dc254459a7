#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace powerfree {

using Int = mpz_class;
using Rat = mpq_class;

// Exact rational interval [lo, hi].  Arithmetic is exact, so there is no
// rounding step; widths only grow through genuine dependency loss.
struct Interval {
    Rat lo, hi;

    Interval() : lo(0), hi(0) {}
    Interval(const Rat& x) : lo(x), hi(x) {}
    Interval(const Rat& l, const Rat& h) : lo(l), hi(h) {
        if (lo > hi) throw std::logic_error("interval: lo > hi");
    }
    static Interval exact(const Rat& x) { return Interval(x); }

    bool is_point() const { return lo == hi; }
    Rat width() const { return hi - lo; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    bool certainly_positive() const { return sgn(lo) > 0; }
    bool certainly_negative() const { return sgn(hi) < 0; }
    bool certainly_nonzero() const { return certainly_positive() || certainly_negative(); }

    // |x| as an interval
    Interval abs() const;
    // lower/upper bound on |x|
    Rat mag_lo() const;
    Rat mag_hi() const;

    Interval operator-() const { return Interval(-hi, -lo); }
    Interval operator+(const Interval& o) const { return Interval(lo + o.lo, hi + o.hi); }
    Interval operator-(const Interval& o) const { return Interval(lo - o.hi, hi - o.lo); }
    Interval operator*(const Interval& o) const;
    // throws if divisor interval contains zero
    Interval operator/(const Interval& o) const;
    Interval& operator+=(const Interval& o) { *this = *this + o; return *this; }
    Interval& operator-=(const Interval& o) { *this = *this - o; return *this; }
    Interval& operator*=(const Interval& o) { *this = *this * o; return *this; }

    Interval hull(const Interval& o) const {
        return Interval(lo <= o.lo ? lo : o.lo, hi >= o.hi ? hi : o.hi);
    }
    std::string str() const;
};

// Complex interval: rectangle re x im.
struct CInterval {
    Interval re, im;

    CInterval() = default;
    CInterval(const Interval& r) : re(r), im(Rat(0)) {}
    CInterval(const Interval& r, const Interval& i) : re(r), im(i) {}
    static CInterval exact(const Rat& r, const Rat& i = Rat(0)) {
        return CInterval(Interval(r), Interval(i));
    }

    bool is_real_point() const { return re.is_point() && im.is_point() && sgn(im.lo) == 0; }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool certainly_nonzero() const { return !contains_zero(); }

    CInterval conj() const { return CInterval(re, -im); }
    CInterval operator-() const { return CInterval(-re, -im); }
    CInterval operator+(const CInterval& o) const { return CInterval(re + o.re, im + o.im); }
    CInterval operator-(const CInterval& o) const { return CInterval(re - o.re, im - o.im); }
    CInterval operator*(const CInterval& o) const {
        return CInterval(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    CInterval operator/(const CInterval& o) const;
    CInterval& operator+=(const CInterval& o) { *this = *this + o; return *this; }
    CInterval& operator-=(const CInterval& o) { *this = *this - o; return *this; }
    CInterval& operator*=(const CInterval& o) { *this = *this * o; return *this; }

    Interval mod_squared() const { return re * re + im * im; }
    // certified bounds on the modulus, with `bits` of sqrt precision
    Rat mag_lo(unsigned bits = 64) const;
    Rat mag_hi(unsigned bits = 64) const;
    // interval containing |z|
    Interval mag(unsigned bits = 64) const { return Interval(mag_lo(bits), mag_hi(bits)); }

    std::string str() const;
};

// Certified rational bounds on sqrt(q), q >= 0.
Rat sqrt_lower(const Rat& q, unsigned bits = 64);
Rat sqrt_upper(const Rat& q, unsigned bits = 64);

// Round a rational to a dyadic with ~bits significant bits (used to keep
// interval endpoints from blowing up; rounding is outward-safe only when
// used via round_outward).
Rat dyadic_round(const Rat& x, unsigned bits);
Interval round_outward(const Interval& x, unsigned bits);
CInterval round_outward(const CInterval& x, unsigned bits);

double to_double(const Rat& x);

}  // namespace powerfree
