#include <doctest.h>

#include "powerfree/interval.hpp"

using namespace powerfree;

TEST_CASE("interval arithmetic basics") {
    Interval a(Rat(1), Rat(2)), b(Rat(-3), Rat(5));
    Interval s = a + b;
    CHECK(s.lo == Rat(-2));
    CHECK(s.hi == Rat(7));
    Interval p = a * b;
    CHECK(p.lo == Rat(-6));
    CHECK(p.hi == Rat(10));
    CHECK((a - a).contains(Rat(0)));
    CHECK(b.contains_zero());
    CHECK(!a.contains_zero());
    CHECK(a.mag_lo() == Rat(1));
    CHECK(b.mag_hi() == Rat(5));
    CHECK_THROWS_AS(a / b, std::domain_error);
    Interval q = b / a;
    CHECK(q.contains(Rat(-3)));
    CHECK(q.contains(Rat(5)));
}

TEST_CASE("sqrt bounds bracket the true value") {
    Rat two(2);
    Rat lo = sqrt_lower(two, 64), hi = sqrt_upper(two, 64);
    CHECK(lo * lo <= two);
    CHECK(hi * hi >= two);
    CHECK(hi - lo < Rat(Int(1), Int(1) << 60));
    CHECK(sqrt_lower(Rat(0), 16) == 0);
    CHECK(sqrt_lower(Rat(9, 4), 32) <= Rat(3, 2));
    CHECK(sqrt_upper(Rat(9, 4), 32) >= Rat(3, 2));
}

TEST_CASE("complex interval modulus") {
    CInterval z(Interval(Rat(3)), Interval(Rat(4)));
    CHECK(z.mod_squared().lo == Rat(25));
    CHECK(z.mag_lo() <= Rat(5));
    CHECK(z.mag_hi() >= Rat(5));
    CHECK(z.mag_hi() - z.mag_lo() < Rat(1, 1000));
    CInterval w = z * z.conj();
    CHECK(w.re.contains(Rat(25)));
    CHECK(w.im.contains(Rat(0)));
    CInterval r = z / z;
    CHECK(r.re.contains(Rat(1)));
    CHECK(r.im.contains(Rat(0)));
}

TEST_CASE("dyadic rounding stays close") {
    Rat x(355, 113);
    Rat r = dyadic_round(x, 40);
    Rat d = r - x;
    if (sgn(d) < 0) d = -d;
    CHECK(d <= Rat(Int(1), Int(1) << 40));
}
