#include "powerfree/roots.hpp"

#include <algorithm>
#include <complex>
#include <stdexcept>

namespace powerfree {

namespace {

// exact complex rational
struct QI {
    Rat re, im;
    QI() : re(0), im(0) {}
    QI(const Rat& r, const Rat& i) : re(r), im(i) {}
    QI operator+(const QI& o) const { return QI(re + o.re, im + o.im); }
    QI operator-(const QI& o) const { return QI(re - o.re, im - o.im); }
    QI operator*(const QI& o) const {
        return QI(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    QI operator/(const QI& o) const {
        Rat d = o.re * o.re + o.im * o.im;
        if (sgn(d) == 0) throw std::domain_error("QI division by zero");
        return QI((re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d);
    }
    Rat mod2() const { return re * re + im * im; }
};

std::vector<QI> taylor_shift(const ZPoly& q, const QI& c) {
    int n = q.deg();
    std::vector<QI> b(n + 1);
    for (int i = 0; i <= n; ++i) b[i] = QI(Rat(q.c[i]), Rat(0));
    for (int j = 0; j <= n; ++j)
        for (int i = n - 1; i >= j; --i) b[i] = b[i] + c * b[i + 1];
    return b;
}

// Pellet test with j = 1: exactly one root in the closed disk |z - c| <= r
// iff |a_1| r > sum_{k != 1} |a_k| r^k, certified with rational sqrt bounds.
bool pellet_one_root(const std::vector<QI>& a, const Rat& r) {
    if (a.size() < 2) return false;
    Rat lhs = sqrt_lower(a[1].mod2(), 64) * r;
    Rat rhs(0);
    Rat rk(1);
    for (size_t k = 0; k < a.size(); ++k) {
        if (k != 1) rhs += sqrt_upper(a[k].mod2(), 64) * rk;
        rk *= r;
    }
    return lhs > rhs;
}

QI eval_qi(const ZPoly& q, const QI& z) {
    QI v;
    for (size_t i = q.c.size(); i-- > 0;) v = v * z + QI(Rat(q.c[i]), Rat(0));
    return v;
}

QI dyadic_round_qi(const QI& z, unsigned bits) {
    return QI(dyadic_round(z.re, bits), dyadic_round(z.im, bits));
}

// Try to certify a disk around approximation z with 2r <= wanted width (or
// any radius if wanted is 0); improves the center by exact Newton steps.
bool certify_disk(const ZPoly& q, QI c, const Rat& want_radius, unsigned bits, Rat& out_r,
                  QI& out_c) {
    ZPoly dq = to_z(q.to_q().derivative());
    for (int attempt = 0; attempt < 60; ++attempt) {
        std::vector<QI> a = taylor_shift(q, c);
        Rat a1 = a[1].mod2();
        if (sgn(a1) > 0) {
            // candidate radius ~ 2 |a0/a1|
            Rat ratio2 = a[0].mod2() / a1;
            Rat r = sqrt_upper(ratio2, 64) * 2;
            if (sgn(r) == 0) r = Rat(Int(1), Int(1) << bits);
            for (int grow = 0; grow < 8; ++grow) {
                if (pellet_one_root(a, r)) {
                    if (sgn(want_radius) == 0 || r <= want_radius) {
                        // keep the disk strictly off the real axis
                        if (sgn(c.im) == 0 || ::abs(c.im) > r) {
                            out_r = r;
                            out_c = c;
                            return true;
                        }
                    }
                    break;  // certified but too big / touches axis: Newton-shrink
                }
                r *= 2;
            }
        }
        // Newton step with dyadic rounding to keep numbers small
        QI num = eval_qi(q, c), den = eval_qi(dq, c);
        if (sgn(den.mod2()) == 0) return false;
        c = dyadic_round_qi(c - num / den, bits);
        bits = std::min(bits * 2, 4096u);
    }
    return false;
}

}  // namespace

RootEnclosure RootEnclosure::conjugate() const {
    RootEnclosure c = *this;
    c.im = -im;
    c.ci = -ci;
    return c;
}

std::vector<RootEnclosure> isolate_all_roots(const ZPoly& q, const Rat& width) {
    int n = q.deg();
    std::vector<RootEnclosure> out;
    if (n <= 0) return out;

    // real roots via Sturm
    std::vector<Interval> real = isolate_real_roots(q, width);
    for (const Interval& iv : real) {
        RootEnclosure r;
        r.real = true;
        r.bracket = iv;
        r.exact = iv.is_point();
        r.re = iv;
        r.im = Interval(Rat(0));
        out.push_back(r);
    }
    int pairs = (n - int(real.size())) / 2;
    if (2 * pairs + int(real.size()) != n)
        throw std::logic_error("root count mismatch (polynomial not squarefree?)");
    if (pairs == 0) return out;

    // numeric approximations (Durand-Kerner)
    std::vector<std::complex<double>> z(n);
    {
        std::vector<std::complex<double>> cf(n + 1);
        for (int i = 0; i <= n; ++i) cf[i] = q.c[i].get_d();
        double bound = 1;
        for (int i = 0; i < n; ++i)
            bound = std::max(bound, 1 + std::abs(cf[i]) / std::abs(cf[n]));
        std::complex<double> seed(0.4, 0.9);
        std::complex<double> acc(1, 0);
        for (int i = 0; i < n; ++i) {
            acc *= seed;
            z[i] = acc * bound;
        }
        for (int it = 0; it < 2000; ++it) {
            double delta = 0;
            for (int i = 0; i < n; ++i) {
                std::complex<double> num = cf[n];
                for (int k = n - 1; k >= 0; --k) num = num * z[i] + cf[k];
                std::complex<double> den = cf[n];
                for (int j = 0; j < n; ++j)
                    if (j != i) den *= (z[i] - z[j]);
                std::complex<double> step = num / den;
                z[i] -= step;
                delta = std::max(delta, std::abs(step));
            }
            if (delta < 1e-14) break;
        }
    }
    std::vector<std::complex<double>> upper;
    for (auto& zi : z)
        if (zi.imag() > 1e-9) upper.push_back(zi);
    if (int(upper.size()) != pairs)
        throw std::runtime_error("complex root approximation failed to separate pairs");

    std::sort(upper.begin(), upper.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    std::vector<RootEnclosure> complex_roots;
    for (auto& zi : upper) {
        QI c(dyadic_round(Rat(zi.real()), 48), dyadic_round(Rat(zi.imag()), 48));
        Rat r;
        QI cc;
        if (!certify_disk(q, c, width / 2, 48, r, cc))
            throw std::runtime_error("could not certify complex root disk");
        RootEnclosure enc;
        enc.real = false;
        enc.cr = cc.re;
        enc.ci = cc.im;
        enc.radius = r;
        enc.re = Interval(cc.re - r, cc.re + r);
        enc.im = Interval(cc.im - r, cc.im + r);
        complex_roots.push_back(enc);
    }

    // disjointness: disks pairwise, and vs conjugates (axis-avoidance already
    // enforced); shrink on demand
    for (int rounds = 0; rounds < 16; ++rounds) {
        bool ok = true;
        for (size_t i = 0; i < complex_roots.size() && ok; ++i)
            for (size_t j = i + 1; j < complex_roots.size() && ok; ++j) {
                const auto& A = complex_roots[i];
                const auto& B = complex_roots[j];
                Rat d2 = (A.cr - B.cr) * (A.cr - B.cr) + (A.ci - B.ci) * (A.ci - B.ci);
                Rat rr = (A.radius + B.radius) * (A.radius + B.radius);
                if (d2 <= rr) ok = false;
            }
        if (ok) break;
        for (auto& enc : complex_roots) {
            Rat target = enc.radius / 4;
            refine_root(q, enc, target * 2);
        }
        if (rounds == 15) throw std::runtime_error("complex root disks failed to separate");
    }

    for (const auto& enc : complex_roots) {
        out.push_back(enc);
        out.push_back(enc.conjugate());
    }
    return out;
}

void refine_root(const ZPoly& q, RootEnclosure& r, const Rat& w) {
    if (r.exact) return;
    if (r.real) {
        r.bracket = refine_real_root(q, r.bracket, w);
        r.re = r.bracket;
        r.exact = r.bracket.is_point();
        return;
    }
    if (r.radius * 2 <= w) return;
    QI c(r.cr, r.ci);
    Rat rad;
    QI cc;
    if (!certify_disk(q, c, w / 2, 96, rad, cc))
        throw std::runtime_error("complex root refinement failed");
    r.cr = cc.re;
    r.ci = cc.im;
    r.radius = rad;
    r.re = Interval(cc.re - rad, cc.re + rad);
    r.im = Interval(cc.im - rad, cc.im + rad);
}

}  // namespace powerfree
