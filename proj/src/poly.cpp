#include "powerfree/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace powerfree {

// ---------------------------------------------------------------- QPoly

QPoly QPoly::monomial(int d, const Rat& x) {
    std::vector<Rat> c(d + 1, Rat(0));
    c[d] = x;
    return QPoly(std::move(c));
}

void QPoly::normalize() {
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rat> out(std::max(c.size(), o.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) out[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) out[i] += o.c[i];
    return QPoly(std::move(out));
}

QPoly QPoly::operator-(const QPoly& o) const {
    std::vector<Rat> out(std::max(c.size(), o.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) out[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) out[i] -= o.c[i];
    return QPoly(std::move(out));
}

QPoly QPoly::operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero()) return QPoly();
    std::vector<Rat> out(c.size() + o.c.size() - 1, Rat(0));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) out[i + j] += c[i] * o.c[j];
    return QPoly(std::move(out));
}

QPoly QPoly::operator*(const Rat& s) const {
    std::vector<Rat> out = c;
    for (auto& x : out) x *= s;
    return QPoly(std::move(out));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
    if (d.is_zero()) throw std::domain_error("poly division by zero");
    QPoly r = *this;
    std::vector<Rat> q(std::max(0, deg() - d.deg() + 1), Rat(0));
    while (!r.is_zero() && r.deg() >= d.deg()) {
        Rat f = r.lead() / d.lead();
        int shift = r.deg() - d.deg();
        q[shift] = f;
        for (int i = 0; i <= d.deg(); ++i) r.c[i + shift] -= f * d.c[i];
        r.normalize();
    }
    return {QPoly(std::move(q)), r};
}

QPoly QPoly::derivative() const {
    if (c.size() <= 1) return QPoly();
    std::vector<Rat> out(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) out[i - 1] = c[i] * Rat(Int(i));
    return QPoly(std::move(out));
}

Rat QPoly::eval(const Rat& x) const {
    Rat v(0);
    for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

Interval QPoly::eval(const Interval& x) const {
    Interval v;
    for (size_t i = c.size(); i-- > 0;) v = v * x + Interval(c[i]);
    return v;
}

CInterval QPoly::eval(const CInterval& x) const {
    CInterval v;
    for (size_t i = c.size(); i-- > 0;) v = v * x + CInterval::exact(c[i]);
    return v;
}

QPoly QPoly::monic() const {
    if (is_zero()) return *this;
    return *this * (Rat(1) / lead());
}

std::string QPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(); i >= 0; --i) {
        if (sgn(c[i]) == 0) continue;
        Rat k = c[i];
        if (!first) os << (sgn(k) > 0 ? " + " : " - ");
        else if (sgn(k) < 0) os << "-";
        first = false;
        Rat ak = ::abs(k);
        if (i == 0 || ak != 1) os << ak.get_str();
        if (i > 0) {
            if (ak != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    while (!y.is_zero()) {
        QPoly r = x.divmod(y).second;
        x = y;
        y = r;
    }
    return x.monic();
}

// ---------------------------------------------------------------- ZPoly

void ZPoly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
    if (is_zero() || o.is_zero()) return ZPoly();
    std::vector<Int> out(c.size() + o.c.size() - 1, Int(0));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) out[i + j] += c[i] * o.c[j];
    return ZPoly(std::move(out));
}

ZPoly ZPoly::derivative() const {
    if (c.size() <= 1) return ZPoly();
    std::vector<Int> out(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) out[i - 1] = c[i] * Int(i);
    return ZPoly(std::move(out));
}

Int ZPoly::content() const {
    Int g(0);
    for (const Int& x : c) {
        Int ax = ::abs(x);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ax.get_mpz_t());
    }
    return g;
}

ZPoly ZPoly::primitive_part() const {
    if (is_zero()) return *this;
    Int g = content();
    if (lead() < 0) g = -g;
    std::vector<Int> out = c;
    for (auto& x : out) x /= g;
    return ZPoly(std::move(out));
}

QPoly ZPoly::to_q() const {
    std::vector<Rat> out(c.size());
    for (size_t i = 0; i < c.size(); ++i) out[i] = Rat(c[i]);
    return QPoly(std::move(out));
}

Rat ZPoly::eval(const Rat& x) const {
    Rat v(0);
    for (size_t i = c.size(); i-- > 0;) v = v * x + Rat(c[i]);
    return v;
}

Interval ZPoly::eval(const Interval& x) const {
    Interval v;
    for (size_t i = c.size(); i-- > 0;) v = v * x + Interval(Rat(c[i]));
    return v;
}

std::string ZPoly::str(const std::string& var) const { return to_q().str(var); }

ZPoly to_z(const QPoly& p) {
    Int den(1);
    for (const Rat& x : p.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Int> out(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) {
        Rat v = p.c[i] * Rat(den);
        out[i] = v.get_num();
    }
    return ZPoly(std::move(out)).primitive_part();
}

ZPoly char_poly(const IMat& M) {
    assert(M.rows == M.cols);
    int n = M.rows;
    QMat A = to_rational(M);
    // Faddeev-LeVerrier: M_1 = A, c_{n-1} = -tr; M_{k+1} = A(M_k + c I)
    QMat Mk = A;
    std::vector<Rat> coeffs(n + 1, Rat(0));
    coeffs[n] = Rat(1);
    for (int k = 1; k <= n; ++k) {
        Rat tr(0);
        for (int i = 0; i < n; ++i) tr += Mk(i, i);
        Rat ck = -tr / Rat(k);
        coeffs[n - k] = ck;
        if (k < n) {
            QMat Next = Mk;
            for (int i = 0; i < n; ++i) Next(i, i) += ck;
            Mk = A * Next;
        }
    }
    std::vector<Int> zc(n + 1);
    for (int i = 0; i <= n; ++i) {
        assert(coeffs[i].get_den() == 1);
        zc[i] = coeffs[i].get_num();
    }
    return ZPoly(std::move(zc));
}

QMat eval_at(const QPoly& p, const QMat& M) {
    assert(M.rows == M.cols);
    int n = M.rows;
    QMat out(n, n, Rat(0));
    if (p.is_zero()) return out;
    for (int i = p.deg(); i >= 0; --i) {
        out = out * M;
        for (int d = 0; d < n; ++d) out(d, d) += p.c[i];
    }
    return out;
}

std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& f) {
    // Yun's algorithm over Q, results converted back to primitive Z polys
    std::vector<std::pair<ZPoly, int>> out;
    QPoly p = f.primitive_part().to_q();
    if (p.deg() <= 0) return out;
    QPoly dp = p.derivative();
    QPoly a = gcd(p, dp);
    QPoly b = p.divmod(a).first;
    QPoly cpart = dp.divmod(a).first;
    QPoly d = cpart - b.derivative();
    int mult = 1;
    while (b.deg() > 0) {
        QPoly g = gcd(b, d);
        if (g.deg() > 0) out.push_back({to_z(g), mult});
        b = b.divmod(g).first;
        cpart = d.divmod(g).first;
        d = cpart - b.derivative();
        ++mult;
    }
    return out;
}

// ------------------------------------------------- factorization mod p

namespace {

using FpPoly = std::vector<long>;  // coeff of x^i, reduced mod p

long mod_inv(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    if (nr < 0) nr += p;
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return t < 0 ? t + p : t;
}

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    FpPoly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    fp_trim(out);
    return out;
}

// division with remainder; b must be nonzero
std::pair<FpPoly, FpPoly> fp_divmod(FpPoly a, const FpPoly& b, long p) {
    FpPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
    long binv = mod_inv(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        long f = a.back() * binv % p;
        size_t shift = a.size() - b.size();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i)
            a[i + shift] = ((a[i + shift] - f * b[i]) % p + p) % p;
        fp_trim(a);
        if (a.size() < b.size()) break;
    }
    fp_trim(q);
    return {q, a};
}

FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
    while (!b.empty()) {
        FpPoly r = fp_divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        long inv = mod_inv(a.back(), p);
        for (auto& x : a) x = x * inv % p;
    }
    return a;
}

FpPoly fp_powmod_x(long e, const FpPoly& f, long p) {
    // x^e mod f by square and multiply
    FpPoly result{1};
    FpPoly base{0, 1};
    base = fp_divmod(base, f, p).second;
    while (e > 0) {
        if (e & 1) result = fp_divmod(fp_mul(result, base, p), f, p).second;
        base = fp_divmod(fp_mul(base, base, p), f, p).second;
        e >>= 1;
    }
    return result;
}

// Berlekamp factorization of a monic squarefree f over F_p.
std::vector<FpPoly> berlekamp(const FpPoly& f, long p) {
    int n = int(f.size()) - 1;
    if (n <= 1) return {f};
    // Q matrix: column i = x^{p*i} mod f
    std::vector<FpPoly> pows(n);
    FpPoly xp = fp_powmod_x(p, f, p);
    pows[0] = {1};
    for (int i = 1; i < n; ++i) pows[i] = fp_divmod(fp_mul(pows[i - 1], xp, p), f, p).second;
    // (Q - I) as row-major n x n over F_p; kernel via Gauss
    std::vector<std::vector<long>> A(n, std::vector<long>(n, 0));
    for (int j = 0; j < n; ++j) {
        for (size_t i = 0; i < pows[j].size(); ++i) A[i][j] = pows[j][i];
        A[j][j] = ((A[j][j] - 1) % p + p) % p;
    }
    // RREF
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < n && r < n; ++c) {
        int piv = -1;
        for (int i = r; i < n; ++i)
            if (A[i][c]) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(A[r], A[piv]);
        long inv = mod_inv(A[r][c], p);
        for (int j = 0; j < n; ++j) A[r][j] = A[r][j] * inv % p;
        for (int i = 0; i < n; ++i) {
            if (i == r || !A[i][c]) continue;
            long fmul = A[i][c];
            for (int j = 0; j < n; ++j) A[i][j] = ((A[i][j] - fmul * A[r][j]) % p + p) % p;
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<FpPoly> basis;
    std::vector<bool> is_pivot(n, false);
    for (int cc : pivots) is_pivot[cc] = true;
    for (int fc = 0; fc < n; ++fc) {
        if (is_pivot[fc]) continue;
        FpPoly v(n, 0);
        v[fc] = 1;
        for (size_t rr = 0; rr < pivots.size(); ++rr)
            v[pivots[rr]] = (p - A[rr][fc]) % p;
        fp_trim(v);
        basis.push_back(v);
    }
    size_t nfactors = basis.size();
    std::vector<FpPoly> factors{f};
    if (nfactors <= 1) return factors;
    for (const FpPoly& v : basis) {
        if (v.size() <= 1) continue;  // constant vector splits nothing
        std::vector<FpPoly> next;
        for (const FpPoly& u : factors) {
            if (u.size() <= 2 || factors.size() + next.size() >= nfactors + 1) {
                next.push_back(u);
                continue;
            }
            FpPoly rem = u;
            for (long s = 0; s < p && rem.size() > 1; ++s) {
                FpPoly vs = v;
                if (vs.empty()) vs = {0};
                vs[0] = ((vs[0] - s) % p + p) % p;
                fp_trim(vs);
                FpPoly g = vs.empty() ? FpPoly{} : fp_gcd(rem, vs, p);
                if (g.size() > 1 && g.size() < rem.size()) {
                    next.push_back(g);
                    rem = fp_divmod(rem, g, p).first;
                }
            }
            if (rem.size() > 1) next.push_back(rem);
        }
        factors = std::move(next);
        if (factors.size() == nfactors) break;
    }
    return factors;
}

// ---- Hensel lifting ----

Int mod_pos(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int mod_balanced(const Int& a, const Int& m) {
    Int r = mod_pos(a, m);
    if (r * 2 > m) r -= m;
    return r;
}

struct ModPoly {
    std::vector<Int> c;
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
};

ModPoly mp_from_fp(const FpPoly& f) {
    ModPoly out;
    out.c.assign(f.begin(), f.end());
    return out;
}

ModPoly mp_reduce(const ZPoly& f, const Int& m) {
    ModPoly out;
    out.c.resize(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) out.c[i] = mod_pos(f.c[i], m);
    out.trim();
    return out;
}

ModPoly mp_mul(const ModPoly& a, const ModPoly& b, const Int& m) {
    if (a.c.empty() || b.c.empty()) return {};
    ModPoly out;
    out.c.assign(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            out.c[i + j] = mod_pos(out.c[i + j] + a.c[i] * b.c[j], m);
    }
    out.trim();
    return out;
}

ModPoly mp_sub(const ModPoly& a, const ModPoly& b, const Int& m) {
    ModPoly out;
    out.c.assign(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) out.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) out.c[i] = mod_pos(out.c[i] - b.c[i], m);
    out.trim();
    return out;
}

ModPoly mp_add(const ModPoly& a, const ModPoly& b, const Int& m) {
    ModPoly out;
    out.c.assign(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) out.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) out.c[i] = mod_pos(out.c[i] + b.c[i], m);
    out.trim();
    return out;
}

// divmod where divisor is monic
std::pair<ModPoly, ModPoly> mp_divmod_monic(ModPoly a, const ModPoly& b, const Int& m) {
    assert(!b.c.empty() && b.c.back() == 1);
    ModPoly q;
    q.c.assign(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, Int(0));
    while (a.c.size() >= b.c.size() && !a.c.empty()) {
        Int f = a.c.back();
        size_t shift = a.c.size() - b.c.size();
        q.c[shift] = f;
        for (size_t i = 0; i < b.c.size(); ++i)
            a.c[i + shift] = mod_pos(a.c[i + shift] - f * b.c[i], m);
        a.trim();
        if (a.c.size() < b.c.size()) break;
    }
    q.trim();
    return {q, a};
}

// Extended Euclid over F_p: a*s + b*t = 1 (a, b coprime mod p)
void fp_bezout(const FpPoly& a, const FpPoly& b, long p, FpPoly& s, FpPoly& t) {
    FpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r] = fp_divmod(r0, r1, p);
        FpPoly qs = fp_mul(q, s1, p), qt = fp_mul(q, t1, p);
        FpPoly ns(std::max(s0.size(), qs.size()), 0), nt(std::max(t0.size(), qt.size()), 0);
        for (size_t i = 0; i < s0.size(); ++i) ns[i] = s0[i];
        for (size_t i = 0; i < qs.size(); ++i) ns[i] = ((ns[i] - qs[i]) % p + p) % p;
        for (size_t i = 0; i < t0.size(); ++i) nt[i] = t0[i];
        for (size_t i = 0; i < qt.size(); ++i) nt[i] = ((nt[i] - qt[i]) % p + p) % p;
        fp_trim(ns); fp_trim(nt);
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(ns);
        t0 = std::move(t1); t1 = std::move(nt);
    }
    assert(r0.size() == 1);
    long inv = mod_inv(r0[0], p);
    for (auto& x : s0) x = x * inv % p;
    for (auto& x : t0) x = x * inv % p;
    s = s0;
    t = t0;
}

// Lift f = g*h from mod p to mod p^K (f, g, h monic; g,h coprime mod p).
void hensel_pair(const ZPoly& f, FpPoly g0, FpPoly h0, long p, const Int& pK,
                 ModPoly& gout, ModPoly& hout) {
    FpPoly a, b;
    fp_bezout(g0, h0, p, a, b);  // a*g + b*h = 1 mod p
    ModPoly g = mp_from_fp(g0), h = mp_from_fp(h0);
    ModPoly am = mp_from_fp(a), bm = mp_from_fp(b);
    Int q(p);
    while (q < pK) {
        Int q2 = q * q;
        if (q2 > pK) q2 = pK;  // cap (any multiple of needed modulus works)
        // e = f - g h  (mod q2); correction delta in multiples of q
        ModPoly fh = mp_reduce(f, q2);
        ModPoly e = mp_sub(fh, mp_mul(g, h, q2), q2);
        // s = b e mod g, t = a e + h * floor(b e / g)  (all mod q2)
        ModPoly be = mp_mul(bm, e, q2);
        auto [qq, s] = mp_divmod_monic(be, g, q2);
        ModPoly t = mp_add(mp_mul(am, e, q2), mp_mul(h, qq, q2), q2);
        g = mp_add(g, s, q2);
        h = mp_add(h, t, q2);
        // refresh Bezout to mod q2: a' = a - (a g' + b h' - 1) adjustments
        ModPoly one; one.c = {Int(1)};
        ModPoly err = mp_sub(mp_add(mp_mul(am, g, q2), mp_mul(bm, h, q2), q2), one, q2);
        ModPoly berr = mp_mul(bm, err, q2);
        auto [qb, brem] = mp_divmod_monic(berr, g, q2);
        ModPoly anew = mp_sub(am, mp_add(mp_mul(am, err, q2), mp_mul(h, qb, q2), q2), q2);
        am = anew;
        bm = mp_sub(bm, brem, q2);
        q = q2;
    }
    gout = g;
    hout = h;
}

// Lift the full factor list of monic f to mod pK via a Hensel tree.
std::vector<ModPoly> hensel_tree(const ZPoly& f, const std::vector<FpPoly>& factors, long p,
                                 const Int& pK) {
    if (factors.size() == 1) {
        return {mp_reduce(f, pK)};
    }
    size_t half = factors.size() / 2;
    FpPoly g0{1}, h0{1};
    for (size_t i = 0; i < half; ++i) g0 = fp_mul(g0, factors[i], p);
    for (size_t i = half; i < factors.size(); ++i) h0 = fp_mul(h0, factors[i], p);
    ModPoly g, h;
    hensel_pair(f, g0, h0, p, pK, g, h);
    // convert g, h back to ZPoly with balanced coefficients for recursion
    ZPoly gz, hz;
    gz.c.resize(g.c.size());
    for (size_t i = 0; i < g.c.size(); ++i) gz.c[i] = mod_balanced(g.c[i], pK);
    gz.normalize();
    hz.c.resize(h.c.size());
    for (size_t i = 0; i < h.c.size(); ++i) hz.c[i] = mod_balanced(h.c[i], pK);
    hz.normalize();
    std::vector<FpPoly> left(factors.begin(), factors.begin() + half);
    std::vector<FpPoly> right(factors.begin() + half, factors.end());
    auto lg = hensel_tree(gz, left, p, pK);
    auto rg = hensel_tree(hz, right, p, pK);
    lg.insert(lg.end(), rg.begin(), rg.end());
    return lg;
}

// exact division test over Z; returns quotient if divides
std::optional<ZPoly> try_divide(const ZPoly& f, const ZPoly& g) {
    QPoly q, r;
    std::tie(q, r) = f.to_q().divmod(g.to_q());
    if (!r.is_zero()) return std::nullopt;
    for (const Rat& x : q.c)
        if (x.get_den() != 1) return std::nullopt;
    std::vector<Int> zc(q.c.size());
    for (size_t i = 0; i < q.c.size(); ++i) zc[i] = q.c[i].get_num();
    return ZPoly(std::move(zc));
}

// Zassenhaus factorization of a monic squarefree integer polynomial with no
// rational roots.  Returns irreducible monic factors.
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    int n = f.deg();
    if (n <= 3) return {f};  // any proper factorization would have a linear factor

    static const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
                                  43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    long p = 0;
    std::vector<FpPoly> modular;
    for (long cand : primes) {
        if (f.lead() % cand == 0) continue;
        FpPoly fp(f.c.size());
        for (size_t i = 0; i < f.c.size(); ++i) {
            Int r = mod_pos(f.c[i], Int(cand));
            fp[i] = r.get_si();
        }
        fp_trim(fp);
        // squarefree mod p?
        FpPoly dfp(fp.size() - 1);
        for (size_t i = 1; i < fp.size(); ++i) dfp[i - 1] = long(i % cand) * fp[i] % cand;
        fp_trim(dfp);
        if (dfp.empty()) continue;
        if (fp_gcd(fp, dfp, cand).size() != 1) continue;
        long inv = mod_inv(fp.back(), cand);
        for (auto& x : fp) x = x * inv % cand;
        modular = berlekamp(fp, cand);
        p = cand;
        break;
    }
    if (p == 0) throw std::runtime_error("zassenhaus: no suitable small prime");
    if (modular.size() == 1) return {f};

    // Landau-Mignotte bound on factor coefficients
    Rat norm2(0);
    for (const Int& x : f.c) norm2 += Rat(x * x);
    Rat bound = Rat(Int(1) << (n + 1)) * sqrt_upper(norm2, 32);
    Int pK(p);
    while (Rat(pK) <= bound * 2) pK *= p;

    std::vector<ModPoly> lifted = hensel_tree(f, modular, p, pK);

    // recombination
    std::vector<int> alive(lifted.size());
    for (size_t i = 0; i < lifted.size(); ++i) alive[i] = int(i);
    ZPoly rem = f;
    std::vector<ZPoly> out;
    bool progress = true;
    for (size_t take = 1; take <= alive.size() && alive.size() > 0; ) {
        if (2 * take > alive.size()) break;
        progress = false;
        // iterate subsets of size `take` of alive
        std::vector<size_t> idx(take);
        for (size_t i = 0; i < take; ++i) idx[i] = i;
        for (;;) {
            // candidate product
            ModPoly prod;
            prod.c = {Int(1)};
            for (size_t i = 0; i < take; ++i) prod = mp_mul(prod, lifted[alive[idx[i]]], pK);
            ZPoly cand;
            cand.c.resize(prod.c.size());
            for (size_t i = 0; i < prod.c.size(); ++i) cand.c[i] = mod_balanced(prod.c[i], pK);
            cand.normalize();
            auto quot = try_divide(rem, cand);
            if (quot) {
                out.push_back(cand);
                rem = *quot;
                std::vector<int> na;
                for (size_t i = 0, k = 0; i < alive.size(); ++i) {
                    if (k < take && idx[k] == i) { ++k; continue; }
                    na.push_back(alive[i]);
                }
                alive = std::move(na);
                progress = true;
                break;
            }
            // next subset
            int pos = int(take) - 1;
            while (pos >= 0 && idx[pos] == alive.size() - take + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (size_t i = pos + 1; i < take; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!progress) ++take;
    }
    if (rem.deg() > 0) out.push_back(rem);
    return out;
}

}  // namespace

std::vector<std::pair<ZPoly, int>> factor_poly(const ZPoly& f) {
    std::vector<std::pair<ZPoly, int>> out;
    auto sf = squarefree_decomposition(f);
    for (auto& [part, mult] : sf) {
        ZPoly g = part.primitive_part();
        // rational (here integer-over-lead) roots: candidates num/den with
        // num | g(0), den | lead(g)
        for (;;) {
            if (g.deg() <= 0) break;
            if (g.coeff(0) == 0) {  // root 0
                out.push_back({ZPoly({Int(0), Int(1)}), mult});
                std::vector<Int> shifted(g.c.begin() + 1, g.c.end());
                g = ZPoly(std::move(shifted));
                continue;
            }
            bool found = false;
            Int c0 = ::abs(g.coeff(0)), cl = ::abs(g.lead());
            for (Int num(1); num <= c0 && !found; ++num) {
                if (c0 % num != 0) continue;
                for (Int den(1); den <= cl && !found; ++den) {
                    if (cl % den != 0) continue;
                    for (int s = -1; s <= 1 && !found; s += 2) {
                        Rat root(num * s, den);
                        root.canonicalize();
                        if (g.eval(root) == 0) {
                            // divide by (den x - s num)
                            ZPoly lin({-root.get_num(), root.get_den()});
                            auto q = g.to_q().divmod(lin.to_q()).first;
                            g = to_z(q);
                            out.push_back({lin, mult});
                            found = true;
                        }
                    }
                }
            }
            if (!found) break;
        }
        if (g.deg() <= 0) continue;
        if (g.deg() <= 3) {
            out.push_back({g, mult});
            continue;
        }
        // monic transform if needed: factor lc^{n-1} f(x / lc)
        Int lc = g.lead();
        if (lc == 1) {
            for (ZPoly& irr : zassenhaus(g)) out.push_back({irr.primitive_part(), mult});
        } else {
            int n = g.deg();
            std::vector<Int> mc(n + 1);
            // F(x) = lc^{n-1} g(x/lc): coeff_i(F) = g.c[i] * lc^{n-1-i}
            for (int i = 0; i <= n; ++i) {
                Int scale(1);
                for (int t = 0; t < n - 1 - i; ++t) scale *= lc;
                mc[i] = g.c[i] * scale;
            }
            ZPoly F = ZPoly(std::move(mc)).primitive_part();
            for (ZPoly& G : zassenhaus(F)) {
                // map back: factor of g is primitive part of G(lc x)
                std::vector<Int> back(G.c.size());
                Int scale(1);
                for (size_t i = 0; i < G.c.size(); ++i) {
                    back[i] = G.c[i] * scale;
                    scale *= lc;
                }
                out.push_back({ZPoly(std::move(back)).primitive_part(), mult});
            }
        }
    }
    // deterministic order: by degree then lexicographic coefficients
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
        for (int i = a.first.deg(); i >= 0; --i)
            if (a.first.coeff(i) != b.first.coeff(i)) return a.first.coeff(i) < b.first.coeff(i);
        return a.second < b.second;
    });
    return out;
}

// ---------------------------------------------------------------- Sturm

SturmChain::SturmChain(const ZPoly& f) {
    QPoly p0 = f.to_q(), p1 = p0.derivative();
    chain.push_back(p0);
    if (p1.is_zero()) return;
    chain.push_back(p1);
    for (;;) {
        const QPoly& a = chain[chain.size() - 2];
        const QPoly& b = chain.back();
        QPoly r = a.divmod(b).second;
        if (r.is_zero()) break;
        chain.push_back(r * Rat(-1));
    }
}

int SturmChain::variations(const Rat& x) const {
    int v = 0, last = 0;
    for (const QPoly& p : chain) {
        int s = sgn(p.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

int SturmChain::count(const Rat& a, const Rat& b) const { return variations(a) - variations(b); }

std::vector<Interval> isolate_real_roots(const ZPoly& f, const Rat& w) {
    std::vector<Interval> out;
    if (f.deg() <= 0) return out;
    SturmChain sturm(f);
    // Cauchy bound
    Rat bound(1);
    for (int i = 0; i < f.deg(); ++i) {
        Rat r = Rat(::abs(f.coeff(i))) / Rat(::abs(f.lead()));
        if (r + 1 > bound) bound = r + 1;
    }
    struct Seg { Rat a, b; int cnt; };
    std::vector<Seg> work{{-bound, bound, sturm.count(-bound, bound)}};
    std::vector<Interval> isolated;
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        if (s.cnt == 0) continue;
        if (s.cnt == 1) {
            isolated.push_back(Interval(s.a, s.b));
            continue;
        }
        Rat mid = (s.a + s.b) / 2;
        // nudge off a root
        while (f.eval(mid) == 0) mid = (s.a + mid) / 2;
        int left = sturm.count(s.a, mid);
        work.push_back({s.a, mid, left});
        work.push_back({mid, s.b, s.cnt - left});
    }
    for (Interval& iv : isolated) out.push_back(refine_real_root(f, iv, w));
    std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    return out;
}

Interval refine_real_root(const ZPoly& f, Interval br, const Rat& w) {
    // Exact root at an endpoint?  Sturm counting uses (a, b], so check b.
    if (f.eval(br.hi) == 0) return Interval(br.hi, br.hi);
    int slo = sgn(f.eval(br.lo));
    if (slo == 0) {
        // root exactly at the open endpoint cannot be the counted one; shrink
        Rat nl = (br.lo * 3 + br.hi) / 4;
        while (sgn(f.eval(nl)) == 0) nl = (nl + br.hi) / 2;
        br.lo = nl;
        slo = sgn(f.eval(br.lo));
    }
    while (br.width() > w) {
        Rat mid = (br.lo + br.hi) / 2;
        int sm = sgn(f.eval(mid));
        if (sm == 0) return Interval(mid, mid);
        if (sm == slo) br.lo = mid;
        else br.hi = mid;
    }
    return br;
}

}  // namespace powerfree
