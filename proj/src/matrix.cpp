#include "powerfree/matrix.hpp"

namespace powerfree {

QMat to_rational(const IMat& m) {
    QMat q(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) q.a[i] = Rat(m.a[i]);
    return q;
}

QVec to_rational(const IVec& v) {
    QVec q(v.size());
    for (size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
    return q;
}

Int det_int(const IMat& m) {
    assert(m.rows == m.cols);
    // Bareiss fraction-free elimination
    int n = m.rows;
    IMat w = m;
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (w(i, k) != 0) { piv = i; break; }
            if (piv < 0) return Int(0);
            for (int j = 0; j < n; ++j) std::swap(w(k, j), w(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                w(i, j) = (w(i, j) * w(k, k) - w(i, k) * w(k, j)) / prev;
        prev = w(k, k);
    }
    return sign > 0 ? w(n - 1, n - 1) : -w(n - 1, n - 1);
}

CIvMat to_cinterval(const QMat& m) {
    CIvMat out(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = CInterval::exact(m.a[i]);
    return out;
}

CIvMat cmul(const CIvMat& x, const CIvMat& y) {
    assert(x.cols == y.rows);
    CIvMat out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < y.cols; ++j) {
            CInterval s;
            for (int k = 0; k < x.cols; ++k) s += x(i, k) * y(k, j);
            out(i, j) = s;
        }
    return out;
}

bool contains(const CIvMat& enc, const QMat& exact) {
    if (enc.rows != exact.rows || enc.cols != exact.cols) return false;
    for (int i = 0; i < enc.rows; ++i)
        for (int j = 0; j < enc.cols; ++j) {
            const CInterval& e = enc(i, j);
            if (!e.re.contains(exact(i, j))) return false;
            if (!e.im.contains(Rat(0))) return false;
        }
    return true;
}

std::optional<CIvMat> interval_inverse(const CIvMat& A) {
    assert(A.rows == A.cols);
    // endpoints are rounded outward after every update: without this the
    // rational bit-length doubles per elimination step
    const unsigned kBits = 256;
    int n = A.rows;
    CIvMat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = round_outward(A(i, j), kBits);
        aug(i, n + i) = CInterval::exact(Rat(1));
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        Rat best(0);
        for (int i = c; i < n; ++i) {
            Rat m2 = aug(i, c).mod_squared().lo;
            if (sgn(m2) > 0 && (piv < 0 || m2 > best)) { best = m2; piv = i; }
        }
        if (piv < 0) return std::nullopt;
        if (piv != c)
            for (int j = 0; j < 2 * n; ++j) std::swap(aug(c, j), aug(piv, j));
        CInterval p = aug(c, c);
        for (int j = 0; j < 2 * n; ++j) aug(c, j) = round_outward(aug(c, j) / p, kBits);
        for (int i = 0; i < n; ++i) {
            if (i == c) continue;
            CInterval f = aug(i, c);
            if (f.contains_zero() && f.re.is_point() && f.im.is_point()) continue;
            for (int j = 0; j < 2 * n; ++j)
                aug(i, j) = round_outward(aug(i, j) - f * aug(c, j), kBits);
            aug(i, c) = CInterval();
        }
    }
    CIvMat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

}  // namespace powerfree
