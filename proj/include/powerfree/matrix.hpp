#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "powerfree/interval.hpp"

namespace powerfree {

template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
    Mat(int r, int c, const T& fill) : rows(r), cols(c), a(size_t(r) * c, fill) {}

    T& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
    const T& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    Mat transpose() const {
        Mat t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat& o) const {
        assert(cols == o.rows);
        Mat out(rows, o.cols, T(0));
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const T& x = (*this)(i, k);
                if (x == T(0)) continue;
                for (int j = 0; j < o.cols; ++j) out(i, j) += x * o(k, j);
            }
        return out;
    }

    Mat operator+(const Mat& o) const {
        assert(rows == o.rows && cols == o.cols);
        Mat out(rows, cols);
        for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] + o.a[i];
        return out;
    }

    Mat operator-(const Mat& o) const {
        assert(rows == o.rows && cols == o.cols);
        Mat out(rows, cols);
        for (size_t i = 0; i < a.size(); ++i) out.a[i] = a[i] - o.a[i];
        return out;
    }

    std::vector<T> col(int j) const {
        std::vector<T> v(rows);
        for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }
    std::vector<T> row(int i) const {
        std::vector<T> v(cols);
        for (int j = 0; j < cols; ++j) v[j] = (*this)(i, j);
        return v;
    }

    std::vector<T> mul_vec(const std::vector<T>& x) const {
        assert(int(x.size()) == cols);
        std::vector<T> y(rows, T(0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

QMat to_rational(const IMat& m);
QVec to_rational(const IVec& v);

// Reduced row echelon form, exact CAS convention: columns scanned left to
// right, pivot = first row (top-down) with a nonzero entry.  Returns pivot
// columns.  Works over any exact field with ==, +, -, *, /.
template <class F>
std::vector<int> rref_in_place(Mat<F>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (!(m(i, c) == F(0))) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m(r, j), m(piv, j));
        F inv = F(1) / m(r, c);
        for (int j = c; j < m.cols; ++j) m(r, j) = m(r, j) * inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c) == F(0)) continue;
            F f = m(i, c);
            for (int j = c; j < m.cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
int rank_of(Mat<F> m) {
    return int(rref_in_place(m).size());
}

// Nullspace basis in the RREF convention: one vector per free column
// (ascending), with 1 at the free position and 0 at the other free positions.
template <class F>
std::vector<std::vector<F>> nullspace(Mat<F> m) {
    std::vector<int> pivots = rref_in_place(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (int fc = 0; fc < m.cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<F> v(m.cols, F(0));
        v[fc] = F(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F(0) - m(int(r), fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Exact solve A x = b over a field; empty optional if inconsistent.
// If the system is underdetermined, returns the RREF particular solution
// (free variables set to 0).
template <class F>
std::optional<std::vector<F>> solve_field(Mat<F> A, std::vector<F> b) {
    assert(int(b.size()) == A.rows);
    Mat<F> aug(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug(i, j) = A(i, j);
        aug(i, A.cols) = b[i];
    }
    std::vector<int> pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;
    std::vector<F> x(A.cols, F(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(int(r), A.cols);
    return x;
}

template <class F>
std::optional<Mat<F>> inverse(const Mat<F>& A) {
    assert(A.rows == A.cols);
    int n = A.rows;
    Mat<F> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = A(i, j);
        aug(i, n + i) = F(1);
    }
    std::vector<int> pivots = rref_in_place(aug);
    if (int(pivots.size()) != n) return std::nullopt;
    Mat<F> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

Int det_int(const IMat& m);

// Interval matrices (real and complex rectangles).
using IvMat = Mat<Interval>;
using CIvMat = Mat<CInterval>;

CIvMat to_cinterval(const QMat& m);
CIvMat cmul(const CIvMat& x, const CIvMat& y);
bool contains(const CIvMat& enc, const QMat& exact);

// Interval Gaussian inversion with pivoting by largest modulus lower bound.
// Fails (nullopt) when some pivot cannot be certified nonzero.
std::optional<CIvMat> interval_inverse(const CIvMat& A);

}  // namespace powerfree
