#include "powerfree/smith.hpp"

#include <algorithm>

namespace powerfree {

namespace {

// Elementary operations keeping M = U * A * V.
// Row op on A (left multiply by E): A' = E A, U' = U E^-1.
// Col op on A (right multiply by E): A' = A E, V' = E^-1 V.

struct Worker {
    IMat A, U, Uinv, V, Vinv;

    explicit Worker(const IMat& M)
        : A(M),
          U(IMat::identity(M.rows)),
          Uinv(IMat::identity(M.rows)),
          V(IMat::identity(M.cols)),
          Vinv(IMat::identity(M.cols)) {}

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < A.cols; ++c) std::swap(A(i, c), A(j, c));
        for (int c = 0; c < U.rows; ++c) std::swap(U(c, i), U(c, j));
        for (int c = 0; c < Uinv.cols; ++c) std::swap(Uinv(i, c), Uinv(j, c));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < A.rows; ++r) std::swap(A(r, i), A(r, j));
        for (int r = 0; r < V.cols; ++r) std::swap(V(i, r), V(j, r));
        for (int r = 0; r < Vinv.rows; ++r) std::swap(Vinv(r, i), Vinv(r, j));
    }
    void negate_row(int i) {
        for (int c = 0; c < A.cols; ++c) A(i, c) = -A(i, c);
        for (int c = 0; c < U.rows; ++c) U(c, i) = -U(c, i);
        for (int c = 0; c < Uinv.cols; ++c) Uinv(i, c) = -Uinv(i, c);
    }
    // row i += f * row j
    void add_row(int i, int j, const Int& f) {
        if (f == 0) return;
        for (int c = 0; c < A.cols; ++c) A(i, c) += f * A(j, c);
        for (int c = 0; c < Uinv.cols; ++c) Uinv(i, c) += f * Uinv(j, c);
        for (int c = 0; c < U.rows; ++c) U(c, j) -= f * U(c, i);
    }
    // col i += f * col j
    void add_col(int i, int j, const Int& f) {
        if (f == 0) return;
        for (int r = 0; r < A.rows; ++r) A(r, i) += f * A(r, j);
        for (int r = 0; r < Vinv.rows; ++r) Vinv(r, i) += f * Vinv(r, j);
        for (int r = 0; r < V.cols; ++r) V(j, r) -= f * V(i, r);
    }
};

}  // namespace

SmithData smith(const IMat& M) {
    Worker w(M);
    int n = M.rows, m = M.cols;
    int dim = std::min(n, m);

    for (int s = 0; s < dim; ++s) {
        // pivot: smallest nonzero absolute value in A(s:, s:), ties by lowest
        // (row, col) index
        for (;;) {
            int pi = -1, pj = -1;
            Int best;
            for (int i = s; i < n; ++i)
                for (int j = s; j < m; ++j) {
                    if (w.A(i, j) == 0) continue;
                    Int v = ::abs(w.A(i, j));
                    if (pi < 0 || v < best) { best = v; pi = i; pj = j; }
                }
            if (pi < 0) goto done;  // rest of matrix is zero
            w.swap_rows(s, pi);
            w.swap_cols(s, pj);
            if (w.A(s, s) < 0) w.negate_row(s);

            bool reduced = true;
            for (int i = s + 1; i < n; ++i) {
                if (w.A(i, s) == 0) continue;
                Int q = w.A(i, s) / w.A(s, s);
                // floor division toward smaller remainder magnitude
                w.add_row(i, s, -q);
                if (w.A(i, s) != 0) reduced = false;
            }
            for (int j = s + 1; j < m; ++j) {
                if (w.A(s, j) == 0) continue;
                Int q = w.A(s, j) / w.A(s, s);
                w.add_col(j, s, -q);
                if (w.A(s, j) != 0) reduced = false;
            }
            if (!reduced) continue;  // smaller remainders exist; re-pivot

            // divisibility: if pivot does not divide some A(i,j), fold that
            // row in and restart this step
            bool divides_all = true;
            for (int i = s + 1; i < n && divides_all; ++i)
                for (int j = s + 1; j < m; ++j)
                    if (w.A(i, j) % w.A(s, s) != 0) {
                        w.add_row(s, i, Int(1));
                        divides_all = false;
                        break;
                    }
            if (divides_all) break;
        }
    }
done:

    SmithData out;
    out.U = w.U;
    out.Uinv = w.Uinv;
    out.D = w.A;
    out.V = w.V;
    out.Vinv = w.Vinv;
    out.rank = 0;
    for (int i = 0; i < dim; ++i)
        if (out.D(i, i) != 0) ++out.rank;

    int kappa = m - out.rank;
    out.kernel_basis = IMat(m, kappa);
    int kc = 0;
    for (int i = 0; i < m; ++i) {
        bool zero = (i >= dim) || (out.D(i, i) == 0);
        if (!zero) continue;
        for (int r = 0; r < m; ++r) out.kernel_basis(r, kc) = out.Vinv(r, i);
        ++kc;
    }
    return out;
}

std::vector<int> SmithData::zero_rows() const {
    std::vector<int> zr;
    int dim = std::min(D.rows, D.cols);
    for (int i = 0; i < D.rows; ++i)
        if (i >= dim || D(i, i) == 0) zr.push_back(i);
    return zr;
}

std::optional<DiophantineSolution> solve_diophantine(const SmithData& S, const IVec& y) {
    int n = S.D.rows, m = S.D.cols;
    assert(int(y.size()) == n);
    IVec yp = S.Uinv.mul_vec(y);
    int dim = std::min(n, m);
    IVec xp(m, Int(0));
    for (int i = 0; i < n; ++i) {
        if (i < dim && S.D(i, i) != 0) {
            if (yp[i] % S.D(i, i) != 0) return std::nullopt;
            xp[i] = yp[i] / S.D(i, i);
        } else if (yp[i] != 0) {
            return std::nullopt;
        }
    }
    DiophantineSolution sol;
    sol.x0 = S.Vinv.mul_vec(xp);
    sol.kernel_basis = S.kernel_basis;
    return sol;
}

std::optional<DiophantineSolution> solve_diophantine(const IMat& M, const IVec& y) {
    return solve_diophantine(smith(M), y);
}

IVec reduce_particular(const IVec& x0, const IMat& B) {
    if (B.cols == 0) return x0;
    int m = B.rows, k = B.cols;
    assert(int(x0.size()) == m);
    // solve (B^T B) t = B^T x0 over Q, round t
    QMat G(k, k);
    QVec rhs(k, Rat(0));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            Int s(0);
            for (int r = 0; r < m; ++r) s += B(r, i) * B(r, j);
            G(i, j) = Rat(s);
        }
        Int s(0);
        for (int r = 0; r < m; ++r) s += B(r, i) * x0[r];
        rhs[i] = Rat(s);
    }
    auto t = solve_field(G, rhs);
    if (!t) return x0;  // B not full column rank; leave x0 alone
    IVec out = x0;
    for (int i = 0; i < k; ++i) {
        // round to nearest integer, half-ties down
        Rat ti = (*t)[i];
        Int num = ti.get_num(), den = ti.get_den();
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (Rat(r * 2) > Rat(den)) q += 1;
        if (q == 0) continue;
        for (int rr = 0; rr < m; ++rr) out[rr] -= q * B(rr, i);
    }
    return out;
}

}  // namespace powerfree
