#include <doctest.h>

#include <random>

#include "powerfree/smith.hpp"
#include "powerfree/words.hpp"

using namespace powerfree;

namespace {

IMat from_rows(std::vector<std::vector<long>> rows) {
    IMat m(int(rows.size()), int(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(int(i), int(j)) = Int(rows[i][j]);
    return m;
}

bool unimodular(const IMat& m) {
    Int d = det_int(m);
    return d == 1 || d == -1;
}

void check_smith_invariants(const IMat& M) {
    SmithData S = smith(M);
    CHECK(S.U * S.D * S.V == M);
    CHECK(unimodular(S.U));
    CHECK(unimodular(S.V));
    CHECK(S.U * S.Uinv == IMat::identity(M.rows));
    CHECK(S.V * S.Vinv == IMat::identity(M.cols));
    int dim = std::min(M.rows, M.cols);
    for (int i = 0; i + 1 < dim; ++i) {
        CHECK(S.D(i, i) >= 0);
        if (S.D(i + 1, i + 1) != 0) {
            REQUIRE(S.D(i, i) != 0);
            CHECK(S.D(i + 1, i + 1) % S.D(i, i) == 0);
        }
    }
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j)
            if (i != j) CHECK(S.D(i, j) == 0);
    // kernel columns are killed by M
    for (int c = 0; c < S.kernel_basis.cols; ++c) {
        IVec v = S.kernel_basis.col(c);
        for (const Int& y : M.mul_vec(v)) CHECK(y == 0);
    }
    CHECK(S.kernel_basis.cols == M.cols - S.rank);
}

IMat h6_matrix() {
    // columns are Parikh vectors of the rule images
    return from_rows({{1, 1, 0, 0, 1, 0},
                      {0, 0, 1, 1, 0, 1},
                      {1, 0, 0, 1, 0, 1},
                      {0, 1, 1, 1, 0, 0},
                      {1, 0, 0, 0, 1, 1},
                      {0, 1, 1, 0, 1, 0}});
}

}  // namespace

TEST_CASE("rref and nullspace follow the canonical convention") {
    // ker of M_h6: free variables e, f
    QMat m = to_rational(h6_matrix());
    auto basis = nullspace(m);
    REQUIRE(basis.size() == 2);
    QVec v1{Rat(-1), Rat(0), Rat(-1), Rat(1), Rat(1), Rat(0)};
    QVec v2{Rat(-1), Rat(1), Rat(-1), Rat(0), Rat(0), Rat(1)};
    CHECK(basis[0] == v1);
    CHECK(basis[1] == v2);
}

TEST_CASE("smith: identity and the 2x2 example") {
    SmithData I = smith(IMat::identity(3));
    CHECK(I.D == IMat::identity(3));
    CHECK(I.rank == 3);
    CHECK(I.kernel_basis.cols == 0);

    IMat M = from_rows({{2, 4}, {6, 8}});
    SmithData S = smith(M);
    CHECK(S.D(0, 0) == 2);
    CHECK(S.D(1, 1) == 4);
    check_smith_invariants(M);
}

TEST_CASE("smith: F_phi of the Z^2 application has rank 3, kernel rank 3") {
    IMat F = from_rows({{1, 1, 1, 1, 1, 1}, {0, 1, 2, 0, 2, 1}, {0, 1, 1, 1, 0, 0}});
    SmithData S = smith(F);
    CHECK(S.rank == 3);
    CHECK(S.kernel_basis.cols == 3);
    check_smith_invariants(F);
}

TEST_CASE("smith invariants on 200 random matrices") {
    std::mt19937 rng(20260808);
    std::uniform_int_distribution<int> dim(1, 5), entry(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        IMat M(dim(rng), dim(rng));
        for (auto& x : M.a) x = Int(entry(rng));
        check_smith_invariants(M);
    }
}

TEST_CASE("solve_diophantine: examples") {
    // identity
    auto s1 = solve_diophantine(IMat::identity(3), IVec{Int(4), Int(-1), Int(7)});
    REQUIRE(s1.has_value());
    CHECK(s1->x0 == IVec{Int(4), Int(-1), Int(7)});
    CHECK(s1->kernel_basis.cols == 0);

    // divisibility failure
    IMat two(1, 1);
    two(0, 0) = 2;
    CHECK(!solve_diophantine(two, IVec{Int(3)}).has_value());

    // M_h6 with y = Psi(ace): solvable, kernel lattice of rank 2
    IMat M = h6_matrix();
    IVec y{Int(1), Int(0), Int(1), Int(0), Int(1), Int(0)};
    auto s = solve_diophantine(M, y);
    REQUIRE(s.has_value());
    CHECK(M.mul_vec(s->x0) == y);
    CHECK(s->kernel_basis.cols == 2);  // geometric multiplicity of 0, not algebraic
}

TEST_CASE("solve_diophantine: none means none (exhaustive small boxes)") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> entry(-3, 3), rhs(-5, 5), dim(1, 3);
    for (int trial = 0; trial < 120; ++trial) {
        int n = dim(rng), m = dim(rng);
        IMat M(n, m);
        for (auto& x : M.a) x = Int(entry(rng));
        IVec y(n);
        for (auto& x : y) x = Int(rhs(rng));
        auto sol = solve_diophantine(M, y);
        if (sol) {
            CHECK(M.mul_vec(sol->x0) == y);
            continue;
        }
        // exhaustive search over a box that would contain any small solution
        const int B = 25;
        std::vector<long> x(m, -B);
        bool found = false;
        for (;;) {
            IVec xv(m);
            for (int i = 0; i < m; ++i) xv[i] = Int(x[i]);
            if (M.mul_vec(xv) == y) { found = true; break; }
            int p = 0;
            while (p < m && ++x[p] > B) x[p++] = -B;
            if (p == m) break;
        }
        CHECK(!found);
    }
}

TEST_CASE("reduce_particular") {
    IMat empty(2, 0);
    CHECK(reduce_particular(IVec{Int(5), Int(0)}, empty) == IVec{Int(5), Int(0)});

    IMat b1(2, 1);
    b1(0, 0) = 1;
    b1(1, 0) = 0;
    CHECK(reduce_particular(IVec{Int(5), Int(0)}, b1) == IVec{Int(0), Int(0)});

    IMat b2(2, 1);
    b2(0, 0) = 2;
    b2(1, 0) = 0;
    CHECK(reduce_particular(IVec{Int(5), Int(1)}, b2) == IVec{Int(1), Int(1)});
}

TEST_CASE("reduce_particular keeps the coset") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> entry(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        IMat B(4, 2);
        for (auto& x : B.a) x = Int(entry(rng));
        if (rank_of(to_rational(B)) < 2) continue;
        IVec x0(4);
        for (auto& x : x0) x = Int(entry(rng) * 5);
        IVec r = reduce_particular(x0, B);
        // difference must lie in the lattice: solve B t = x0 - r over Q and
        // check integrality
        QMat Bq = to_rational(B);
        QVec d(4);
        for (int i = 0; i < 4; ++i) d[i] = Rat(x0[i] - r[i]);
        auto t = solve_field(Bq, d);
        REQUIRE(t.has_value());
        for (const Rat& c : *t) CHECK(c.get_den() == 1);
    }
}
