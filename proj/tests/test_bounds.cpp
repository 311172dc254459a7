#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "powerfree/bounds.hpp"

using namespace powerfree;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(POWERFREE_FIXTURES) + "/" + name);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Rat prec() { return Rat(Int(1), Int(1) << 80); }

struct Ctx {
    Morphism h;
    SpectralData sd;
    Ctx(const std::string& text, bool hints = true) : h(parse_morphism(text)),
        sd(spectral_data(h.incidence, prec())) {
        if (hints && !h.row_hints.empty()) REQUIRE(apply_row_hints(sd, h.row_hints));
    }
};

}  // namespace

TEST_CASE("h8 bounds reproduce the published values") {
    Ctx ctx(fixture("h8.mrf"));
    BoundsProfile b1 = contracting_bounds(ctx.h, ctx.sd, 1);
    // the pair near (0.33292, 0.67077) certifies to ~5.9633 at l = 1
    bool found_1 = false;
    for (size_t i = 0; i < b1.factor_bound.size(); ++i) {
        double lo = to_double(b1.factor_bound[i].lo), hi = to_double(b1.factor_bound[i].hi);
        if (hi < 5.97 && lo > 5.96) found_1 = true;
    }
    CHECK(found_1);

    BoundsProfile b20 = contracting_bounds(ctx.h, ctx.sd, 20);
    bool found_20 = false;
    for (size_t i = 0; i < b20.factor_bound.size(); ++i) {
        double lo = to_double(b20.factor_bound[i].lo), hi = to_double(b20.factor_bound[i].hi);
        if (hi <= 1.4395 && lo >= 1.4341) found_20 = true;
    }
    CHECK(found_20);
}

TEST_CASE("h6 bounds with the verified row basis are exactly 4, 4/3, 4/3") {
    Ctx ctx(fixture("h6.mrf"));
    BoundsProfile bp = contracting_bounds(ctx.h, ctx.sd, 2);
    REQUIRE(bp.r_star.size() == 3);
    CHECK(bp.factor_bound_exact[0]);
    CHECK(bp.r_star[0].hi == Rat(4));
    CHECK(bp.r_star[1].hi == Rat(4, 3));
    CHECK(bp.r_star[2].hi == Rat(4, 3));
}

TEST_CASE("monotone sharpening: doubling l does not loosen the bounds") {
    Ctx ctx(fixture("h8.mrf"));
    BoundsProfile a = contracting_bounds(ctx.h, ctx.sd, 2);
    BoundsProfile b = contracting_bounds(ctx.h, ctx.sd, 4);
    for (size_t i = 0; i < a.factor_bound.size(); ++i)
        CHECK(b.factor_bound[i].hi <= a.factor_bound[i].hi * Rat(101, 100));
}

TEST_CASE("a morphism with no contracting eigenvalue has an empty profile") {
    Morphism h = parse_morphism("alphabet: a\na -> a a\n");
    SpectralData sd = spectral_data(h.incidence, prec());
    CHECK(sd.contracting.empty());
    BoundsProfile bp = contracting_bounds(h, sd, 1);
    CHECK(bp.empty());
}

TEST_CASE("filter soundness sampling over factor pairs") {
    for (const char* name : {"h6.mrf", "h8.mrf", "f_cassaigne.mrf", "h4.mrf", "h4p.mrf"}) {
        Ctx ctx(fixture(name));
        BoundsProfile bp = contracting_bounds(ctx.h, ctx.sd, 2);
        Filter filter(ctx.sd, bp);
        auto words = factors_up_to(ctx.h, 30);
        std::mt19937 rng(2718);
        std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
        int n = ctx.h.source->size();
        for (int trial = 0; trial < 4000; ++trial) {
            const Word& u = words[pick(rng)];
            const Word& v = words[pick(rng)];
            IVec pu = parikh(u, n), pv = parikh(v, n);
            IVec d(n);
            for (int i = 0; i < n; ++i) d[i] = pu[i] - pv[i];
            CHECK(filter.passes(d));
        }
    }
}

TEST_CASE("empirical floor: observed |r(Psi(prefix))| stays below the bound") {
    Ctx ctx(fixture("h8.mrf"));
    BoundsProfile bp = contracting_bounds(ctx.h, ctx.sd, 20);
    size_t row = 0;
    bool found = false;
    for (size_t i = 0; i < ctx.sd.contracting.size(); ++i) {
        double hi = to_double(bp.factor_bound[i].hi);
        if (hi <= 1.4395 && hi >= 1.4341) { row = i; found = true; break; }
    }
    REQUIRE(found);
    Word w = fixed_point_prefix(ctx.h, 1000000);
    const RowFunctional& r = ctx.sd.contracting_rows[row];
    std::complex<double> acc = 0;
    double maxmod = 0;
    for (char c : w) {
        acc += r.shadow[uint8_t(c)];
        maxmod = std::max(maxmod, std::abs(acc));
    }
    // published observation is ~1.4341 on a million-letter prefix
    CHECK(maxmod <= to_double(bp.factor_bound[row].hi) + 1e-6);
    CHECK(maxmod > 1.43);
}

TEST_CASE("min_eig_lower_bound examples") {
    IvMat I2(2, 2, Interval(Rat(0)));
    I2(0, 0) = Interval(Rat(1));
    I2(1, 1) = Interval(Rat(1));
    auto t = min_eig_lower_bound(I2);
    REQUIRE(t.has_value());
    CHECK(*t >= Rat(1, 2));
    CHECK(*t <= Rat(1));

    IvMat D(2, 2, Interval(Rat(0)));
    D(0, 0) = Interval(Rat(4));
    D(1, 1) = Interval(Rat(9));
    auto t2 = min_eig_lower_bound(D);
    REQUIRE(t2.has_value());
    CHECK(*t2 > Rat(0));
    CHECK(*t2 <= Rat(4));

    IvMat Z(2, 2, Interval(Rat(0)));
    Z(0, 0) = Interval(Rat(1));
    Z(1, 1) = Interval(Rat(-1));
    CHECK(!min_eig_lower_bound(Z).has_value());
}

TEST_CASE("kernel_coset_candidates basics") {
    Ctx ctx(fixture("h6.mrf"));
    BoundsProfile bp = contracting_bounds(ctx.h, ctx.sd, 2);
    Filter filter(ctx.sd, bp);
    int n = 6;

    IMat empty(n, 0);
    IVec zero(n, Int(0));
    auto single = kernel_coset_candidates(zero, empty, filter);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == zero);

    SmithData S = smith(ctx.h.incidence);
    auto cands = kernel_coset_candidates(zero, S.kernel_basis, filter);
    bool has_zero = false;
    for (const IVec& x : cands) {
        if (x == zero) has_zero = true;
        IVec neg(n);
        for (int i = 0; i < n; ++i) neg[i] = -x[i];
        bool found_neg = false;
        for (const IVec& y : cands) found_neg = found_neg || y == neg;
        CHECK(found_neg);
    }
    CHECK(has_zero);

    IVec big(n);
    for (int i = 0; i < n; ++i) big[i] = S.kernel_basis(i, 0) * 1000000;
    CHECK(!filter.passes(big));
}

TEST_CASE("kernel_coset_candidates matches brute enumeration on a coset") {
    Ctx ctx(fixture("h6.mrf"));
    BoundsProfile bp = contracting_bounds(ctx.h, ctx.sd, 2);
    Filter filter(ctx.sd, bp);
    int n = 6;
    IVec y{Int(-1), Int(1), Int(-1), Int(1), Int(-1), Int(1)};  // Psi(bdf)-Psi(ace)
    auto sol = solve_diophantine(ctx.h.incidence, y);
    REQUIRE(sol.has_value());
    IVec x0 = reduce_particular(sol->x0, sol->kernel_basis);
    auto cands = kernel_coset_candidates(x0, sol->kernel_basis, filter);
    std::vector<IVec> brute;
    for (long a = -8; a <= 8; ++a)
        for (long b = -8; b <= 8; ++b) {
            IVec x(n);
            for (int i = 0; i < n; ++i)
                x[i] = x0[i] + sol->kernel_basis(i, 0) * a + sol->kernel_basis(i, 1) * b;
            if (filter.passes(x)) brute.push_back(x);
        }
    CHECK(cands.size() == brute.size());
    for (const IVec& x : brute) {
        bool found = false;
        for (const IVec& c : cands) found = found || c == x;
        CHECK(found);
        CHECK(ctx.h.incidence.mul_vec(x) == y);
    }
}

TEST_CASE("coset candidates are invariant under particular-solution shifts") {
    Ctx ctx(fixture("h6.mrf"));
    BoundsProfile bp = contracting_bounds(ctx.h, ctx.sd, 2);
    Filter filter(ctx.sd, bp);
    SmithData S = smith(ctx.h.incidence);
    IVec y{Int(-1), Int(1), Int(-1), Int(1), Int(-1), Int(1)};
    auto sol = solve_diophantine(S, y);
    REQUIRE(sol.has_value());
    IVec x0 = reduce_particular(sol->x0, sol->kernel_basis);
    IVec shifted = x0;
    for (int i = 0; i < 6; ++i) shifted[i] += S.kernel_basis(i, 0) * 3 - S.kernel_basis(i, 1) * 2;
    auto a = kernel_coset_candidates(x0, S.kernel_basis, filter);
    auto b = kernel_coset_candidates(reduce_particular(shifted, S.kernel_basis), S.kernel_basis,
                                     filter);
    CHECK(a.size() == b.size());
    for (const IVec& x : a) {
        bool found = false;
        for (const IVec& z : b) found = found || z == x;
        CHECK(found);
    }
}

TEST_CASE("select_invertible_rows certifies the h6 kernel pairing") {
    Ctx ctx(fixture("h6.mrf"));
    SmithData S = smith(ctx.h.incidence);
    auto rows = select_invertible_rows(ctx.sd, S.kernel_basis);
    REQUIRE(rows.has_value());
    CHECK(rows->size() == 2);
}
