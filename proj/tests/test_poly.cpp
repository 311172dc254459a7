#include <doctest.h>

#include <random>

#include "powerfree/poly.hpp"
#include "powerfree/words.hpp"

using namespace powerfree;

namespace {

ZPoly zp(std::vector<long> c) {
    std::vector<Int> v(c.size());
    for (size_t i = 0; i < c.size(); ++i) v[i] = Int(c[i]);
    return ZPoly(std::move(v));
}

IMat incidence(const char* text) { return parse_morphism(text).incidence; }

const char* H6 =
    "alphabet: a b c d e f\n"
    "a -> a c e\nb -> a d f\nc -> b d f\nd -> b d c\ne -> a f e\nf -> b c e\n";

}  // namespace

TEST_CASE("char_poly examples") {
    // identity 2x2 -> (x-1)^2
    CHECK(char_poly(IMat::identity(2)) == zp({1, -2, 1}));

    // M_h6 -> x^6 - 3x^5 - 3x^4 + 9x^3 = x^3 (x-3)(x^2-3)
    CHECK(char_poly(incidence(H6)) == zp({0, 0, 0, 9, -3, -3, 1}));

    // Thue-Morse -> x^2 - 2x
    CHECK(char_poly(incidence("alphabet: 0 1\n0 -> 0 1\n1 -> 1 0\n")) == zp({0, -2, 1}));
}

TEST_CASE("Cayley-Hamilton on 100 random matrices") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> dim(1, 5), entry(-4, 4);
    for (int trial = 0; trial < 100; ++trial) {
        int n = dim(rng);
        IMat M(n, n);
        for (auto& x : M.a) x = Int(entry(rng));
        ZPoly cp = char_poly(M);
        QMat z = eval_at(cp.to_q(), to_rational(M));
        for (const Rat& x : z.a) CHECK(sgn(x) == 0);
    }
}

TEST_CASE("factor_poly: fixture characteristic polynomials") {
    // x^3 (x-3)(x^2-3); factors ordered by (degree, coefficients)
    auto f6 = factor_poly(char_poly(incidence(H6)));
    REQUIRE(f6.size() == 3);
    CHECK(f6[0].first == zp({-3, 1}));
    CHECK(f6[0].second == 1);
    CHECK(f6[1].first == zp({0, 1}));
    CHECK(f6[1].second == 3);
    CHECK(f6[2].first == zp({-3, 0, 1}));
    CHECK(f6[2].second == 1);

    // h8: two irreducible quartics
    const char* H8 =
        "alphabet: a b c d e f g h\n"
        "a -> h\nb -> g\nc -> f\nd -> e\ne -> h c\nf -> a c\ng -> d b\nh -> e b\n";
    auto f8 = factor_poly(char_poly(incidence(H8)));
    REQUIRE(f8.size() == 2);
    CHECK(f8[0].first.deg() == 4);
    CHECK(f8[1].first.deg() == 4);
    ZPoly prod = f8[0].first * f8[1].first;
    CHECK(prod == char_poly(incidence(H8)));

    // f_cassaigne: irreducible quartic x^4 - x^3 - 2x^2 + 2x - 1
    const char* F = "alphabet: 0 1 3 4\n0 -> 0 3\n1 -> 4 3\n3 -> 1\n4 -> 0 1\n";
    auto ff = factor_poly(char_poly(incidence(F)));
    REQUIRE(ff.size() == 1);
    CHECK(ff[0].first == zp({-1, 2, -2, -1, 1}));
}

TEST_CASE("factor_poly: random products recombine") {
    std::mt19937 rng(1357);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::vector<ZPoly> pool = {
        zp({1, 1}), zp({-1, 1}), zp({1, 0, 1}), zp({-2, 0, 1}), zp({1, 1, 1}),
        zp({-1, -1, 1}), zp({1, 0, 0, 1, 1}),
    };
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
        ZPoly prod = zp({1});
        int nf = 1 + int(rng() % 3);
        for (int i = 0; i < nf; ++i) prod = prod * pool[pick(rng)];
        auto factors = factor_poly(prod);
        ZPoly re = zp({1});
        for (auto& [q, m] : factors)
            for (int i = 0; i < m; ++i) re = re * q;
        CHECK(re == prod.primitive_part());
        // every factor must be nontrivial
        for (auto& [q, m] : factors) CHECK(q.deg() >= 1);
    }
    (void)entry;
}

TEST_CASE("squarefree decomposition") {
    ZPoly f = zp({0, 1}) * zp({0, 1}) * zp({-1, 1}) * zp({1, 1}) * zp({1, 1}) * zp({1, 1});
    auto sf = squarefree_decomposition(f);
    // (x-1) at multiplicity 1... grouped: x^2 (x-1) (x+1)^3
    Int check(1);
    int total = 0;
    for (auto& [q, m] : sf) total += q.deg() * m;
    CHECK(total == f.deg());
    (void)check;
}

TEST_CASE("sturm isolation finds all real roots") {
    // (x^2 - 2)(x - 3) : roots -sqrt2, sqrt2, 3
    ZPoly f = zp({-2, 0, 1}) * zp({-3, 1});
    auto roots = isolate_real_roots(f, Rat(1, 1 << 20));
    REQUIRE(roots.size() == 3);
    CHECK(roots[0].contains(Rat(-46341, 32768)) == (roots[0].lo <= Rat(-46341, 32768)));
    CHECK(roots[2].contains(Rat(3)));
    for (const Interval& r : roots) CHECK(r.width() <= Rat(1, 1 << 20));
    // x^2 + 1: no real roots
    CHECK(isolate_real_roots(zp({1, 0, 1}), Rat(1, 16)).empty());
    // exact rational root
    auto r2 = isolate_real_roots(zp({-6, 1}), Rat(1, 16));
    REQUIRE(r2.size() == 1);
    CHECK(r2[0].contains(Rat(6)));
}
