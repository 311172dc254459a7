#include <doctest.h>

#include <random>
#include <unordered_set>

#include "powerfree/words.hpp"

using namespace powerfree;

namespace {

const char* H6 =
    "alphabet: a b c d e f\n"
    "a -> a c e\nb -> a d f\nc -> b d f\nd -> b d c\ne -> a f e\nf -> b c e\n";

Word wparse(const Morphism& h, const std::string& s) {
    Word w;
    for (char c : s) {
        int i = h.source->index_of(std::string(1, c));
        REQUIRE(i >= 0);
        w.push_back(char(i));
    }
    return w;
}

}  // namespace

TEST_CASE("parse_morphism and errors") {
    Morphism h6 = parse_morphism(H6);
    CHECK(h6.source->size() == 6);
    for (const Word& r : h6.rules) CHECK(r.size() == 3);
    CHECK(h6.incidence(0, 0) == 1);  // |h(a)|_a = 1

    CHECK_THROWS_AS(parse_morphism("alphabet: a b\na -> a x\nb -> a\n"), ParseError);
    CHECK_THROWS_AS(parse_morphism("alphabet: a b\na -> a\n"), ParseError);  // missing rule
    CHECK_THROWS_AS(parse_morphism("alphabet: a a\na -> a\n"), ParseError);  // dup letter
    CHECK_THROWS_AS(parse_morphism("alphabet: a\na -> a\na -> a a\n"), ParseError);
    Morphism ident = parse_morphism("alphabet: a\na -> a\n");
    CHECK(ident.incidence(0, 0) == 1);
}

TEST_CASE("apply and parikh") {
    Morphism h6 = parse_morphism(H6);
    CHECK(h6.source->render(h6.apply_power(wparse(h6, "a"), 1)) == "ace");
    CHECK(h6.source->render(h6.apply_power(wparse(h6, "a"), 2)) == "acebdfafe");
    CHECK(h6.apply(Word()) == Word());

    IVec p = parikh(wparse(h6, "ace"), 6);
    CHECK(p == IVec{Int(1), Int(0), Int(1), Int(0), Int(1), Int(0)});
    CHECK(parikh(Word(), 6) == IVec(6, Int(0)));
    CHECK(parikh(wparse(h6, "bdcbdf"), 6) == IVec{Int(0), Int(2), Int(1), Int(2), Int(0), Int(1)});

    // Psi(h(w)) = M Psi(w) on random words
    std::mt19937 rng(5);
    for (int t = 0; t < 40; ++t) {
        Word w;
        int len = int(rng() % 50);
        for (int i = 0; i < len; ++i) w.push_back(char(rng() % 6));
        CHECK(parikh(h6.apply(w), 6) == h6.incidence.mul_vec(parikh(w, 6)));
    }
}

TEST_CASE("is_primitive") {
    CHECK(is_primitive(parse_morphism(H6)).primitive);
    PrimitivityResult tm = is_primitive(parse_morphism("alphabet: 0 1\n0 -> 0 1\n1 -> 1 0\n"));
    CHECK(tm.primitive);
    CHECK(tm.exponent == 1);
    CHECK(!is_primitive(parse_morphism("alphabet: a b\na -> a b\nb -> b\n")).primitive);
    const char* fixtures[] = {
        "alphabet: 0 1 3 4\n0 -> 0 3\n1 -> 4 3\n3 -> 1\n4 -> 0 1\n",
        "alphabet: 0 1 2 4\n0 -> 0 0 1\n1 -> 0 4 1\n2 -> 4 1\n4 -> 4 4 2\n",
        "alphabet: 0 2 3 5\n0 -> 0 3\n2 -> 5 3\n3 -> 2\n5 -> 0 2\n",
        "alphabet: a b c d e f g h\n"
        "a -> h\nb -> g\nc -> f\nd -> e\ne -> h c\nf -> a c\ng -> d b\nh -> e b\n",
    };
    for (const char* f : fixtures) CHECK(is_primitive(parse_morphism(f)).primitive);
}

TEST_CASE("factors_up_to: h6 basics") {
    Morphism h6 = parse_morphism(H6);
    auto f1 = factors_up_to(h6, 1);
    CHECK(f1.size() == 6);

    auto f3 = factors_up_to(h6, 3);
    std::unordered_set<std::string> set;
    for (const Word& w : f3) set.insert(h6.source->render(w));
    for (const char* s : {"ace", "bdf", "afe", "bdc", "adf", "bce"}) CHECK(set.count(s));
    CHECK(factors_up_to(h6, 0).empty());

    // monotone consistency
    auto f2 = factors_up_to(h6, 2);
    std::unordered_set<std::string> of3;
    for (const Word& w : f3)
        if (w.size() <= 2) of3.insert(h6.source->render(w));
    std::unordered_set<std::string> of2;
    for (const Word& w : f2) of2.insert(h6.source->render(w));
    CHECK(of2 == of3);

    CHECK_THROWS_AS(factors_up_to(parse_morphism("alphabet: a b\na -> a b\nb -> b\n"), 3),
                    MethodError);
}

TEST_CASE("factors occur in a generated prefix") {
    Morphism h6 = parse_morphism(H6);
    int L = 8;
    Word prefix = fixed_point_prefix(h6, size_t(10 * L * h6.max_image_len()));
    std::string ps(prefix.begin(), prefix.end());
    for (const Word& w : factors_up_to(h6, L)) {
        std::string f(w.begin(), w.end());
        CHECK(ps.find(f) != std::string::npos);
    }
}

TEST_CASE("image_factors_up_to") {
    Morphism h6 = parse_morphism(H6);
    // identity outer morphism: same factor set
    Morphism id = make_morphism(h6.source, h6.source,
                                {wparse(h6, "a"), wparse(h6, "b"), wparse(h6, "c"),
                                 wparse(h6, "d"), wparse(h6, "e"), wparse(h6, "f")});
    auto fid = image_factors_up_to(id, h6, 4);
    auto f4 = factors_up_to(h6, 4);
    CHECK(fid.size() == f4.size());

    // g3 image contains the rule image of a
    Morphism g3 = parse_morphism(
        "alphabet: a b c d e f\ntarget: a b c\n"
        "a -> b b b a a b a a a c\nb -> b c c a c c c b c c\nc -> c c c c b b b c b c\n"
        "d -> c c c c c c c c a a\ne -> b b b b b c a b a a\nf -> a a a a a a a b a a\n");
    g3 = make_morphism(h6.source, g3.target, g3.rules);
    auto img = image_factors_up_to(g3, h6, 10);
    std::unordered_set<std::string> set;
    for (const Word& w : img) set.insert(g3.target->render(w));
    CHECK(set.count("bbbaabaaac"));

    // all length-<=2 words over the image alphabet appear (compared against a
    // long generated prefix)
    Word prefix = g3.apply(fixed_point_prefix(h6, 10000));
    std::unordered_set<std::string> in_prefix;
    for (size_t i = 0; i + 1 < prefix.size(); ++i) {
        in_prefix.insert(g3.target->render(prefix.substr(i, 1)));
        in_prefix.insert(g3.target->render(prefix.substr(i, 2)));
    }
    auto img2 = image_factors_up_to(g3, h6, 2);
    std::unordered_set<std::string> enumerated;
    for (const Word& w : img2) enumerated.insert(g3.target->render(w));
    for (const std::string& s : in_prefix) CHECK(enumerated.count(s));
}

TEST_CASE("image_factors_up_to with an erasing letter") {
    // b is erased; factors of the image are runs of a's images
    Morphism h = parse_morphism("alphabet: a b\na -> a b a\nb -> a a\n");
    REQUIRE(is_primitive(h).primitive);
    Morphism g = parse_morphism("alphabet: a b\ntarget: x\na -> x\nb ->\n");
    g = make_morphism(h.source, g.target, g.rules);
    auto img = image_factors_up_to(g, h, 3);
    CHECK(img.size() == 3);  // x, xx, xxx
}

TEST_CASE("fixed_point_prefix handles first-letter cycles") {
    // h8 has no letter with h(a) starting a, but h8^2 fixes e
    Morphism h8 = parse_morphism(
        "alphabet: a b c d e f g h\n"
        "a -> h\nb -> g\nc -> f\nd -> e\ne -> h c\nf -> a c\ng -> d b\nh -> e b\n");
    Word p = fixed_point_prefix(h8, 2000);
    CHECK(p.size() == 2000);
    // prefix of a fixed point of a power: stable under that power
    Word q = fixed_point_prefix(h8, 500);
    CHECK(std::equal(q.begin(), q.end(), p.begin()));
}
