#pragma once

#include <memory>
#include <string>
#include <unordered_set>

#include "powerfree/matrix.hpp"

namespace powerfree {

// Letters are arbitrary tokens; words store 0-based letter indices, one per
// char, so hashing and substring machinery ride on std::string.
using Word = std::string;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MethodError : std::runtime_error {  // method-inapplicable conditions
    using std::runtime_error::runtime_error;
};

struct Alphabet {
    std::vector<std::string> letters;

    int size() const { return int(letters.size()); }
    int index_of(const std::string& tok) const;  // -1 if absent
    std::string render(const Word& w, const std::string& sep = "") const;
    Word parse_word(const std::vector<std::string>& tokens) const;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

struct Morphism {
    AlphabetPtr source;
    AlphabetPtr target;
    std::vector<Word> rules;  // image of each source letter
    IMat incidence;           // (target letter) x (source letter) counts
    // optional row basis hints from the .mrf file ("rows:" lines); candidate
    // left Jordan chain rows for the contracting eigenvalues, verified
    // against the incidence matrix before use
    std::vector<QVec> row_hints;

    bool is_endomorphism() const { return source.get() == target.get(); }
    int max_image_len() const;   // delta
    int min_image_len() const;
    Word apply(const Word& w) const;
    Word apply_power(const Word& w, int k) const;
    Morphism power(int k) const;             // endomorphism only
    static Morphism compose(const Morphism& outer, const Morphism& inner);
};

Morphism make_morphism(AlphabetPtr src, AlphabetPtr tgt, std::vector<Word> rules);

// .mrf text: '#' comments, one "alphabet: tok tok ..." line, then rule lines
// "tok -> tok tok ..." (empty right side = erasing rule).
Morphism parse_morphism(const std::string& text);

IVec parikh(const Word& w, int alphabet_size);

struct PrimitivityResult {
    bool primitive = false;
    int exponent = 0;  // smallest k with M^k positive, when primitive
};
PrimitivityResult is_primitive(const Morphism& h);

// All factors of Fact^inf(h) of length <= L (h primitive required).
std::vector<Word> factors_up_to(const Morphism& h, int L);

// Factors of g(Fact^inf(h)) of length <= L.
std::vector<Word> image_factors_up_to(const Morphism& g, const Morphism& h, int L);

// Prefix of length `len` of a fixed point of h^c, where c is the smallest
// power fixing the first letter of some image cycle.
Word fixed_point_prefix(const Morphism& h, size_t len);

}  // namespace powerfree
