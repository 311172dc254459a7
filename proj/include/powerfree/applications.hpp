#pragma once

#include "powerfree/templates.hpp"

namespace powerfree {

// Phi: (Sigma*, .) -> (Z^d, +) as the matrix F with Phi(w) = F Psi(w).
// `uniform` requests equal block lengths, encoded by an all-ones row.
struct GroupMap {
    IMat F;  // d x n
    bool has_ones_row() const;
    GroupMap with_uniform_row() const;  // prepends the ones row if absent
};

// .gmap text: '#' comments, a "dim: d" line, lines "tok -> z1 ... zd";
// column order follows the supplied alphabet.
GroupMap parse_gmap(const std::string& text, const Alphabet& alphabet);
// letters whose tokens parse as integers induce the valuation map (dim 1)
GroupMap value_map_from_tokens(const Alphabet& alphabet);

// Finite superset of the realizable templates [eps..eps, d_1..d_{k-1}] with
// F d_i = 0 (k-th powers modulo Phi pulled into template space).
std::vector<Template> additive_candidates(const Morphism& h, const GroupMap& phi, int k,
                                          const Filter& filter);

// Finite superset of the templates over h's alphabet that are parents by g
// of the trivial k-template over g's target and realizable by h.
std::vector<Template> long_abelian_candidates(const Morphism& h, const Morphism& g, int k,
                                              const Filter& filter);

struct ApplicationOutcome {
    DecisionOutcome decision;
    size_t candidate_count = 0;
    // sub-threshold stage of the long-abelian check
    int64_t scanned_period_lo = 0, scanned_period_hi = -1;
    std::optional<Word> short_witness;   // image-alphabet word
    int64_t short_witness_period = 0;
    int composed_power = 0;              // j when g was replaced by g o h^j
};

ApplicationOutcome decide_additive(const Morphism& h, GroupMap phi, bool uniform, int k,
                                   const DecideConfig& cfg);

ApplicationOutcome decide_long_abelian(const Morphism& h, const Morphism& g, int k,
                                       int64_t min_period, const DecideConfig& cfg);

}  // namespace powerfree
