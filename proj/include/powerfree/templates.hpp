#pragma once

#include <unordered_map>

#include "powerfree/bounds.hpp"

namespace powerfree {

// k-template [a_1..a_{k+1}, d_1..d_{k-1}]: borders are letters or epsilon
// (-1), gaps are integer vectors indexed by the alphabet.
struct Template {
    int k = 2;
    std::vector<int16_t> borders;             // k+1 entries, -1 = epsilon
    std::vector<std::vector<int64_t>> gaps;   // (k-1) x n

    bool operator==(const Template& o) const {
        return k == o.k && borders == o.borders && gaps == o.gaps;
    }
    int64_t delta_l1() const;  // max gap l1 norm
    std::string render(const Alphabet& a) const;
};

struct TemplateHash {
    size_t operator()(const Template& t) const;
};

Template trivial_template(int k, int n);

// word = a_1 w_1 a_2 w_2 ... w_k a_{k+1} with the Parikh gap constraints
struct Realization {
    Word word;
    // block i spans [block_begin[i], block_end[i]); borders sit between
    std::vector<int> block_begin, block_end;
};

std::optional<Realization> realizes(const Word& w, const Template& t);
bool validate_realization(const Realization& r, const Template& t);

// R_B membership: true unless some gap vector certifiably violates a bound
bool in_filter(const Template& t, const Filter& filter);

// Parent computation.  `g` maps parent-side letters to child-side words
// (g = the iterated morphism h for the in-system closure; an outer morphism
// for the morphic-image application).  The filter constrains parent gap
// vectors (realizability by the inner morphism).
struct ParentEdge {
    Template parent;
    std::vector<std::pair<Word, Word>> splits;  // per position: (p_i, s_i)
};

class ParentEngine {
public:
    // letter_borders_only: restrict parent borders to genuine letters, which
    // is complete for ancestor closures (the preimage construction always
    // yields letter borders) and keeps the closure lean.  The full
    // epsilon-inclusive relation remains available for direct parent queries.
    ParentEngine(const Morphism& g, const Filter& filter, bool letter_borders_only = false);

    // realizable-parent superset of `child` (child over g's target alphabet)
    std::vector<ParentEdge> parents(const Template& child) const;

    const Morphism& morphism() const { return *g_; }

private:
    struct Option {
        int16_t border;          // parent-side letter or -1
        std::vector<int64_t> psi_p, psi_s;  // child-alphabet Parikh vectors
        Word p, s;               // representative split
    };
    const Morphism* g_;
    const Filter* filter_;
    SmithData smith_;
    int nt_;  // child alphabet size
    bool letter_only_ = false;
    std::vector<std::vector<Option>> options_per_border_;  // [letter+1] -> options
    mutable std::unordered_map<std::string, std::shared_ptr<std::vector<std::vector<int64_t>>>>
        coset_memo_;

    std::vector<Option> options_for(int16_t child_border) const;
    const std::vector<std::vector<int64_t>>& candidates_for(const IVec& v) const;
};

int64_t scan_threshold(const std::vector<Template>& S, const Morphism& h, int k);

struct ClosureResult {
    std::vector<Template> all;                       // includes seeds (first)
    std::unordered_map<size_t, std::pair<size_t, std::vector<std::pair<Word, Word>>>>
        edge;                                        // index -> (child index, splits)
    size_t seed_count = 0;
    size_t parents_of_first_seed = 0;
    bool capped = false;
};

ClosureResult ancestor_closure(const std::vector<Template>& seeds, const ParentEngine& engine,
                               size_t cap);

enum class Verdict { Avoided, Realized, Inapplicable, ResourceExceeded };

struct ScanHit {
    Word word;
    size_t template_index = 0;
    Realization realization;
};

// scan all factors of Fact^inf(h) up to length s against the template set;
// returns the first hit on a seed if any, else the first hit overall
std::optional<ScanHit> scan_factors(const Morphism& h, const std::vector<Template>& S,
                                    size_t seed_count, int64_t s, size_t* scanned);

struct DecideConfig {
    int sharpen_power = 2;   // l (bounds power, applied to the pipeline morphism)
    size_t max_closure = 10'000'000;
    unsigned precision_bits = 80;
};

struct DecisionOutcome {
    Verdict verdict = Verdict::Avoided;
    std::optional<ScanHit> witness;          // template-level witness
    std::optional<Word> seed_witness;        // word realizing a seed template
    size_t seed_index = 0;                   // which seed, when known
    // certificate data
    std::vector<Interval> r_star;
    int sharpen_power = 1;
    size_t parents_of_seed = 0;
    size_t closure_size = 0;
    int64_t threshold_s = 0;
    size_t factors_scanned = 0;
    std::string error;
};

// Full decision for a seed set over a primitive morphism (Theorem-level
// driver; single seed = the template decision problem).
DecisionOutcome decide_templates(const std::vector<Template>& seeds, const Morphism& h,
                                 const DecideConfig& cfg);

}  // namespace powerfree
