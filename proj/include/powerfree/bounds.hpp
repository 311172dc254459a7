#pragma once

#include "powerfree/smith.hpp"
#include "powerfree/spectral.hpp"
#include "powerfree/words.hpp"

namespace powerfree {

// Certified bounds on the contracting coordinates of Parikh vectors of
// factors: m_i >= sup { |r_i(Psi(w))| : w in Fact^inf(h) }, computed from the
// suffix/prefix expansion on h^l; template filter threshold r*_i = 2 m_i.
struct BoundsProfile {
    int sharpen_power = 1;  // l: bounds evaluated on Suff(h^l) x Pref(h^l)
    // parallel to SpectralData::contracting
    std::vector<Interval> factor_bound;   // m_i enclosure
    std::vector<bool> factor_bound_exact; // true when m_i is an exact rational
    std::vector<Interval> r_star;         // 2 m_i

    bool empty() const { return factor_bound.empty(); }
};

BoundsProfile contracting_bounds(const Morphism& h, const SpectralData& sd, int l);

// Sound one-sided filter: excludes an integer vector only when some
// contracting coordinate certifiably exceeds its threshold.
class Filter {
public:
    Filter(const SpectralData& sd, const BoundsProfile& profile);

    bool passes(const IVec& d) const;
    bool passes_fast(const std::vector<int64_t>& d) const;  // same semantics

    const SpectralData& spectral() const { return *sd_; }
    const BoundsProfile& profile() const { return *profile_; }

private:
    const SpectralData* sd_;
    const BoundsProfile* profile_;
    // precomputed per row: threshold bounds
    std::vector<Rat> thr_hi_;           // r*_i upper endpoint
    std::vector<double> thr_hi_d_;      // padded double
    std::vector<std::optional<Rat>> exact_thr_;  // exact r* for rational rows
};

// Greedy selection of kappa rows of Q (contracting rows) such that Q' B is
// certifiably invertible; nullopt when no certified choice exists.
std::optional<std::vector<int>> select_invertible_rows(const SpectralData& sd, const IMat& B);

// Certified positive lower bound on the smallest eigenvalue of a symmetric
// PSD interval matrix (interval Cholesky + bisection); nullopt on failure.
std::optional<Rat> min_eig_lower_bound(const IvMat& G);

// Finite superset of { x in x0 + lattice(B) : all contracting |r_i(x)| <= r*_i },
// via the ball bound on coefficients.  Requires a certified invertible Q'B.
std::vector<IVec> kernel_coset_candidates(const IVec& x0, const IMat& B,
                                          const Filter& filter);

}  // namespace powerfree
