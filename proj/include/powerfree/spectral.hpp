#pragma once

#include <complex>
#include <memory>

#include "powerfree/numberfield.hpp"
#include "powerfree/roots.hpp"

namespace powerfree {

enum class ModulusClass { Contracting, Expanding, Unresolved };

struct SpectralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One Jordan block of one root of one irreducible factor.
struct JordanBlock {
    int factor = 0;      // index into SpectralData::factors
    int root = 0;        // index into SpectralData::root_boxes[factor]
    int size = 1;
    int col_start = 0;   // first row/column index in P / J
    ModulusClass cls = ModulusClass::Unresolved;
};

// A linear functional row with exact, certified, and fast representations.
struct RowFunctional {
    bool rational = false;
    QVec exact;                            // set when rational
    std::vector<CInterval> iv;
    std::vector<std::complex<double>> shadow;
    double shadow_err = 0;                 // entrywise deviation bound

    int dim() const { return int(iv.size()); }
    CInterval eval_iv(const IVec& x) const;
    Rat eval_abs_exact(const IVec& x) const;  // |row . x| (rational rows only)
};

// Certified Jordan data of an integer matrix.
struct SpectralData {
    IMat M;
    int n = 0;
    ZPoly charpoly;
    std::vector<ZPoly> factors;            // irreducible, deterministic order
    std::vector<int> multiplicity;
    std::vector<std::vector<RootEnclosure>> root_boxes;  // per factor
    std::vector<std::shared_ptr<NumberField>> fields;    // null for degree-1

    std::vector<JordanBlock> blocks;       // in P column order
    std::vector<int> block_of_index;       // b(i): column -> block id
    CIvMat P, Pinv, J;
    std::vector<int> contracting;          // column indices with |lambda| < 1
    std::vector<int> expanding;

    // Left Jordan chain rows for every contracting block, head first
    // (row i satisfies row_i M = lambda row_i + row_{i+1}); each chain is
    // scaled so the head's first nonzero entry is 1.  Indexed parallel to
    // `contracting` (one entry per contracting column index).
    std::vector<RowFunctional> contracting_rows;
    // eigenvalue box of each contracting row's block
    std::vector<CInterval> contracting_lambda;

    bool has_unresolved() const;
    CInterval eigenvalue_box(int block_id) const;
};

// Certified spectral decomposition with enclosures of width <= precision.
// min_width: refinement floor before declaring a modulus-1 straddle
// unresolved (the caller must treat the matrix as outside scope).
SpectralData spectral_data(const IMat& M, const Rat& precision,
                           const Rat& min_width = Rat(Int(1), Int(1) << 256));

// Replace the contracting rows by user-supplied candidates (one per
// contracting index) after exact verification that they form left Jordan
// chains of M for the rational contracting eigenvalues.  Returns false and
// leaves the data untouched when the hints do not verify.
bool apply_row_hints(SpectralData& sd, const std::vector<QVec>& hints);

}  // namespace powerfree
