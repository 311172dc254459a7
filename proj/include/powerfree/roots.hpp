#pragma once

#include "powerfree/poly.hpp"

namespace powerfree {

// Certified enclosure of one root of a squarefree integer polynomial.
// Real roots carry a sign-change bracket (or an exact point); complex roots
// carry a certified disk (Pellet count = 1) strictly off the real axis,
// reported as the circumscribing rectangle.
struct RootEnclosure {
    bool real = true;
    bool exact = false;       // rational root, enclosure is a point
    Interval re, im;          // rectangle enclosure

    // refinement state
    Interval bracket;         // real case: f changes sign on [lo, hi]
    Rat cr, ci, radius;       // complex case: certified disk

    CInterval box() const { return CInterval(re, im); }
    RootEnclosure conjugate() const;
};

// All roots of a squarefree polynomial, real ones sorted ascending first,
// then complex ones sorted by (re, im) with the positive-imaginary member of
// each pair listed before its conjugate.
std::vector<RootEnclosure> isolate_all_roots(const ZPoly& q, const Rat& width);

// Shrink an enclosure until its box has width <= w on both axes.
void refine_root(const ZPoly& q, RootEnclosure& r, const Rat& w);

}  // namespace powerfree
