#pragma once

#include <optional>

#include "powerfree/matrix.hpp"

namespace powerfree {

// Smith decomposition M = U * D * V with U, V unimodular and D diagonal with
// a nonnegative divisibility chain D11 | D22 | ...
// kernel_basis columns span ker(M) over the integers (the lattice Lambda):
// they are the columns i of V^-1 with D(i,i) = 0 (or i beyond the diagonal).
struct SmithData {
    IMat U, Uinv, D, V, Vinv;
    int rank = 0;
    IMat kernel_basis;  // cols x kappa; kappa = cols - rank

    // indices i < min(rows, cols) with D(i,i) == 0, plus rows >= cols count
    // implicitly through rank
    std::vector<int> zero_rows() const;
};

SmithData smith(const IMat& M);

// Integer solutions of M x = y: particular solution + the kernel lattice.
// nullopt when no integer solution exists.
struct DiophantineSolution {
    IVec x0;
    IMat kernel_basis;
};
std::optional<DiophantineSolution> solve_diophantine(const SmithData& S, const IVec& y);
std::optional<DiophantineSolution> solve_diophantine(const IMat& M, const IVec& y);

// Babai rounding of the particular solution against the kernel lattice:
// returns x0 - B * round(t) where t is the real least-squares solution of
// B t = x0.  Same coset, smaller norm.
IVec reduce_particular(const IVec& x0, const IMat& B);

}  // namespace powerfree
