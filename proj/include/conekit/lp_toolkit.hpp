#pragma once

#include <vector>

#include "conekit/problems.hpp"

namespace conekit {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolveResult {
    LpStatus status = LpStatus::Optimal;
    Solution solution;
};

// One support-shrinking move: the point changes by step * direction and the
// targeted coordinate becomes exactly zero.
struct SparsifyPivot {
    Vector direction;
    double step = 0.0;
    Index zeroed = -1;
};

struct SparsifyTrace {
    std::vector<SparsifyPivot> pivots;
    Index initial_card = 0;
    Index final_card = 0;
};

struct SparsifyResult {
    Solution solution;
    SparsifyTrace trace;
};

// Dense two-phase tableau simplex with Bland's rule. Requires nonneg.
LpSolveResult solve_lp(const LpProblem& p, const Tolerances& tol = {});

// Shrink the support of an optimal point of a nonnegative LP by moving along
// kernel directions of the support columns until those columns are linearly
// independent; the result has cardinality at most m. A support kernel
// direction with nonzero reduced cost proves y suboptimal (NotOptimalInput).
SparsifyResult sparsify_nonneg(const LpProblem& p, const Solution& y,
                               const Tolerances& tol = {});

// Free-variable variant: flips the sign of the negative coordinates, runs
// sparsify_nonneg, and flips back. Requires nonneg unset.
SparsifyResult sparsify_free(const LpProblem& p, const Solution& y,
                             const Tolerances& tol = {});

// Exact cardinality-constrained solve by enumerating all size-kappa column
// subsets (BudgetExceeded when C(n, kappa) > budget). Deterministic: the
// lexicographically first optimal support wins ties.
LpSolveResult solve_sparsity_constrained_lp(const LpProblem& p, Index kappa,
                                            const Tolerances& tol = {},
                                            long long budget = 1000000);

}  // namespace conekit
