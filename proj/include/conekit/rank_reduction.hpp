#pragma once

#include <vector>

#include "conekit/hyperbolic_rank.hpp"
#include "conekit/problems.hpp"

namespace conekit {

// Per-cone row blocks B_i = [A_i; c_i^T] plus the always-pinned block
// B_{k+1} = [F; c^T]. A move direction must lie in the kernel of the pinned
// block and of every block whose cone is already tight.
struct ConstraintBlocks {
    std::vector<Matrix> cone_blocks;
    Matrix pinned;

    Matrix stacked() const;
};

ConstraintBlocks socp_constraint_blocks(const SocpProblem& p);

struct TightenChoice {
    Vector direction;
    long long cone = -1;
    double step = 0.0;
};

struct RankReductionStep {
    Vector direction;
    long long cone = -1;
    double step = 0.0;
    std::vector<long long> tight_set;
};

struct RankReductionTrace {
    std::vector<RankReductionStep> steps;
    long long initial_rank = 0;
    long long final_rank = 0;
};

struct RankReductionResult {
    Solution solution;
    RankReductionTrace trace;
};

// One tightening move: pick a kernel direction v of the pinned rows plus the
// registered tight cones, then the reachable cone whose boundary is nearest
// along +-v (smallest |root| of the per-cone quadratic, ties -> positive
// root, then smallest cone index). Throws NoTighteningDirection when no cone
// reacts to v or no admissible root exists.
TightenChoice tighten_step(const SocpProblem& p, const Vector& x,
                           const std::vector<long long>& tight_set,
                           const Tolerances& tol = {});

// Drive a feasible point toward min(k, ceil(n/(m'+1))) tight cones while the
// objective and Fx = g stay pinned; m' = max(m, m_1..m_k). Guarantees
// tight_count >= ceil(n/(m'+1)) - 1 when the stacked blocks have trivial
// kernel (KernelConditionViolated otherwise).
RankReductionResult socp_rank_reduce(const SocpProblem& p, const Solution& y,
                                     const Tolerances& tol = {});

// Epigraph lift min t, ||(P_i x, 1/4 + c_i^T x + d_i)|| <= 1/4 - c_i^T x - d_i
// over (x, t); the objective cone carries d_0 = -t. Values are preserved and
// no cone can have both spectrum entries zero.
SocpProblem qcqp_to_socp(const QcqpProblem& p, const Tolerances& tol = {});

// Rank reduction through the epigraph lift with the objective cone seeded
// tight; final qcqp_rank is at most
// 2k + 3 - ceil(n / (max(m-1, rank Q_0..Q_k) + 1)).
RankReductionResult qcqp_rank_reduce(const QcqpProblem& p, const Solution& y,
                                     const Tolerances& tol = {});

}  // namespace conekit
