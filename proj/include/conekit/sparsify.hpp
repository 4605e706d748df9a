#pragma once

#include <string>
#include <vector>

#include "conekit/lp_toolkit.hpp"

namespace conekit {

// One auxiliary-LP row and where it came from: source is the constraint index
// (-1 for the shared linear block), relation a fixed label such as
// "P_i x = P_i y" or "Fx = g".
struct AuxRow {
    long long source = -1;
    std::string relation;
};

// Free-variable LP whose feasible set pins every quadratic/conic quantity of
// the original problem at its value in y; row count equals the sparsification
// cardinality bound.
struct AuxiliaryLp {
    LpProblem lp;
    std::vector<AuxRow> row_provenance;
};

AuxiliaryLp qcqp_auxiliary_lp(const QcqpProblem& p, const Vector& y,
                              const Tolerances& tol = {});
AuxiliaryLp socp_auxiliary_lp(const SocpProblem& p, const Vector& y);

// Support reduction for an optimal point of a QCQP: sparsify_free on the
// auxiliary LP. Result cardinality is at most m - 1 + sum_i (rank(Q_i) + 1).
SparsifyResult sparsify_qcqp(const QcqpProblem& p, const Solution& y,
                             const Tolerances& tol = {});

// SOCP variant; result cardinality is at most m + sum_i (m_i + 1).
SparsifyResult sparsify_socp(const SocpProblem& p, const Solution& y,
                             const Tolerances& tol = {});

}  // namespace conekit
