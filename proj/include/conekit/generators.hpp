#pragma once

#include <variant>
#include <vector>

#include "conekit/problems.hpp"

namespace conekit {

// An instance together with a known optimum whose cardinality meets the
// sparsification bound with equality, so sparsifiers cannot improve on it.
struct TightInstance {
    std::variant<QcqpProblem, SocpProblem> problem;
    Vector x_star;
    double optimal_value = 0.0;
    long long cardinality_bound = 0;
};

// QCQP with k constraints whose every optimum has cardinality exactly
// m - 1 + sum_i (r_i + 1); optimal value k - r0. ranks holds r_0..r_k.
// Throws BoundNotNontrivial unless the bound is < n.
TightInstance tight_qcqp(Index n, Index m, Index k, const std::vector<Index>& ranks);

// SOCP with k cones whose every optimum has cardinality exactly
// m + sum_i (m_i + 1); optimal value k. sizes holds m_1..m_k.
TightInstance tight_socp(Index n, Index m, Index k, const std::vector<Index>& sizes);

}  // namespace conekit
