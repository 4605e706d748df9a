#pragma once

#include <vector>

#include "conekit/problems.hpp"

namespace conekit {

// Eigenvalues of a feasible point under the hyperbolic-polynomial view of its
// problem class, with the induced rank. For SOCPs the eigenvalues come in
// pairs c_i^T x + d_i +- ||A_i x + b_i||; tight_count is the number of tight
// cones s(x) and doubly_zero_count the number with both pair entries zero,
// so rank = 2k - s - e. QCQP points are read through the epigraph SOCP and
// rank = 2k + 1 - s with s counting tight quadratic constraints.
struct HyperbolicSpectrum {
    std::vector<double> eigenvalues;
    long long rank = 0;
    long long tight_count = 0;
    long long doubly_zero_count = 0;
};

HyperbolicSpectrum lp_rank(const Vector& x, const Tolerances& tol = {});
HyperbolicSpectrum sdp_rank(const Matrix& X, const Tolerances& tol = {});
HyperbolicSpectrum socp_spectrum(const SocpProblem& p, const Vector& x,
                                 const Tolerances& tol = {});
HyperbolicSpectrum qcqp_rank(const QcqpProblem& p, const Vector& x,
                             const Tolerances& tol = {});

}  // namespace conekit
