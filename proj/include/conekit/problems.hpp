#pragma once

#include <optional>
#include <vector>

#include "conekit/types.hpp"

namespace conekit {

// min c^T x  s.t.  A x = b,  x >= 0 when nonneg is set.
struct LpProblem {
    Matrix A;
    Vector b;
    Vector c;
    bool nonneg = true;

    Index n() const { return A.cols(); }
    Index m() const { return A.rows(); }
    void validate() const;
};

// min x^T Q[0] x + c[0]^T x
// s.t. x^T Q[i] x + c[i]^T x + d[i-1] <= 0   (i = 1..k)
//      A x = b
// Q and c hold k+1 entries with the objective at index 0; d holds k entries.
struct QcqpProblem {
    std::vector<Matrix> Q;
    std::vector<Vector> c;
    std::vector<double> d;
    Matrix A;
    Vector b;

    Index n() const { return A.cols(); }
    Index m() const { return A.rows(); }
    Index k() const { return static_cast<Index>(Q.size()) - 1; }
    double d_of(Index i) const { return i == 0 ? 0.0 : d[static_cast<size_t>(i - 1)]; }
    void validate() const;
};

struct SocpCone {
    Matrix A;
    Vector b;
    Vector c;
    double d = 0.0;
};

// min c^T x  s.t.  ||A_i x + b_i|| <= c_i^T x + d_i,  F x = g.
struct SocpProblem {
    std::vector<SocpCone> cones;
    Matrix F;
    Vector g;
    Vector c;

    Index n() const { return c.size(); }
    Index m() const { return F.rows(); }
    Index k() const { return static_cast<Index>(cones.size()); }
    void validate() const;
};

struct SdpConstraint {
    Matrix A;
    double b = 0.0;
};

// min tr(C X)  s.t.  tr(A_i X) = b_i,  tr(G_j X) >= h_j,  X psd.
struct SdpProblem {
    Matrix C;
    std::vector<SdpConstraint> constraints;
    std::vector<SdpConstraint> ineq_constraints;
    std::optional<long long> rank_bound;

    Index n() const { return C.rows(); }
    void validate() const;
};

double objective(const LpProblem& p, const Vector& x);
double objective(const QcqpProblem& p, const Vector& x);
double objective(const SocpProblem& p, const Vector& x);
double objective(const SdpProblem& p, const Matrix& X);

// Bundle a point with its objective and worst constraint violation. The
// residual is the max over |equality residual|, the positive part of each
// inequality violation, and -lambda_min(X) for SDPs.
Solution check_feasible(const LpProblem& p, const Vector& x);
Solution check_feasible(const QcqpProblem& p, const Vector& x);
Solution check_feasible(const SocpProblem& p, const Vector& x);
Solution check_feasible(const SdpProblem& p, const Matrix& X, const Tolerances& tol = {});

}  // namespace conekit
