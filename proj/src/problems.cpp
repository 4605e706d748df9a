#include "conekit/problems.hpp"

#include <Eigen/Eigenvalues>

namespace conekit {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw DimensionMismatch(what);
}

void require_finite(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void LpProblem::validate() const {
    require(b.size() == A.rows(), "lp: rows(A) != size(b)");
    require(c.size() == A.cols(), "lp: cols(A) != size(c)");
    require_finite(A.allFinite() && b.allFinite() && c.allFinite(), "lp: non-finite data");
}

void QcqpProblem::validate() const {
    require(!Q.empty() && Q.size() == c.size(), "qcqp: Q and c must both hold k+1 entries");
    require(d.size() + 1 == Q.size(), "qcqp: d must hold k entries");
    const Index nn = A.cols();
    require(b.size() == A.rows(), "qcqp: rows(A) != size(b)");
    for (size_t i = 0; i < Q.size(); ++i) {
        require(Q[i].rows() == nn && Q[i].cols() == nn, "qcqp: Q_i must be n x n");
        require(c[i].size() == nn, "qcqp: c_i must have length n");
        require_finite(Q[i].allFinite() && c[i].allFinite(), "qcqp: non-finite data");
    }
    require_finite(A.allFinite() && b.allFinite(), "qcqp: non-finite data");
    for (double di : d) require_finite(std::isfinite(di), "qcqp: non-finite data");
}

void SocpProblem::validate() const {
    const Index nn = n();
    require(F.cols() == nn || F.rows() == 0, "socp: cols(F) != n");
    require(g.size() == F.rows(), "socp: rows(F) != size(g)");
    for (const SocpCone& cone : cones) {
        require(cone.A.cols() == nn, "socp: cols(A_i) != n");
        require(cone.b.size() == cone.A.rows(), "socp: rows(A_i) != size(b_i)");
        require(cone.c.size() == nn, "socp: c_i must have length n");
        require_finite(cone.A.allFinite() && cone.b.allFinite() && cone.c.allFinite() &&
                           std::isfinite(cone.d),
                       "socp: non-finite data");
    }
    require_finite(F.allFinite() && g.allFinite() && c.allFinite(), "socp: non-finite data");
}

void SdpProblem::validate() const {
    require(C.rows() == C.cols(), "sdp: C must be square");
    for (const SdpConstraint& ct : constraints)
        require(ct.A.rows() == C.rows() && ct.A.cols() == C.cols(), "sdp: A_i must match dim(C)");
    for (const SdpConstraint& ct : ineq_constraints)
        require(ct.A.rows() == C.rows() && ct.A.cols() == C.cols(), "sdp: G_j must match dim(C)");
    require_finite(C.allFinite(), "sdp: non-finite data");
}

double objective(const LpProblem& p, const Vector& x) {
    require(x.size() == p.n(), "lp objective: point has wrong length");
    return p.c.dot(x);
}

double objective(const QcqpProblem& p, const Vector& x) {
    require(x.size() == p.n(), "qcqp objective: point has wrong length");
    return x.dot(p.Q[0] * x) + p.c[0].dot(x);
}

double objective(const SocpProblem& p, const Vector& x) {
    require(x.size() == p.n(), "socp objective: point has wrong length");
    return p.c.dot(x);
}

double objective(const SdpProblem& p, const Matrix& X) {
    require(X.rows() == p.n() && X.cols() == p.n(), "sdp objective: point has wrong shape");
    return (p.C.array() * X.array()).sum();
}

Solution check_feasible(const LpProblem& p, const Vector& x) {
    p.validate();
    require(x.size() == p.n(), "lp check_feasible: point has wrong length");
    double res = p.m() > 0 ? (p.A * x - p.b).cwiseAbs().maxCoeff() : 0.0;
    if (p.nonneg && x.size() > 0) res = std::max(res, -std::min(0.0, x.minCoeff()));
    return Solution{x, objective(p, x), res};
}

Solution check_feasible(const QcqpProblem& p, const Vector& x) {
    p.validate();
    require(x.size() == p.n(), "qcqp check_feasible: point has wrong length");
    double res = p.m() > 0 ? (p.A * x - p.b).cwiseAbs().maxCoeff() : 0.0;
    for (Index i = 1; i <= p.k(); ++i) {
        const double q = x.dot(p.Q[static_cast<size_t>(i)] * x) +
                         p.c[static_cast<size_t>(i)].dot(x) + p.d_of(i);
        res = std::max(res, q);
    }
    return Solution{x, objective(p, x), std::max(res, 0.0)};
}

Solution check_feasible(const SocpProblem& p, const Vector& x) {
    p.validate();
    require(x.size() == p.n(), "socp check_feasible: point has wrong length");
    double res = p.m() > 0 ? (p.F * x - p.g).cwiseAbs().maxCoeff() : 0.0;
    for (const SocpCone& cone : p.cones)
        res = std::max(res, (cone.A * x + cone.b).norm() - (cone.c.dot(x) + cone.d));
    return Solution{x, objective(p, x), std::max(res, 0.0)};
}

Solution check_feasible(const SdpProblem& p, const Matrix& X, const Tolerances& tol) {
    tol.validate();
    p.validate();
    require(X.rows() == p.n() && X.cols() == p.n(), "sdp check_feasible: point has wrong shape");
    const double scale = 1.0 + X.norm();
    if ((X - X.transpose()).cwiseAbs().maxCoeff() > tol.feas_tol * scale)
        throw NotSymmetricError("sdp check_feasible: point is not symmetric");
    double res = 0.0;
    for (const SdpConstraint& ct : p.constraints)
        res = std::max(res, std::abs((ct.A.array() * X.array()).sum() - ct.b));
    for (const SdpConstraint& ct : p.ineq_constraints)
        res = std::max(res, ct.b - (ct.A.array() * X.array()).sum());
    if (p.n() > 0) {
        Eigen::SelfAdjointEigenSolver<Matrix> es((X + X.transpose()) / 2.0,
                                                 Eigen::EigenvaluesOnly);
        res = std::max(res, -es.eigenvalues()[0]);
    }
    return Solution{X, objective(p, X), std::max(res, 0.0)};
}

}  // namespace conekit
