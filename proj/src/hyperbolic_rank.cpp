#include "conekit/hyperbolic_rank.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "conekit/linalg.hpp"

namespace conekit {

namespace {

double cone_scale(const SocpCone& cone) {
    const double data = std::sqrt(cone.A.squaredNorm() + cone.b.squaredNorm() +
                                  cone.c.squaredNorm());
    return 1.0 + std::abs(cone.d) + data;
}

void require_feasible(const Solution& s, const Tolerances& tol, const char* what) {
    if (!s.feasible(tol)) throw InfeasiblePointError(what);
}

}  // namespace

HyperbolicSpectrum lp_rank(const Vector& x, const Tolerances& tol) {
    tol.validate();
    HyperbolicSpectrum out;
    out.eigenvalues.assign(x.data(), x.data() + x.size());
    const double scale = x.size() > 0 ? 1.0 + x.cwiseAbs().maxCoeff() : 1.0;
    for (Index i = 0; i < x.size(); ++i)
        if (std::abs(x[i]) > tol.zero_tol * scale) ++out.rank;
    return out;
}

HyperbolicSpectrum sdp_rank(const Matrix& X, const Tolerances& tol) {
    tol.validate();
    if (X.rows() != X.cols()) throw DimensionMismatch("sdp_rank expects a square matrix");
    const double scale = 1.0 + X.norm();
    if (X.rows() > 0 && (X - X.transpose()).cwiseAbs().maxCoeff() > tol.feas_tol * scale)
        throw NotSymmetricError("sdp_rank input is not symmetric");

    HyperbolicSpectrum out;
    if (X.rows() == 0) return out;
    Eigen::SelfAdjointEigenSolver<Matrix> es((X + X.transpose()) / 2.0, Eigen::EigenvaluesOnly);
    const Vector& lam = es.eigenvalues();
    out.eigenvalues.assign(lam.data(), lam.data() + lam.size());
    const double top = lam.cwiseAbs().maxCoeff();
    for (Index i = 0; i < lam.size(); ++i)
        if (std::abs(lam[i]) > tol.rank_tol_rel * top) ++out.rank;
    return out;
}

HyperbolicSpectrum socp_spectrum(const SocpProblem& p, const Vector& x,
                                 const Tolerances& tol) {
    tol.validate();
    require_feasible(check_feasible(p, x), tol, "socp_spectrum: point is not feasible");

    HyperbolicSpectrum out;
    for (const SocpCone& cone : p.cones) {
        const double nm = (cone.A * x + cone.b).norm();
        const double y = cone.c.dot(x) + cone.d;
        out.eigenvalues.push_back(y + nm);
        out.eigenvalues.push_back(y - nm);
        const double thresh = tol.feas_tol * cone_scale(cone);
        if (std::abs(y - nm) <= thresh) {
            ++out.tight_count;
            if (y <= thresh) ++out.doubly_zero_count;
        }
    }
    out.rank = 2 * p.k() - out.tight_count - out.doubly_zero_count;
    return out;
}

HyperbolicSpectrum qcqp_rank(const QcqpProblem& p, const Vector& x, const Tolerances& tol) {
    tol.validate();
    require_feasible(check_feasible(p, x), tol, "qcqp_rank: point is not feasible");

    HyperbolicSpectrum out;
    const double t = objective(p, x);
    for (Index i = 0; i <= p.k(); ++i) {
        const Matrix& Q = p.Q[static_cast<size_t>(i)];
        const Vector& c = p.c[static_cast<size_t>(i)];
        const double d = p.d_of(i) - (i == 0 ? t : 0.0);
        const double affine = c.dot(x) + d;
        const Matrix P = psd_factor(Q, tol);
        // Epigraph cone of the quadratic: ||(P x, 1/4 + affine)|| <= 1/4 - affine.
        const double nm = std::sqrt((P * x).squaredNorm() + (0.25 + affine) * (0.25 + affine));
        const double y = 0.25 - affine;
        out.eigenvalues.push_back(y + nm);
        out.eigenvalues.push_back(y - nm);
        if (i >= 1) {
            const double scale =
                1.0 + std::abs(p.d_of(i)) + std::sqrt(Q.squaredNorm() + c.squaredNorm());
            if (std::abs(x.dot(Q * x) + affine) <= tol.feas_tol * scale) ++out.tight_count;
        }
    }
    out.rank = 2 * p.k() + 1 - out.tight_count;
    return out;
}

}  // namespace conekit
