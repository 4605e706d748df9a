#include "conekit/sparsify.hpp"

#include "conekit/linalg.hpp"

namespace conekit {

AuxiliaryLp qcqp_auxiliary_lp(const QcqpProblem& p, const Vector& y, const Tolerances& tol) {
    p.validate();
    if (y.size() != p.n())
        throw DimensionMismatch("qcqp_auxiliary_lp: point has wrong length");

    std::vector<Matrix> P;
    Index rows = 0;
    for (Index i = 0; i <= p.k(); ++i) {
        P.push_back(psd_factor(p.Q[static_cast<size_t>(i)], tol));
        rows += P.back().rows();
    }
    rows += p.k() + p.m();

    AuxiliaryLp aux;
    aux.lp.A = Matrix::Zero(rows, p.n());
    aux.lp.b = Vector::Zero(rows);
    aux.lp.c = p.c[0];
    aux.lp.nonneg = false;

    Index at = 0;
    for (Index i = 0; i <= p.k(); ++i) {
        const Matrix& Pi = P[static_cast<size_t>(i)];
        aux.lp.A.middleRows(at, Pi.rows()) = Pi;
        aux.lp.b.segment(at, Pi.rows()) = Pi * y;
        for (Index r = 0; r < Pi.rows(); ++r)
            aux.row_provenance.push_back(AuxRow{i, "P_i x = P_i y"});
        at += Pi.rows();
    }
    for (Index i = 1; i <= p.k(); ++i) {
        aux.lp.A.row(at) = p.c[static_cast<size_t>(i)].transpose();
        aux.lp.b[at] = p.c[static_cast<size_t>(i)].dot(y);
        aux.row_provenance.push_back(AuxRow{i, "c_i^T x = c_i^T y"});
        ++at;
    }
    if (p.m() > 0) {
        aux.lp.A.middleRows(at, p.m()) = p.A;
        aux.lp.b.segment(at, p.m()) = p.b;
        for (Index r = 0; r < p.m(); ++r) aux.row_provenance.push_back(AuxRow{-1, "Ax = b"});
    }
    return aux;
}

AuxiliaryLp socp_auxiliary_lp(const SocpProblem& p, const Vector& y) {
    p.validate();
    if (y.size() != p.n())
        throw DimensionMismatch("socp_auxiliary_lp: point has wrong length");

    Index rows = p.m();
    for (const SocpCone& cone : p.cones) rows += cone.A.rows() + 1;

    AuxiliaryLp aux;
    aux.lp.A = Matrix::Zero(rows, p.n());
    aux.lp.b = Vector::Zero(rows);
    aux.lp.c = p.c;
    aux.lp.nonneg = false;

    Index at = 0;
    for (Index i = 0; i < p.k(); ++i) {
        const SocpCone& cone = p.cones[static_cast<size_t>(i)];
        aux.lp.A.middleRows(at, cone.A.rows()) = cone.A;
        aux.lp.b.segment(at, cone.A.rows()) = cone.A * y;
        for (Index r = 0; r < cone.A.rows(); ++r)
            aux.row_provenance.push_back(AuxRow{i, "A_i x = A_i y"});
        at += cone.A.rows();
    }
    for (Index i = 0; i < p.k(); ++i) {
        const SocpCone& cone = p.cones[static_cast<size_t>(i)];
        aux.lp.A.row(at) = cone.c.transpose();
        aux.lp.b[at] = cone.c.dot(y);
        aux.row_provenance.push_back(AuxRow{i, "c_i^T x = c_i^T y"});
        ++at;
    }
    if (p.m() > 0) {
        aux.lp.A.middleRows(at, p.m()) = p.F;
        aux.lp.b.segment(at, p.m()) = p.g;
        for (Index r = 0; r < p.m(); ++r) aux.row_provenance.push_back(AuxRow{-1, "Fx = g"});
    }
    return aux;
}

SparsifyResult sparsify_qcqp(const QcqpProblem& p, const Solution& ysol,
                             const Tolerances& tol) {
    tol.validate();
    const Vector& y = ysol.vec();
    if (!check_feasible(p, y).feasible(tol))
        throw InfeasiblePointError("sparsify_qcqp: input point is not feasible");

    const AuxiliaryLp aux = qcqp_auxiliary_lp(p, y, tol);
    SparsifyResult inner = sparsify_free(aux.lp, check_feasible(aux.lp, y), tol);

    SparsifyResult out;
    out.solution = check_feasible(p, inner.solution.vec());
    out.trace = std::move(inner.trace);
    return out;
}

SparsifyResult sparsify_socp(const SocpProblem& p, const Solution& ysol,
                             const Tolerances& tol) {
    tol.validate();
    const Vector& y = ysol.vec();
    if (!check_feasible(p, y).feasible(tol))
        throw InfeasiblePointError("sparsify_socp: input point is not feasible");

    const AuxiliaryLp aux = socp_auxiliary_lp(p, y);
    SparsifyResult inner = sparsify_free(aux.lp, check_feasible(aux.lp, y), tol);

    SparsifyResult out;
    out.solution = check_feasible(p, inner.solution.vec());
    out.trace = std::move(inner.trace);
    return out;
}

}  // namespace conekit
