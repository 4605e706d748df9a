#include "conekit/linalg.hpp"

#include <Eigen/SVD>

namespace conekit {

namespace {

struct SvdRank {
    Eigen::JacobiSVD<Matrix> svd;
    Index rank;
};

SvdRank svd_with_rank(const Matrix& m, const Tolerances& tol) {
    SvdRank out{Eigen::JacobiSVD<Matrix>(m, Eigen::ComputeFullV), 0};
    const auto& sv = out.svd.singularValues();
    if (sv.size() == 0) return out;
    const double cutoff = tol.rank_tol_rel * sv[0];
    for (Index i = 0; i < sv.size(); ++i)
        if (sv[i] > cutoff) ++out.rank;
    return out;
}

}  // namespace

Index numerical_rank(const Matrix& m, const Tolerances& tol) {
    tol.validate();
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return svd_with_rank(m, tol).rank;
}

Matrix kernel_basis(const Matrix& m, const Tolerances& tol) {
    tol.validate();
    if (m.cols() == 0) return Matrix(0, 0);
    if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
    SvdRank sr = svd_with_rank(m, tol);
    const Index dim = m.cols() - sr.rank;
    return sr.svd.matrixV().rightCols(dim);
}

Matrix psd_factor(const Matrix& q, const Tolerances& tol) {
    tol.validate();
    if (q.rows() != q.cols())
        throw DimensionMismatch("psd_factor expects a square matrix");
    const Index n = q.rows();
    if (n == 0) return Matrix(0, 0);

    const double scale = 1.0 + q.norm();
    if ((q - q.transpose()).cwiseAbs().maxCoeff() > tol.feas_tol * scale)
        throw NotSymmetricError("psd_factor input is not symmetric");

    Eigen::SelfAdjointEigenSolver<Matrix> es((q + q.transpose()) / 2.0);
    Vector lam = es.eigenvalues();  // ascending
    if (lam[0] < -tol.feas_tol * scale)
        throw NotPsdError("psd_factor input has a negative eigenvalue");
    for (Index i = 0; i < n; ++i) lam[i] = std::max(lam[i], 0.0);

    const double cutoff = tol.rank_tol_rel * lam[n - 1];
    Index rank = 0;
    for (Index i = 0; i < n; ++i)
        if (lam[i] > cutoff) ++rank;

    Matrix p(rank, n);
    for (Index r = 0; r < rank; ++r) {
        const Index src = n - 1 - r;  // descending eigenvalue order
        p.row(r) = std::sqrt(lam[src]) * es.eigenvectors().col(src).transpose();
    }
    return p;
}

}  // namespace conekit
