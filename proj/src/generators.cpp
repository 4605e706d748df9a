#include "conekit/generators.hpp"

#include <numeric>

namespace conekit {

// Layout shared by both constructions: variable segments [s_i, s_i + r_i)
// carry an identity quadratic/selector block, coordinate s_i + r_i is the
// segment's extra slot, and an identity row block follows all segments.

TightInstance tight_qcqp(Index n, Index m, Index k, const std::vector<Index>& ranks) {
    if (k < 0 || m < 0 || n < 1 || static_cast<Index>(ranks.size()) != k + 1)
        throw std::invalid_argument("tight_qcqp: need ranks r_0..r_k");
    for (Index r : ranks)
        if (r < 1) throw std::invalid_argument("tight_qcqp: ranks must be >= 1");

    std::vector<Index> starts(static_cast<size_t>(k) + 2, 0);
    for (Index i = 0; i <= k; ++i)
        starts[static_cast<size_t>(i) + 1] =
            starts[static_cast<size_t>(i)] + ranks[static_cast<size_t>(i)] + 1;
    const Index total = starts.back();  // sum_i (r_i + 1)
    const long long bound = m - 1 + total;
    if (bound >= n)
        throw BoundNotNontrivial("tight_qcqp: m - 1 + sum(r_i + 1) must be < n");

    QcqpProblem p;
    for (Index i = 0; i <= k; ++i) {
        const Index s = starts[static_cast<size_t>(i)];
        const Index r = ranks[static_cast<size_t>(i)];
        Matrix Q = Matrix::Zero(n, n);
        Q.block(s, s, r, r) = Matrix::Identity(r, r);
        p.Q.push_back(std::move(Q));

        Vector c = Vector::Zero(n);
        if (i == 0) {
            c.head(r) = Vector::Constant(r, -2.0);
            for (Index j = 1; j <= k; ++j)
                c[starts[static_cast<size_t>(j)] + ranks[static_cast<size_t>(j)]] += 1.0;
        } else {
            c.segment(s, r) = Vector::Constant(r, -2.0);
            c[s + r] = -1.0;
            p.d.push_back(static_cast<double>(r) + 1.0);
        }
        p.c.push_back(std::move(c));
    }
    p.A = Matrix::Zero(m, n);
    p.A.block(0, total, m, m) = Matrix::Identity(m, m);
    p.b = Vector::Ones(m);
    p.validate();

    TightInstance out;
    out.x_star = Vector::Zero(n);
    out.x_star.head(total).setOnes();
    out.x_star[ranks[0]] = 0.0;  // the objective segment's extra slot stays off
    out.x_star.segment(total, m).setOnes();
    out.optimal_value = static_cast<double>(k - ranks[0]);
    out.cardinality_bound = bound;
    out.problem = std::move(p);
    return out;
}

TightInstance tight_socp(Index n, Index m, Index k, const std::vector<Index>& sizes) {
    if (k < 0 || m < 0 || n < 1 || static_cast<Index>(sizes.size()) != k)
        throw std::invalid_argument("tight_socp: need cone sizes m_1..m_k");
    for (Index mi : sizes)
        if (mi < 1) throw std::invalid_argument("tight_socp: cone sizes must be >= 1");

    std::vector<Index> starts(static_cast<size_t>(k) + 1, 0);
    for (Index i = 0; i < k; ++i)
        starts[static_cast<size_t>(i) + 1] =
            starts[static_cast<size_t>(i)] + sizes[static_cast<size_t>(i)] + 1;
    const Index total = starts.back();  // sum_i (m_i + 1)
    const long long bound = m + total;
    if (bound >= n)
        throw BoundNotNontrivial("tight_socp: m + sum(m_i + 1) must be < n");

    SocpProblem p;
    p.c = Vector::Zero(n);
    for (Index i = 0; i < k; ++i) {
        const Index s = starts[static_cast<size_t>(i)];
        const Index mi = sizes[static_cast<size_t>(i)];
        SocpCone cone;
        cone.A = Matrix::Zero(mi, n);
        cone.A.block(0, s, mi, mi) = Matrix::Identity(mi, mi);
        cone.b = Vector::Constant(mi, -1.0);
        cone.c = Vector::Zero(n);
        cone.c[s + mi] = 1.0;
        cone.d = -1.0;
        p.c += cone.c;
        p.cones.push_back(std::move(cone));
    }
    p.F = Matrix::Zero(m, n);
    p.F.block(0, total, m, m) = Matrix::Identity(m, m);
    p.g = Vector::Ones(m);
    p.validate();

    TightInstance out;
    out.x_star = Vector::Zero(n);
    out.x_star.head(total + m).setOnes();
    out.optimal_value = static_cast<double>(k);
    out.cardinality_bound = bound;
    out.problem = std::move(p);
    return out;
}

}  // namespace conekit
