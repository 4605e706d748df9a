#include "conekit/rank_reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

#include "conekit/linalg.hpp"

namespace conekit {

namespace {

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

Matrix vstack(const std::vector<const Matrix*>& parts, Index cols) {
    Index rows = 0;
    for (const Matrix* m : parts) rows += m->rows();
    Matrix out(rows, cols);
    Index at = 0;
    for (const Matrix* m : parts) {
        out.middleRows(at, m->rows()) = *m;
        at += m->rows();
    }
    return out;
}

double cone_scale(const SocpCone& cone) {
    return 1.0 + std::abs(cone.d) +
           std::sqrt(cone.A.squaredNorm() + cone.b.squaredNorm() + cone.c.squaredNorm());
}

// Smallest-|lambda| root of alpha l^2 + beta l + gamma = 0 whose right-hand
// side cx + l cv stays admissible; ties between +-l prefer the positive root.
std::optional<double> nearest_boundary_root(double alpha, double beta, double gamma,
                                            double cx, double cv, double rhs_tol,
                                            double max_step) {
    const double top = std::max({std::abs(alpha), std::abs(beta), std::abs(gamma)});
    std::vector<double> roots;
    if (top == 0.0) {
        roots.push_back(0.0);
    } else {
        const double a = alpha / top;
        const double b = beta / top;
        const double g = gamma / top;
        if (std::abs(a) <= 1e-14) {
            if (std::abs(b) > 1e-14)
                roots.push_back(-g / b);
            else if (std::abs(g) <= 1e-14)
                roots.push_back(0.0);
        } else {
            double disc = b * b - 4.0 * a * g;
            if (disc < 0.0 && disc > -1e-12) disc = 0.0;
            if (disc >= 0.0) {
                const double sq = std::sqrt(disc);
                const double q = -(b + (b >= 0.0 ? sq : -sq)) / 2.0;
                roots.push_back(q / a);
                roots.push_back(q != 0.0 ? g / q : 0.0);
            }
        }
    }
    std::optional<double> best;
    for (double l : roots) {
        if (!std::isfinite(l) || std::abs(l) > max_step) continue;
        if (cx + l * cv < -rhs_tol) continue;
        if (!best || std::abs(l) < std::abs(*best) ||
            (std::abs(l) == std::abs(*best) && l > *best))
            best = l;
    }
    return best;
}

struct TightenContext {
    const SocpProblem& p;
    const std::vector<Matrix>& cone_blocks;
    const Matrix& pinned;
};

std::optional<TightenChoice> pick_tightening(const TightenContext& ctx, const Vector& x,
                                             const std::set<long long>& tight,
                                             const Tolerances& tol, bool* kernel_exhausted) {
    *kernel_exhausted = false;
    std::vector<const Matrix*> parts{&ctx.pinned};
    for (long long u : tight) parts.push_back(&ctx.cone_blocks[static_cast<size_t>(u)]);
    const Matrix K = kernel_basis(vstack(parts, x.size()), tol);
    if (K.cols() == 0) {
        *kernel_exhausted = true;
        return std::nullopt;
    }
    const Vector v = K.col(0);

    std::optional<TightenChoice> best;
    for (long long u = 0; u < static_cast<long long>(ctx.cone_blocks.size()); ++u) {
        if (tight.count(u)) continue;
        const Matrix& B = ctx.cone_blocks[static_cast<size_t>(u)];
        const double react = (B * v).cwiseAbs().maxCoeff();
        if (react <= tol.zero_tol * (1.0 + B.cwiseAbs().maxCoeff())) continue;

        const SocpCone& cone = ctx.p.cones[static_cast<size_t>(u)];
        const Vector w = cone.A * v;
        const Vector q = cone.A * x + cone.b;
        const double cv = cone.c.dot(v);
        const double cx = cone.c.dot(x) + cone.d;
        const double alpha = w.squaredNorm() - cv * cv;
        const double beta = 2.0 * (w.dot(q) - cv * cx);
        const double gamma = q.squaredNorm() - cx * cx;
        const auto root = nearest_boundary_root(alpha, beta, gamma, cx, cv,
                                                tol.feas_tol * cone_scale(cone),
                                                1.0 / tol.zero_tol);
        if (!root) continue;
        if (!best || std::abs(*root) < std::abs(best->step))
            best = TightenChoice{v, u, *root};
    }
    return best;
}

}  // namespace

Matrix ConstraintBlocks::stacked() const {
    std::vector<const Matrix*> parts;
    for (const Matrix& b : cone_blocks) parts.push_back(&b);
    parts.push_back(&pinned);
    return vstack(parts, pinned.cols());
}

ConstraintBlocks socp_constraint_blocks(const SocpProblem& p) {
    p.validate();
    ConstraintBlocks out;
    for (const SocpCone& cone : p.cones) {
        Matrix B(cone.A.rows() + 1, p.n());
        B.topRows(cone.A.rows()) = cone.A;
        B.row(cone.A.rows()) = cone.c.transpose();
        out.cone_blocks.push_back(std::move(B));
    }
    out.pinned.resize(p.m() + 1, p.n());
    if (p.m() > 0) out.pinned.topRows(p.m()) = p.F;
    out.pinned.row(p.m()) = p.c.transpose();
    return out;
}

TightenChoice tighten_step(const SocpProblem& p, const Vector& x,
                           const std::vector<long long>& tight_set, const Tolerances& tol) {
    tol.validate();
    p.validate();
    if (x.size() != p.n()) throw DimensionMismatch("tighten_step: point has wrong length");
    const ConstraintBlocks blocks = socp_constraint_blocks(p);
    const std::set<long long> S(tight_set.begin(), tight_set.end());
    bool exhausted = false;
    auto choice =
        pick_tightening({p, blocks.cone_blocks, blocks.pinned}, x, S, tol, &exhausted);
    if (!choice)
        throw NoTighteningDirection(exhausted
                                        ? "tighten_step: stacked kernel is trivial"
                                        : "tighten_step: no admissible boundary root");
    return *choice;
}

RankReductionResult socp_rank_reduce(const SocpProblem& p, const Solution& ysol,
                                     const Tolerances& tol) {
    tol.validate();
    p.validate();
    const Vector& y = ysol.vec();
    Solution start = check_feasible(p, y);
    if (!start.feasible(tol))
        throw InfeasiblePointError("socp_rank_reduce: input point is not feasible");

    const HyperbolicSpectrum spec0 = socp_spectrum(p, y, tol);
    Index mprime = p.m();
    for (const SocpCone& cone : p.cones) mprime = std::max(mprime, cone.A.rows());
    const long long lift = ceil_div(p.n(), mprime + 1);
    const long long target = std::min<long long>(p.k(), lift);
    const long long guarantee = lift - 1;

    RankReductionResult out;
    out.trace.initial_rank = spec0.rank;
    if (spec0.tight_count >= target) {
        out.solution = start;
        out.trace.final_rank = spec0.rank;
        return out;
    }

    const ConstraintBlocks blocks = socp_constraint_blocks(p);
    if (kernel_basis(blocks.stacked(), tol).cols() != 0)
        throw KernelConditionViolated(
            "socp_rank_reduce: stacked constraint blocks have a nontrivial kernel");

    Vector x = y;
    std::set<long long> S;
    const TightenContext ctx{p, blocks.cone_blocks, blocks.pinned};
    while (static_cast<long long>(S.size()) < target) {
        bool exhausted = false;
        auto choice = pick_tightening(ctx, x, S, tol, &exhausted);
        if (!choice) {
            if (exhausted && socp_spectrum(p, x, tol).tight_count >= guarantee) break;
            throw NoTighteningDirection(
                "socp_rank_reduce: cannot reach the guaranteed tight count");
        }
        x += choice->step * choice->direction;
        S.insert(choice->cone);
        out.trace.steps.push_back(RankReductionStep{
            choice->direction, choice->cone, choice->step, {S.begin(), S.end()}});
    }

    out.solution = check_feasible(p, x);
    out.trace.final_rank = socp_spectrum(p, x, tol).rank;
    return out;
}

SocpProblem qcqp_to_socp(const QcqpProblem& p, const Tolerances& tol) {
    tol.validate();
    p.validate();
    const Index n = p.n();
    SocpProblem s;
    s.c = Vector::Zero(n + 1);
    s.c[n] = 1.0;
    s.F = Matrix::Zero(p.m(), n + 1);
    if (p.m() > 0) s.F.leftCols(n) = p.A;
    s.g = p.b;
    for (Index i = 0; i <= p.k(); ++i) {
        const Matrix P = psd_factor(p.Q[static_cast<size_t>(i)], tol);
        const Index r = P.rows();
        SocpCone cone;
        cone.A = Matrix::Zero(r + 1, n + 1);
        cone.A.topLeftCorner(r, n) = P;
        cone.A.row(r).head(n) = p.c[static_cast<size_t>(i)].transpose();
        if (i == 0) cone.A(r, n) = -1.0;
        cone.b = Vector::Zero(r + 1);
        cone.b[r] = 0.25 + p.d_of(i);
        cone.c = Vector::Zero(n + 1);
        cone.c.head(n) = -p.c[static_cast<size_t>(i)];
        if (i == 0) cone.c[n] = 1.0;
        cone.d = 0.25 - p.d_of(i);
        s.cones.push_back(std::move(cone));
    }
    return s;
}

RankReductionResult qcqp_rank_reduce(const QcqpProblem& p, const Solution& ysol,
                                     const Tolerances& tol) {
    tol.validate();
    p.validate();
    const Vector& y = ysol.vec();
    if (!check_feasible(p, y).feasible(tol))
        throw InfeasiblePointError("qcqp_rank_reduce: input point is not feasible");

    const SocpProblem lift = qcqp_to_socp(p, tol);
    const Index n = p.n();

    // The residual cone rows [P_i 0; c_i^T -delta_i0] already pin everything
    // the proof needs, so they double as the tightening blocks; the linear
    // block stays [A 0] without an objective row.
    std::vector<Matrix> blocks;
    Index rmax = 0;
    for (const SocpCone& cone : lift.cones) {
        blocks.push_back(cone.A);
        rmax = std::max(rmax, cone.A.rows() - 1);
    }
    const Matrix& pinned = lift.F;

    const long long dprime = std::max<long long>(p.m(), rmax + 1);
    const long long ceilv = ceil_div(n, dprime);
    const long long target = std::min<long long>(p.k() + 1, ceilv);
    const long long guarantee = ceilv - 1;

    Vector z(n + 1);
    z.head(n) = y;
    z[n] = objective(p, y);

    RankReductionResult out;
    out.trace.initial_rank = qcqp_rank(p, y, tol).rank;

    const HyperbolicSpectrum spec0 = socp_spectrum(lift, z, tol);
    if (spec0.tight_count >= target) {
        out.solution = check_feasible(p, y);
        out.trace.final_rank = out.trace.initial_rank;
        return out;
    }

    Matrix xstack((n + 1) * (p.k() + 1) + p.m(), n);
    Index at = 0;
    for (Index i = 0; i <= p.k(); ++i) {
        xstack.middleRows(at, n) = p.Q[static_cast<size_t>(i)];
        xstack.row(at + n) = p.c[static_cast<size_t>(i)].transpose();
        at += n + 1;
    }
    if (p.m() > 0) xstack.middleRows(at, p.m()) = p.A;
    if (kernel_basis(xstack, tol).cols() != 0)
        throw KernelConditionViolated(
            "qcqp_rank_reduce: stacked constraint blocks have a nontrivial kernel");

    Vector x = z;
    std::set<long long> S{0};
    const TightenContext ctx{lift, blocks, pinned};
    while (static_cast<long long>(S.size()) < target) {
        bool exhausted = false;
        auto choice = pick_tightening(ctx, x, S, tol, &exhausted);
        if (!choice) {
            if (exhausted && socp_spectrum(lift, x, tol).tight_count >= guarantee) break;
            throw NoTighteningDirection(
                "qcqp_rank_reduce: cannot reach the guaranteed tight count");
        }
        x += choice->step * choice->direction;
        S.insert(choice->cone);
        out.trace.steps.push_back(RankReductionStep{
            choice->direction, choice->cone, choice->step, {S.begin(), S.end()}});
    }

    out.solution = check_feasible(p, x.head(n));
    out.trace.final_rank = qcqp_rank(p, x.head(n), tol).rank;
    return out;
}

}  // namespace conekit
