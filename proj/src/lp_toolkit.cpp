#include "conekit/lp_toolkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "conekit/linalg.hpp"

namespace conekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class SimplexTableau {
public:
    SimplexTableau(const Matrix& A, const Vector& b, double eps)
        : m_(A.rows()), n_(A.cols()), eps_(eps) {
        T_ = Matrix::Zero(m_, n_ + m_);
        if (m_ > 0) {
            T_.leftCols(n_) = A;
            T_.rightCols(m_) = Matrix::Identity(m_, m_);
        }
        rhs_ = b;
        basis_.resize(static_cast<size_t>(m_));
        std::iota(basis_.begin(), basis_.end(), n_);
        for (Index i = 0; i < m_; ++i) {
            if (rhs_[i] < 0.0) {
                T_.row(i) = -T_.row(i);
                T_(i, n_ + i) = 1.0;  // keep the artificial column positive
                rhs_[i] = -rhs_[i];
            }
        }
    }

    // Bland's rule: entering column is the smallest index with negative
    // reduced cost, leaving row breaks ratio ties by smallest basis index.
    // Returns false on an unbounded ray.
    bool minimize(const Vector& cost, bool structural_only) {
        const Index limit = 50000 + 200 * (m_ + n_);
        for (Index iter = 0; iter < limit; ++iter) {
            Vector cb(m_);
            for (Index i = 0; i < m_; ++i) cb[i] = cost[basis_[static_cast<size_t>(i)]];
            const Index cols = structural_only ? n_ : n_ + m_;
            Index enter = -1;
            for (Index j = 0; j < cols; ++j) {
                const double cbar = cost[j] - cb.dot(T_.col(j));
                if (cbar < -eps_) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;

            Index leave = -1;
            double best = kInf;
            for (Index i = 0; i < m_; ++i) {
                if (T_(i, enter) <= eps_) continue;
                const double ratio = rhs_[i] / T_(i, enter);
                if (leave < 0) {
                    best = ratio;
                    leave = i;
                    continue;
                }
                const double tie = 1e-12 * (1.0 + std::abs(best));
                if (ratio < best - tie) {
                    best = ratio;
                    leave = i;
                } else if (ratio <= best + tie &&
                           basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)]) {
                    best = std::min(best, ratio);
                    leave = i;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
        throw Error("simplex: iteration limit exceeded");
    }

    double objective(const Vector& cost) const {
        double v = 0.0;
        for (Index i = 0; i < m_; ++i) v += cost[basis_[static_cast<size_t>(i)]] * rhs_[i];
        return v;
    }

    // Pivot basic artificials onto structural columns; rows where no pivot
    // exists are redundant and dropped.
    void drop_artificials() {
        std::vector<Index> keep;
        for (Index i = 0; i < m_; ++i) {
            if (basis_[static_cast<size_t>(i)] < n_) {
                keep.push_back(i);
                continue;
            }
            Index enter = -1;
            for (Index j = 0; j < n_; ++j) {
                if (std::abs(T_(i, j)) > eps_) {
                    enter = j;
                    break;
                }
            }
            if (enter >= 0) {
                pivot(i, enter);
                keep.push_back(i);
            }
        }
        if (static_cast<Index>(keep.size()) == m_) return;
        Matrix T2(static_cast<Index>(keep.size()), T_.cols());
        Vector rhs2(static_cast<Index>(keep.size()));
        std::vector<Index> basis2;
        for (size_t r = 0; r < keep.size(); ++r) {
            T2.row(static_cast<Index>(r)) = T_.row(keep[r]);
            rhs2[static_cast<Index>(r)] = rhs_[keep[r]];
            basis2.push_back(basis_[static_cast<size_t>(keep[r])]);
        }
        T_ = std::move(T2);
        rhs_ = std::move(rhs2);
        basis_ = std::move(basis2);
        m_ = T_.rows();
    }

    Vector extract(Index n) const {
        Vector x = Vector::Zero(n);
        for (Index i = 0; i < m_; ++i) {
            const Index j = basis_[static_cast<size_t>(i)];
            if (j < n) x[j] = std::max(rhs_[i], 0.0);
        }
        return x;
    }

private:
    void pivot(Index row, Index col) {
        const double piv = T_(row, col);
        T_.row(row) /= piv;
        rhs_[row] /= piv;
        for (Index i = 0; i < m_; ++i) {
            if (i == row || T_(i, col) == 0.0) continue;
            const double f = T_(i, col);
            T_.row(i) -= f * T_.row(row);
            rhs_[i] -= f * rhs_[row];
            if (rhs_[i] < 0.0 && rhs_[i] > -eps_) rhs_[i] = 0.0;
        }
        basis_[static_cast<size_t>(row)] = col;
    }

    Index m_, n_;
    double eps_;
    Matrix T_;
    Vector rhs_;
    std::vector<Index> basis_;
};

double pivot_eps(const LpProblem& p, const Tolerances& tol) {
    double top = 0.0;
    if (p.A.size() > 0) top = std::max(top, p.A.cwiseAbs().maxCoeff());
    if (p.b.size() > 0) top = std::max(top, p.b.cwiseAbs().maxCoeff());
    return tol.zero_tol * (1.0 + top);
}

std::vector<Index> support_of(const Vector& y) {
    std::vector<Index> s;
    for (Index i = 0; i < y.size(); ++i)
        if (y[i] > 0.0) s.push_back(i);
    return s;
}

}  // namespace

LpSolveResult solve_lp(const LpProblem& p, const Tolerances& tol) {
    tol.validate();
    p.validate();
    if (!p.nonneg) throw std::invalid_argument("solve_lp requires x >= 0");

    const double eps = pivot_eps(p, tol);
    SimplexTableau tab(p.A, p.b, eps);

    Vector phase1 = Vector::Zero(p.n() + p.m());
    phase1.tail(p.m()).setOnes();
    tab.minimize(phase1, false);
    const double bscale = 1.0 + (p.b.size() > 0 ? p.b.cwiseAbs().maxCoeff() : 0.0);
    if (tab.objective(phase1) > tol.feas_tol * bscale)
        return LpSolveResult{LpStatus::Infeasible, Solution{}};
    tab.drop_artificials();

    Vector phase2 = Vector::Zero(p.n() + p.m());
    phase2.head(p.n()) = p.c;
    if (!tab.minimize(phase2, true))
        return LpSolveResult{LpStatus::Unbounded, Solution{}};

    return LpSolveResult{LpStatus::Optimal, check_feasible(p, tab.extract(p.n()))};
}

SparsifyResult sparsify_nonneg(const LpProblem& p, const Solution& ysol,
                               const Tolerances& tol) {
    tol.validate();
    p.validate();
    if (!p.nonneg) throw std::invalid_argument("sparsify_nonneg requires x >= 0");
    if (!check_feasible(p, ysol.vec()).feasible(tol))
        throw InfeasiblePointError("sparsify_nonneg: input point is not feasible");

    Vector y = clamp_small(ysol.vec(), tol.zero_tol);
    y = y.cwiseMax(0.0);

    SparsifyResult out;
    out.trace.initial_card = cardinality(y, tol.zero_tol);
    const double cert_scale = 1.0 + p.c.norm();

    while (true) {
        const std::vector<Index> support = support_of(y);
        Matrix As(p.m(), static_cast<Index>(support.size()));
        for (size_t j = 0; j < support.size(); ++j) As.col(static_cast<Index>(j)) = p.A.col(support[j]);
        const Matrix K = kernel_basis(As, tol);
        if (K.cols() == 0) break;

        Vector v = Vector::Zero(p.n());
        for (size_t j = 0; j < support.size(); ++j) v[support[j]] = K(static_cast<Index>(j), 0);
        if (std::abs(p.c.dot(v)) > tol.feas_tol * cert_scale)
            throw NotOptimalInputError(
                "sparsify_nonneg: support kernel direction improves the objective");

        // Smallest ratio wins (over every support coordinate the direction
        // touches), so the move keeps the whole point nonnegative.
        Index target = -1;
        double lambda = kInf;
        for (Index i : support) {
            const double av = std::abs(v[i]);
            if (av <= tol.zero_tol) continue;
            const double ratio = y[i] / av;
            if (ratio < lambda * (1.0 - 1e-15)) {
                lambda = ratio;
                target = i;
            }
        }
        if (target < 0) break;

        const double step = v[target] > 0.0 ? -lambda : lambda;
        y += step * v;
        y[target] = 0.0;
        y = clamp_small(y, tol.zero_tol).cwiseMax(0.0);
        out.trace.pivots.push_back(SparsifyPivot{v, step, target});
    }

    out.solution = check_feasible(p, y);
    out.trace.final_card = cardinality(y, tol.zero_tol);
    return out;
}

SparsifyResult sparsify_free(const LpProblem& p, const Solution& ysol,
                             const Tolerances& tol) {
    tol.validate();
    p.validate();
    if (p.nonneg) throw std::invalid_argument("sparsify_free requires free variables");

    const Vector y = clamp_small(ysol.vec(), tol.zero_tol);
    std::vector<bool> flipped(static_cast<size_t>(p.n()), false);
    LpProblem pf{p.A, p.b, p.c, true};
    Vector yf = y;
    for (Index i = 0; i < p.n(); ++i) {
        if (y[i] < 0.0) {
            flipped[static_cast<size_t>(i)] = true;
            pf.A.col(i) = -pf.A.col(i);
            pf.c[i] = -pf.c[i];
            yf[i] = -yf[i];
        }
    }

    SparsifyResult inner = sparsify_nonneg(pf, check_feasible(pf, yf), tol);

    Vector x = inner.solution.vec();
    for (Index i = 0; i < p.n(); ++i)
        if (flipped[static_cast<size_t>(i)]) x[i] = -x[i];
    SparsifyResult out;
    out.solution = check_feasible(p, x);
    out.trace = inner.trace;
    for (SparsifyPivot& piv : out.trace.pivots)
        for (Index i = 0; i < p.n(); ++i)
            if (flipped[static_cast<size_t>(i)]) piv.direction[i] = -piv.direction[i];
    return out;
}

LpSolveResult solve_sparsity_constrained_lp(const LpProblem& p, Index kappa,
                                            const Tolerances& tol, long long budget) {
    tol.validate();
    p.validate();
    if (!p.nonneg) throw std::invalid_argument("solve_sparsity_constrained_lp requires x >= 0");
    if (kappa < 0) throw std::invalid_argument("kappa must be nonnegative");
    const Index n = p.n();
    if (kappa >= n) return solve_lp(p, tol);

    double combos = 1.0;
    for (Index i = 0; i < kappa; ++i) combos = combos * static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (combos > static_cast<double>(budget))
        throw BudgetExceeded("solve_sparsity_constrained_lp: subset count exceeds budget");

    std::vector<Index> pick(static_cast<size_t>(kappa));
    std::iota(pick.begin(), pick.end(), 0);
    bool found = false;
    double best_obj = kInf;
    Vector best_x;

    while (true) {
        LpProblem sub;
        sub.A.resize(p.m(), kappa);
        sub.c.resize(kappa);
        sub.b = p.b;
        sub.nonneg = true;
        for (Index j = 0; j < kappa; ++j) {
            sub.A.col(j) = p.A.col(pick[static_cast<size_t>(j)]);
            sub.c[j] = p.c[pick[static_cast<size_t>(j)]];
        }
        const LpSolveResult r = solve_lp(sub, tol);
        if (r.status == LpStatus::Unbounded) return LpSolveResult{LpStatus::Unbounded, Solution{}};
        if (r.status == LpStatus::Optimal && r.solution.objective < best_obj) {
            best_obj = r.solution.objective;
            best_x = Vector::Zero(n);
            for (Index j = 0; j < kappa; ++j)
                best_x[pick[static_cast<size_t>(j)]] = r.solution.vec()[j];
            found = true;
        }

        // next lexicographic combination
        Index i = kappa - 1;
        while (i >= 0 && pick[static_cast<size_t>(i)] == n - kappa + i) --i;
        if (i < 0) break;
        ++pick[static_cast<size_t>(i)];
        for (Index j = i + 1; j < kappa; ++j)
            pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
    }

    if (!found) return LpSolveResult{LpStatus::Infeasible, Solution{}};
    return LpSolveResult{LpStatus::Optimal, check_feasible(p, best_x)};
}

}  // namespace conekit
