#include "conekit/reductions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "conekit/linalg.hpp"

namespace conekit {

void Graph::validate() const {
    if (n < 0) throw std::invalid_argument("graph: negative node count");
    if (weights.rows() != n || weights.cols() != n)
        throw std::invalid_argument("graph: weight matrix must be n x n");
    if (!weights.allFinite()) throw std::invalid_argument("graph: non-finite weight");
    for (Index i = 0; i < n; ++i) {
        if (weights(i, i) != 0.0)
            throw std::invalid_argument("graph: diagonal weight must be zero");
        for (Index j = i + 1; j < n; ++j)
            if (weights(i, j) != weights(j, i))
                throw std::invalid_argument("graph: weight matrix must be symmetric");
    }
}

bool Graph::unweighted() const {
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            if (weights(i, j) != 0.0 && weights(i, j) != 1.0) return false;
    return true;
}

Matrix weight_matrix(const Graph& g) {
    g.validate();
    Matrix W = g.weights / 4.0;
    for (Index i = 0; i < g.n; ++i) W(i, i) = -g.weights.row(i).sum() / 4.0;
    return W;
}

namespace {

// Mask bit v-1 set puts vertex v on the -1 side; vertex 0 stays at +1.
// Lexicographic order on sign vectors treats -1 < +1, so of two masks the
// smaller one has its lowest differing bit set.
bool lex_smaller(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t d = a ^ b;
    if (d == 0) return false;
    return (a & (d & -d)) != 0;
}

double cut_of_mask(const Graph& g, std::uint64_t mask) {
    double cut = 0.0;
    for (Index i = 0; i < g.n; ++i) {
        const bool si = i > 0 && ((mask >> (i - 1)) & 1u);
        for (Index j = i + 1; j < g.n; ++j) {
            const bool sj = (mask >> (j - 1)) & 1u;
            if (si != sj) cut += g.weights(i, j);
        }
    }
    return cut;
}

// Cut change from flipping vertex v at the given pre-flip mask.
double flip_delta(const Graph& g, std::uint64_t mask, Index v) {
    const bool sv = v > 0 && ((mask >> (v - 1)) & 1u);
    double delta = 0.0;
    for (Index j = 0; j < g.n; ++j) {
        if (j == v) continue;
        const bool sj = j > 0 && ((mask >> (j - 1)) & 1u);
        delta += (sv == sj) ? g.weights(v, j) : -g.weights(v, j);
    }
    return delta;
}

struct BestCut {
    double value = -std::numeric_limits<double>::infinity();
    std::uint64_t mask = 0;

    void offer(double v, std::uint64_t m) {
        if (v > value || (v == value && lex_smaller(m, mask))) {
            value = v;
            mask = m;
        }
    }
};

// Walk gray codes of indices [lo, hi) and report the best cut seen.
BestCut scan_range(const Graph& g, std::uint64_t lo, std::uint64_t hi) {
    BestCut best;
    if (lo >= hi) return best;
    std::uint64_t gray = lo ^ (lo >> 1);
    double cur = cut_of_mask(g, gray);
    best.offer(cur, gray);
    for (std::uint64_t i = lo + 1; i < hi; ++i) {
        const std::uint64_t next = i ^ (i >> 1);
        const std::uint64_t changed = next ^ gray;
        const Index v = static_cast<Index>(std::countr_zero(changed)) + 1;
        cur += flip_delta(g, gray, v);
        gray = next;
        best.offer(cur, gray);
    }
    return best;
}

CutResult cut_result_from(const Graph& g, const BestCut& best) {
    CutResult out;
    out.value = g.n > 0 ? best.value : 0.0;
    out.signs.assign(static_cast<size_t>(g.n), 1);
    for (Index v = 1; v < g.n; ++v)
        if ((best.mask >> (v - 1)) & 1u) out.signs[static_cast<size_t>(v)] = -1;
    return out;
}

void require_small(const Graph& g) {
    g.validate();
    if (g.n > 24) throw TooLargeError("maxcut_brute: more than 24 nodes");
}

}  // namespace

CutResult maxcut_brute_serial(const Graph& g) {
    require_small(g);
    if (g.n <= 1) return cut_result_from(g, BestCut{0.0, 0});
    const std::uint64_t total = std::uint64_t{1} << (g.n - 1);
    return cut_result_from(g, scan_range(g, 0, total));
}

CutResult maxcut_brute(const Graph& g) {
    require_small(g);
    if (g.n <= 1) return cut_result_from(g, BestCut{0.0, 0});
    const std::uint64_t total = std::uint64_t{1} << (g.n - 1);
#ifdef _OPENMP
    const int threads = std::max(1, omp_get_max_threads());
    std::vector<BestCut> partial(static_cast<size_t>(threads));
    const std::uint64_t chunk = (total + threads - 1) / threads;
#pragma omp parallel num_threads(threads)
    {
        const int tid = omp_get_thread_num();
        const std::uint64_t lo = std::min<std::uint64_t>(total, chunk * tid);
        const std::uint64_t hi = std::min<std::uint64_t>(total, lo + chunk);
        partial[static_cast<size_t>(tid)] = scan_range(g, lo, hi);
    }
    BestCut best;
    for (const BestCut& b : partial)
        if (std::isfinite(b.value)) best.offer(b.value, b.mask);
    return cut_result_from(g, best);
#else
    return cut_result_from(g, scan_range(g, 0, total));
#endif
}

RankedConicProgram maxcut_to_rank_sdp(const Graph& g) {
    g.validate();
    SdpProblem sdp;
    sdp.C = weight_matrix(g);
    for (Index i = 0; i < g.n; ++i) {
        Matrix A = Matrix::Zero(g.n, g.n);
        A(i, i) = 1.0;
        sdp.constraints.push_back({A, 1.0});
    }
    sdp.rank_bound = 1;
    RankedConicProgram out;
    out.program = std::move(sdp);
    out.rank_bound = 1;
    out.embedding.nodes = g.n;
    return out;
}

RankedConicProgram sdp_rank_increment(const RankedConicProgram& p, long long r) {
    if (r < 1) throw std::invalid_argument("sdp_rank_increment: r must be >= 1");
    const SdpProblem* sdp = std::get_if<SdpProblem>(&p.program);
    if (!sdp) throw std::invalid_argument("sdp_rank_increment: program is not an SDP");
    if (p.rank_bound != 1)
        throw std::invalid_argument("sdp_rank_increment: rank bound must be 1");
    const Index n = sdp->C.rows();
    if (!sdp->ineq_constraints.empty() ||
        static_cast<Index>(sdp->constraints.size()) != n)
        throw std::invalid_argument(
            "sdp_rank_increment: expected exactly the n diagonal constraints");
    for (Index i = 0; i < n; ++i) {
        Matrix expected = Matrix::Zero(n, n);
        expected(i, i) = 1.0;
        const SdpConstraint& con = sdp->constraints[static_cast<size_t>(i)];
        if (con.A.rows() != n || con.A.cols() != n || con.b != 1.0 ||
            (con.A - expected).cwiseAbs().maxCoeff() != 0.0)
            throw std::invalid_argument(
                "sdp_rank_increment: expected exactly the n diagonal constraints");
    }
    if (r == 1) return p;

    const Index np = n + r - 1;
    SdpProblem out;
    out.C = Matrix::Zero(np, np);
    out.C.bottomRightCorner(n, n) = sdp->C;
    for (Index i = 0; i < np; ++i) {
        Matrix A = Matrix::Zero(np, np);
        A(i, i) = 1.0;
        out.constraints.push_back({A, 1.0});
    }
    for (Index i = 0; i < r - 1; ++i) {
        for (Index j = i + 1; j < np; ++j) {
            Matrix A = Matrix::Zero(np, np);
            A(i, j) = 0.5;
            A(j, i) = 0.5;
            out.constraints.push_back({A, 0.0});
        }
    }
    out.rank_bound = r;

    RankedConicProgram ranked;
    ranked.program = std::move(out);
    ranked.rank_bound = r;
    ranked.embedding = p.embedding;
    ranked.embedding.leading = r - 1;
    return ranked;
}

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    const long long rm = a % b;
    if (rm != 0 && ((rm < 0) != (b < 0))) --q;
    return q;
}

long long checked_rank(const RankFn& r, long long m) {
    const long long v = r(m);
    if (v < 1) throw std::invalid_argument("rank function must be >= 1");
    return v;
}

long long phi_of(long long m, long long rt) {
    return floor_div(m - rt * (rt + 1) / 2, rt) + 1;
}

RankFn table_fn(const std::vector<long long>& r_table) {
    if (r_table.empty()) throw std::invalid_argument("rank table must be nonempty");
    return [r_table](long long m) {
        const size_t at = std::min<size_t>(static_cast<size_t>(m), r_table.size());
        return r_table[at - 1];
    };
}

}  // namespace

long long phi(long long m, const RankFn& r) {
    if (m < 1) throw std::invalid_argument("phi: m must be >= 1");
    long long rt = 0;
    for (long long i = 1; i <= m; ++i) rt = std::max(rt, checked_rank(r, i));
    return phi_of(m, rt);
}

long long phi(long long m, const std::vector<long long>& r_table) {
    return phi(m, table_fn(r_table));
}

std::vector<long long> phi_table(long long max_m, const RankFn& r) {
    std::vector<long long> out;
    out.reserve(static_cast<size_t>(std::max<long long>(0, max_m)));
    long long rt = 0;
    for (long long m = 1; m <= max_m; ++m) {
        rt = std::max(rt, checked_rank(r, m));
        out.push_back(phi_of(m, rt));
    }
    return out;
}

long long find_m(long long n, const RankFn& r, long long budget) {
    if (n < 2) throw std::invalid_argument("find_m: n must be >= 2");
    long long rt = 0;
    for (long long m = 1; m <= budget; ++m) {
        rt = std::max(rt, checked_rank(r, m));
        if (m >= n - 1 && phi_of(m, rt) == n) return m;
    }
    throw NotFoundError("find_m: no m with phi(m) = n within budget");
}

long long find_m(long long n, const std::vector<long long>& r_table, long long budget) {
    return find_m(n, table_fn(r_table), budget);
}

namespace {

Index packed_index(Index i, Index j) {  // i <= j
    return j * (j + 1) / 2 + i;
}

// Coefficients of tr(A X) over the packed upper triangle of symmetric X,
// embedded at `offset` in a zero vector of length `dim`.
Vector trace_coeff_row(const Matrix& A, Index offset, Index dim) {
    Vector row = Vector::Zero(dim);
    const Index n = A.rows();
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i <= j; ++i) {
            const double coef = (i == j) ? A(i, i) : 2.0 * A(i, j);
            row[offset + packed_index(i, j)] = coef;
        }
    }
    return row;
}

}  // namespace

RankedConicProgram maxcut_to_rank_socp(const Graph& g) {
    g.validate();
    const Index n = g.n;
    if (n < 1) throw std::invalid_argument("maxcut_to_rank_socp: empty graph");
    const Index packed = n * (n + 1) / 2;
    const Index dim = n + packed + 1;
    const Index t = dim - 1;
    const Matrix W = weight_matrix(g);

    SocpProblem s;
    s.c = Vector::Zero(dim);
    s.c[t] = 1.0;
    s.F = Matrix::Zero(n + 1, dim);
    s.g = Vector::Zero(n + 1);
    for (Index i = 0; i < n; ++i) {
        s.F(i, n + packed_index(i, i)) = 1.0;
        s.g[i] = 1.0;
    }
    s.F.row(n) = trace_coeff_row(W, n, dim).transpose();
    s.F(n, t) = -1.0;

    const auto add_cone = [&](const Matrix& A) {
        const Matrix P = psd_factor(A, Tolerances{});
        const Index r = P.rows();
        SocpCone cone;
        cone.A = Matrix::Zero(r + 1, dim);
        cone.A.row(0) = trace_coeff_row(A, n, dim).transpose();
        cone.A.block(1, 0, r, n) = 2.0 * P;
        cone.b = Vector::Zero(r + 1);
        cone.b[0] = -1.0;
        cone.c = trace_coeff_row(A, n, dim);
        cone.d = 1.0;
        s.cones.push_back(std::move(cone));
    };

    const double shift = 1.0 / std::sqrt(2.0);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i <= j; ++i) {
            Matrix C = Matrix::Zero(n, n);
            if (i == j) {
                C(i, i) = 1.0;
            } else {
                C(i, j) = shift;
                C(j, i) = shift;
                C += shift * Matrix::Identity(n, n);
            }
            add_cone(C);
        }
    }
    add_cone(Matrix::Identity(n, n));

    RankedConicProgram out;
    out.rank_bound = packed + 1;
    out.embedding.nodes = n;
    out.embedding.x_offset = 0;
    out.embedding.xmat_offset = n;
    out.embedding.t_index = t;
    out.program = std::move(s);
    return out;
}

RankedConicProgram socp_rank_increment(const RankedConicProgram& p, long long s) {
    if (s < 0) throw std::invalid_argument("socp_rank_increment: s must be >= 0");
    const SocpProblem* socp = std::get_if<SocpProblem>(&p.program);
    if (!socp) throw std::invalid_argument("socp_rank_increment: program is not an SOCP");
    RankedConicProgram out = p;
    SocpProblem prob = *socp;
    for (long long gadget = 0; gadget < s; ++gadget) {
        const Index n = prob.n();
        for (SocpCone& cone : prob.cones) {
            cone.A.conservativeResize(Eigen::NoChange, n + 1);
            cone.A.col(n).setZero();
            cone.c.conservativeResize(n + 1);
            cone.c[n] = 0.0;
        }
        prob.F.conservativeResize(prob.F.rows() + 1, n + 1);
        prob.F.col(n).setZero();
        prob.F.row(prob.F.rows() - 1).setZero();
        prob.F(prob.F.rows() - 1, n) = 1.0;
        prob.g.conservativeResize(prob.g.size() + 1);
        prob.g[prob.g.size() - 1] = 1.0;
        prob.c.conservativeResize(n + 1);
        prob.c[n] = 0.0;

        SocpCone gadget_cone;
        gadget_cone.A = Matrix::Zero(n + 1, n + 1);
        gadget_cone.A(n, n) = 1.0;
        gadget_cone.b = Vector::Zero(n + 1);
        gadget_cone.c = Vector::Zero(n + 1);
        gadget_cone.d = 2.0;
        prob.cones.push_back(std::move(gadget_cone));

        out.rank_bound += 2;
        out.embedding.appended += 1;
    }
    out.program = std::move(prob);
    return out;
}

RankedConicProgram qcqp_rank_increment(const RankedConicProgram& p, long long s) {
    if (s < 0) throw std::invalid_argument("qcqp_rank_increment: s must be >= 0");
    const QcqpProblem* qcqp = std::get_if<QcqpProblem>(&p.program);
    if (!qcqp) throw std::invalid_argument("qcqp_rank_increment: program is not a QCQP");
    RankedConicProgram out = p;
    QcqpProblem prob = *qcqp;
    for (long long gadget = 0; gadget < s; ++gadget) {
        const Index n = prob.n();
        for (Matrix& Q : prob.Q) {
            Q.conservativeResize(n + 1, n + 1);
            Q.col(n).setZero();
            Q.row(n).setZero();
        }
        for (Vector& c : prob.c) {
            c.conservativeResize(n + 1);
            c[n] = 0.0;
        }
        prob.A.conservativeResize(prob.A.rows() + 1, n + 1);
        prob.A.col(n).setZero();
        prob.A.row(prob.A.rows() - 1).setZero();
        prob.A(prob.A.rows() - 1, n) = 1.0;
        prob.b.conservativeResize(prob.b.size() + 1);
        prob.b[prob.b.size() - 1] = 1.0;

        Matrix E = Matrix::Zero(n + 1, n + 1);
        E(n, n) = 1.0;
        prob.Q.push_back(std::move(E));
        prob.c.push_back(Vector::Zero(n + 1));
        prob.d.push_back(-2.0);

        out.rank_bound += 2;
        out.embedding.appended += 1;
    }
    out.program = std::move(prob);
    return out;
}

namespace {

RankedConicProgram clique_like_sdp(const Graph& g, bool use_complement) {
    g.validate();
    if (!g.unweighted())
        throw std::invalid_argument("clique/stability reduction needs an unweighted graph");
    const Index n = g.n;
    SdpProblem sdp;
    sdp.C = Matrix::Zero(n + 1, n + 1);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const bool edge = g.weights(i, j) == 1.0;
            if (edge != use_complement) {
                sdp.C(i, j) = -0.5;
                sdp.C(j, i) = -0.5;
            }
        }
    }
    Matrix sum_row = Matrix::Zero(n + 1, n + 1);
    for (Index i = 0; i < n; ++i) {
        sum_row(i, n) = 0.5;
        sum_row(n, i) = 0.5;
    }
    sdp.constraints.push_back({sum_row, 1.0});
    Matrix corner = Matrix::Zero(n + 1, n + 1);
    corner(n, n) = 1.0;
    sdp.constraints.push_back({corner, 1.0});
    for (Index i = 0; i < n; ++i) {
        Matrix G = Matrix::Zero(n + 1, n + 1);
        G(i, n) = 0.5;
        G(n, i) = 0.5;
        sdp.ineq_constraints.push_back({G, 0.0});
    }
    sdp.rank_bound = 1;

    RankedConicProgram out;
    out.program = std::move(sdp);
    out.rank_bound = 1;
    out.embedding.nodes = n;
    out.embedding.t_index = n;
    return out;
}

}  // namespace

RankedConicProgram clique_to_rank_sdp(const Graph& g) { return clique_like_sdp(g, false); }

RankedConicProgram stability_to_rank_sdp(const Graph& g) {
    return clique_like_sdp(g, true);
}

BisectionResult bisection_maxcut(const Graph& g,
                                 const std::function<bool(long long)>& oracle) {
    g.validate();
    if (!g.unweighted())
        throw std::invalid_argument("bisection_maxcut needs an unweighted graph");
    long long lo = 0;
    long long hi = static_cast<long long>(g.n) * g.n;
    BisectionResult out;
    while (lo < hi) {
        const long long mid = lo + (hi - lo + 1) / 2;
        ++out.oracle_calls;
        if (oracle(mid))
            lo = mid;
        else
            hi = mid - 1;
    }
    out.value = static_cast<double>(lo);
    return out;
}

BisectionResult bisection_maxcut(const Graph& g) {
    const double best = maxcut_brute(g).value;
    return bisection_maxcut(
        g, [best](long long c) { return best >= static_cast<double>(c); });
}

}  // namespace conekit
