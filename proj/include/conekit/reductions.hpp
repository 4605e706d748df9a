#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "conekit/problems.hpp"

namespace conekit {

// Weighted undirected graph as a symmetric weight matrix with zero diagonal.
struct Graph {
    Index n = 0;
    Matrix weights;  // n x n, symmetric, zero diagonal

    void validate() const;
    bool unweighted() const;  // all entries in {0, 1}
};

// Variable layout bookkeeping for reductions whose programs embed the
// original variables inside a larger vector; -1 marks an absent block.
struct Embedding {
    Index nodes = 0;        // graph vertex count
    Index x_offset = -1;    // start of the x block
    Index xmat_offset = -1; // start of the packed X block (upper triangle,
                            // column-major: (i,j), i <= j, at j(j+1)/2 + i)
    Index t_index = -1;     // epigraph coordinate
    Index leading = 0;      // leading identity block size (SDP increments)
    Index appended = 0;     // trailing coordinates pinned to 1 by gadgets
};

struct RankedConicProgram {
    std::variant<SdpProblem, SocpProblem, QcqpProblem> program;
    long long rank_bound = 1;
    Embedding embedding;
};

struct CutResult {
    double value = 0.0;
    std::vector<int> signs;  // +-1 per vertex; signs[0] == +1
};

// W[i][j] = w(i,j)/4 off the diagonal, W[i][i] = -sum_k w(i,k)/4, so that
// tr(W xx^T) = -cut(x) for every sign vector x; W 1 = 0.
Matrix weight_matrix(const Graph& g);

// Exhaustive max-cut over all bipartitions, vertex 0 fixed to +1. Ties are
// broken by the lexicographically smallest sign vector (-1 < +1). n <= 24.
CutResult maxcut_brute(const Graph& g);
CutResult maxcut_brute_serial(const Graph& g);

// Rank-1 SDP: minimize tr(WX), X_ii = 1, X psd, rank(X) <= 1.
RankedConicProgram maxcut_to_rank_sdp(const Graph& g);

// Embed a diagonally constrained rank-1 SDP into dimension n+r-1 with rank
// bound r: objective [[0,0],[0,W]], unit diagonal, and zeroed first r-1 rows
// off the diagonal; (n-1)r + r(r+1)/2 equality constraints in total.
RankedConicProgram sdp_rank_increment(const RankedConicProgram& p, long long r);

using RankFn = std::function<long long(long long)>;

// phi(m) = floor((m - rt(rt+1)/2) / rt) + 1 with rt = max(r(1..m)).
long long phi(long long m, const RankFn& r);
long long phi(long long m, const std::vector<long long>& r_table);
std::vector<long long> phi_table(long long max_m, const RankFn& r);

// Smallest m >= n-1 with phi(m) = n, scanning linearly up to budget.
long long find_m(long long n, const RankFn& r, long long budget = 1000000);
long long find_m(long long n, const std::vector<long long>& r_table,
                 long long budget = 1000000);

// Rank-constrained SOCP over z = (x, packed X, t): one cone per shifted
// orthonormal basis matrix of the symmetric n x n space plus one for I,
// each reading ||(tr(AX) - 1, 2Px)|| <= tr(AX) + 1 with A = P^T P; linear
// rows X_ii = 1 and tr(WX) - t = 0; objective t; rank bound = cone count.
RankedConicProgram maxcut_to_rank_socp(const Graph& g);

// Append s slack gadgets: each adds one coordinate pinned to 1 by a new
// linear row and one strictly slack cone ||e x|| <= 2, raising the rank
// bound by 2 without moving the optimal value.
RankedConicProgram socp_rank_increment(const RankedConicProgram& p, long long s);

// QCQP flavor of the same gadget: new constraint x_new^2 - 2 <= 0 plus the
// pinning row; rank bound again rises by 2 per gadget.
RankedConicProgram qcqp_rank_increment(const RankedConicProgram& p, long long s);

// Rank-1 SDP over (x, t) whose optimal value v gives omega(G) = 1/(1 + 2v).
RankedConicProgram clique_to_rank_sdp(const Graph& g);

// Same construction on the complement edge set; alpha(G) = 1/(1 + 2v).
RankedConicProgram stability_to_rank_sdp(const Graph& g);

struct BisectionResult {
    double value = 0.0;
    long long oracle_calls = 0;
};

// Exact integer max-cut value of an unweighted graph located by bisection
// over thresholds in [0, n^2]; oracle(c) answers "does a cut >= c exist".
BisectionResult bisection_maxcut(const Graph& g,
                                 const std::function<bool(long long)>& oracle);
BisectionResult bisection_maxcut(const Graph& g);  // brute-force oracle

}  // namespace conekit
