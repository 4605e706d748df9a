#include "doctest.h"

#include <cmath>

#include "conekit/sparsify.hpp"

using namespace conekit;

namespace {

// |x0| <= 2 plus one linear equation over six nonneg-free variables; the
// objective equals the equation row so every feasible point is optimal.
QcqpProblem slack_qcqp() {
    QcqpProblem p;
    p.Q = {Matrix::Zero(6, 6), Matrix::Zero(6, 6)};
    p.Q[1](0, 0) = 1.0;
    p.c = {Vector::Ones(6), Vector::Zero(6)};
    p.d = {-4.0};
    p.A = Matrix::Ones(1, 6);
    p.b = Vector(1);
    p.b << 3.5;
    return p;
}

SocpProblem slack_socp() {
    SocpProblem p;
    SocpCone cone;  // |x0 - 1| <= x1
    cone.A = Matrix::Zero(1, 6);
    cone.A(0, 0) = 1.0;
    cone.b = Vector(1);
    cone.b << -1.0;
    cone.c = Vector::Zero(6);
    cone.c[1] = 1.0;
    cone.d = 0.0;
    p.cones.push_back(cone);
    p.F = Matrix::Ones(1, 6);
    p.g = Vector(1);
    p.g << 5.5;
    p.c = Vector::Ones(6);
    return p;
}

}  // namespace

TEST_SUITE("sparsify") {

TEST_CASE("qcqp auxiliary LP pins factors, gradients, and the linear block") {
    const QcqpProblem p = slack_qcqp();
    Vector y(6);
    y << 1.0, 0.5, 0.5, 0.5, 0.5, 0.5;
    const AuxiliaryLp aux = qcqp_auxiliary_lp(p, y);

    // rank(Q_0) + rank(Q_1) rows, then k gradient rows, then m equation rows
    REQUIRE(aux.lp.A.rows() == 3);
    REQUIRE(aux.row_provenance.size() == 3);
    CHECK(aux.row_provenance[0].source == 1);
    CHECK(aux.row_provenance[0].relation == "P_i x = P_i y");
    CHECK(aux.row_provenance[1].source == 1);
    CHECK(aux.row_provenance[1].relation == "c_i^T x = c_i^T y");
    CHECK(aux.row_provenance[2].source == -1);
    CHECK(aux.row_provenance[2].relation == "Ax = b");

    CHECK(aux.lp.nonneg == false);
    CHECK((aux.lp.c - p.c[0]).norm() == 0.0);
    CHECK((aux.lp.A * y - aux.lp.b).cwiseAbs().maxCoeff() <= 1e-12);

    CHECK_THROWS_AS((void)qcqp_auxiliary_lp(p, Vector::Zero(4)), DimensionMismatch);
}

TEST_CASE("socp auxiliary LP lists cone rows before gradients") {
    const SocpProblem p = slack_socp();
    Vector y(6);
    y << 1.0, 0.5, 1.0, 1.0, 1.0, 1.0;
    const AuxiliaryLp aux = socp_auxiliary_lp(p, y);

    REQUIRE(aux.lp.A.rows() == 3);
    REQUIRE(aux.row_provenance.size() == 3);
    CHECK(aux.row_provenance[0].source == 0);
    CHECK(aux.row_provenance[0].relation == "A_i x = A_i y");
    CHECK(aux.row_provenance[1].source == 0);
    CHECK(aux.row_provenance[1].relation == "c_i^T x = c_i^T y");
    CHECK(aux.row_provenance[2].source == -1);
    CHECK(aux.row_provenance[2].relation == "Fx = g");
    CHECK((aux.lp.A * y - aux.lp.b).cwiseAbs().maxCoeff() <= 1e-12);

    CHECK_THROWS_AS((void)socp_auxiliary_lp(p, Vector::Zero(2)), DimensionMismatch);
}

TEST_CASE("sparsify_qcqp reaches the auxiliary row bound") {
    const QcqpProblem p = slack_qcqp();
    Vector y(6);
    y << 1.0, 0.5, 0.5, 0.5, 0.5, 0.5;
    const SparsifyResult r = sparsify_qcqp(p, check_feasible(p, y));
    CHECK(r.trace.initial_card == 6);
    CHECK(r.trace.final_card <= 3);
    CHECK(r.solution.vec()[0] == doctest::Approx(1.0));  // pinned by the factor row
    CHECK(r.solution.objective == doctest::Approx(3.5));
    CHECK(r.solution.max_residual <= 1e-7);

    y[0] = 3.0;  // violates x0^2 <= 4
    CHECK_THROWS_AS((void)sparsify_qcqp(p, check_feasible(p, y)), InfeasiblePointError);
}

TEST_CASE("sparsify_socp reaches the auxiliary row bound") {
    const SocpProblem p = slack_socp();
    Vector y(6);
    y << 1.0, 0.5, 1.0, 1.0, 1.0, 1.0;
    const SparsifyResult r = sparsify_socp(p, check_feasible(p, y));
    CHECK(r.trace.initial_card == 6);
    CHECK(r.trace.final_card <= 3);
    CHECK(r.solution.vec()[0] == doctest::Approx(1.0));
    CHECK(r.solution.vec()[1] == doctest::Approx(0.5));
    CHECK(r.solution.objective == doctest::Approx(5.5));
    CHECK(r.solution.max_residual <= 1e-7);

    y[1] = -1.0;  // cone needs c^T x + d >= 0
    CHECK_THROWS_AS((void)sparsify_socp(p, check_feasible(p, y)), InfeasiblePointError);
}

}  // TEST_SUITE
