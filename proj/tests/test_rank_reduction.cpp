#include "doctest.h"

#include <cmath>
#include <set>

#include "conekit/rank_reduction.hpp"

using namespace conekit;

namespace {

// |x_i| <= x_3 + 2 for i < ncones, minimize x_3 over R^4
SocpProblem axis_socp(Index ncones) {
    SocpProblem p;
    for (Index i = 0; i < ncones; ++i) {
        SocpCone cone;
        cone.A = Matrix::Zero(1, 4);
        cone.A(0, i) = 1.0;
        cone.b = Vector::Zero(1);
        cone.c = Vector::Zero(4);
        cone.c[3] = 1.0;
        cone.d = 2.0;
        p.cones.push_back(cone);
    }
    p.F = Matrix(0, 4);
    p.g = Vector(0);
    p.c = Vector::Zero(4);
    p.c[3] = 1.0;
    return p;
}

// ||x|| <= 1 over R^2, minimize x_0
SocpProblem ball_socp() {
    SocpProblem p;
    SocpCone cone;
    cone.A = Matrix::Identity(2, 2);
    cone.b = Vector::Zero(2);
    cone.c = Vector::Zero(2);
    cone.d = 1.0;
    p.cones.push_back(cone);
    p.F = Matrix(0, 2);
    p.g = Vector(0);
    p.c = Vector::Zero(2);
    p.c[0] = 1.0;
    return p;
}

// min x_2 subject to x_0^2 - x_1 <= 2 and x_2 = 1: every feasible point is
// optimal, so rank reduction has room to move.
QcqpProblem pinned_qcqp() {
    QcqpProblem p;
    p.Q = {Matrix::Zero(3, 3), Matrix::Zero(3, 3)};
    p.Q[1](0, 0) = 1.0;
    p.c = {Vector::Zero(3), Vector::Zero(3)};
    p.c[0][2] = 1.0;
    p.c[1][1] = -1.0;
    p.d = {-2.0};
    p.A = Matrix::Zero(1, 3);
    p.A(0, 2) = 1.0;
    p.b = Vector::Ones(1);
    return p;
}

}  // namespace

TEST_SUITE("rank_reduction") {

TEST_CASE("constraint blocks stack cone rows over the pinned rows") {
    SocpProblem p = axis_socp(2);
    p.F = Matrix::Zero(1, 4);
    p.F(0, 2) = 1.0;
    p.g = Vector::Zero(1);
    const ConstraintBlocks blocks = socp_constraint_blocks(p);
    REQUIRE(blocks.cone_blocks.size() == 2);
    CHECK(blocks.cone_blocks[0].rows() == 2);
    CHECK((blocks.cone_blocks[0].row(0) - p.cones[0].A.row(0)).norm() == 0.0);
    CHECK((blocks.cone_blocks[0].row(1).transpose() - p.cones[0].c).norm() == 0.0);
    REQUIRE(blocks.pinned.rows() == 2);
    CHECK((blocks.pinned.row(0) - p.F.row(0)).norm() == 0.0);
    CHECK((blocks.pinned.row(1).transpose() - p.c).norm() == 0.0);
    const Matrix stacked = blocks.stacked();
    CHECK(stacked.rows() == 6);
    CHECK((stacked.bottomRows(1).transpose() - p.c).norm() == 0.0);
}

TEST_CASE("tighten_step lands on the nearest cone boundary") {
    const SocpProblem p = ball_socp();
    const Vector x = Vector::Zero(2);
    const TightenChoice choice = tighten_step(p, x, {});
    CHECK(choice.cone == 0);
    CHECK(choice.step == doctest::Approx(1.0));  // +-1 tie prefers the positive root
    const Vector moved = x + choice.step * choice.direction;
    CHECK(moved.norm() == doctest::Approx(1.0));

    CHECK_THROWS_AS((void)tighten_step(p, x, {0}), NoTighteningDirection);
    CHECK_THROWS_AS((void)tighten_step(p, Vector::Zero(3), {}), DimensionMismatch);
}

TEST_CASE("tighten_step skips cones blind to the direction") {
    SocpProblem p = ball_socp();
    p.cones[0].A = Matrix::Zero(1, 2);  // |x_0| <= 2 ignores the kernel direction e_1
    p.cones[0].A(0, 0) = 1.0;
    p.cones[0].b = Vector::Zero(1);
    p.cones[0].d = 2.0;
    CHECK_THROWS_AS((void)tighten_step(p, Vector::Zero(2), {}), NoTighteningDirection);
}

TEST_CASE("tighten_step handles a tangential boundary") {
    // |x_0| <= 2 x_1 + 1 along v = +-e_1: the quadratic has a double root and
    // the landing point is doubly tight.
    SocpProblem p = ball_socp();
    p.cones[0].A = Matrix::Zero(1, 2);
    p.cones[0].A(0, 0) = 1.0;
    p.cones[0].b = Vector::Zero(1);
    p.cones[0].c = Vector::Zero(2);
    p.cones[0].c[1] = 2.0;
    p.cones[0].d = 1.0;
    const TightenChoice choice = tighten_step(p, Vector::Zero(2), {});
    CHECK(std::abs(choice.step) == doctest::Approx(0.5));
    const Vector moved = choice.step * choice.direction;
    CHECK(p.cones[0].c.dot(moved) + p.cones[0].d == doctest::Approx(0.0));
}

TEST_CASE("rank reduction on the unit ball pushes to the sphere") {
    const SocpProblem p = ball_socp();
    SocpProblem free_obj = p;
    free_obj.c = Vector::Zero(2);  // unconstrained objective: every point optimal
    const Vector y = Vector::Zero(2);
    const RankReductionResult r = socp_rank_reduce(free_obj, check_feasible(free_obj, y));
    CHECK(r.trace.initial_rank == 2);
    CHECK(r.trace.final_rank == 1);
    CHECK(r.trace.steps.size() == 1);
    CHECK(r.solution.vec().norm() == doctest::Approx(1.0));
    CHECK(socp_spectrum(free_obj, r.solution.vec()).tight_count == 1);
}

TEST_CASE("rank reduction tightens two axis cones deterministically") {
    const SocpProblem p = axis_socp(3);
    const Vector y = Vector::Zero(4);
    const RankReductionResult r = socp_rank_reduce(p, check_feasible(p, y));

    CHECK(r.trace.initial_rank == 6);
    REQUIRE(r.trace.steps.size() == 2);
    CHECK(r.trace.steps[0].tight_set.size() == 1);
    CHECK(r.trace.steps[1].tight_set.size() == 2);
    CHECK(r.trace.steps[0].cone != r.trace.steps[1].cone);

    // every intermediate point feasible, objective coordinate never moves
    Vector x = y;
    for (const RankReductionStep& step : r.trace.steps) {
        x += step.step * step.direction;
        CHECK(check_feasible(p, x).feasible(Tolerances{}));
        CHECK(std::abs(x[3]) <= 1e-12);
    }
    CHECK((x - r.solution.vec()).cwiseAbs().maxCoeff() <= 1e-12);

    CHECK(std::abs(r.solution.objective) <= 1e-9);
    CHECK(r.solution.max_residual <= 1e-7);
    CHECK(socp_spectrum(p, r.solution.vec()).tight_count >= 2);
    CHECK(r.trace.final_rank <= 4);
}

TEST_CASE("rank reduction returns immediately when already tight enough") {
    const SocpProblem p = axis_socp(3);
    Vector y(4);
    y << 2.0, 2.0, 0.0, 0.0;  // two cones tight
    const RankReductionResult r = socp_rank_reduce(p, check_feasible(p, y));
    CHECK(r.trace.steps.empty());
    CHECK(r.trace.initial_rank == 4);
    CHECK(r.trace.final_rank == 4);
    CHECK((r.solution.vec() - y).norm() == 0.0);
}

TEST_CASE("rank reduction guards") {
    const SocpProblem two = axis_socp(2);  // x_2 is pinned by nothing
    CHECK_THROWS_AS((void)socp_rank_reduce(two, check_feasible(two, Vector::Zero(4))),
                    KernelConditionViolated);

    const SocpProblem p = axis_socp(3);
    Vector bad(4);
    bad << 5.0, 0.0, 0.0, 0.0;
    CHECK_THROWS_AS((void)socp_rank_reduce(p, check_feasible(p, bad)), InfeasiblePointError);
}

TEST_CASE("epigraph lift places the quarter offsets and the t column") {
    QcqpProblem p;  // min x^2 subject to x^2 <= 1
    p.Q = {Matrix::Ones(1, 1), Matrix::Ones(1, 1)};
    p.c = {Vector::Zero(1), Vector::Zero(1)};
    p.d = {-1.0};
    p.A = Matrix(0, 1);
    p.b = Vector(0);

    const SocpProblem lift = qcqp_to_socp(p);
    REQUIRE(lift.cones.size() == 2);
    CHECK(lift.c[1] == 1.0);

    const SocpCone& obj = lift.cones[0];
    CHECK(obj.A.rows() == 2);
    CHECK(obj.A(1, 1) == -1.0);  // epigraph variable enters the objective cone only
    CHECK(obj.b[1] == doctest::Approx(0.25));
    CHECK(obj.c[1] == 1.0);
    CHECK(obj.d == doctest::Approx(0.25));

    const SocpCone& con = lift.cones[1];
    CHECK(con.A(1, 1) == 0.0);
    CHECK(con.b[1] == doctest::Approx(-0.75));
    CHECK(con.d == doctest::Approx(1.25));

    Vector z(2);
    z << 0.5, 0.25;  // honest lift of x = 0.5
    CHECK(check_feasible(lift, z).max_residual <= 1e-12);
    CHECK(check_feasible(lift, z).objective == doctest::Approx(0.25));
    CHECK(socp_spectrum(lift, z).tight_count == 1);  // objective cone only

    z << 1.0, 1.0;  // constraint boundary
    CHECK(check_feasible(lift, z).max_residual <= 1e-12);
    CHECK(socp_spectrum(lift, z).tight_count == 2);

    p.Q[1](0, 0) = -1.0;
    CHECK_THROWS_AS((void)qcqp_to_socp(p), NotPsdError);
}

TEST_CASE("qcqp rank reduction stops early at a tight optimum") {
    QcqpProblem p;  // min x.x subject to x_0 = 1
    p.Q = {Matrix::Identity(2, 2)};
    p.c = {Vector::Zero(2)};
    p.A = Matrix::Zero(1, 2);
    p.A(0, 0) = 1.0;
    p.b = Vector::Ones(1);

    Vector y(2);
    y << 1.0, 0.0;
    const RankReductionResult r = qcqp_rank_reduce(p, check_feasible(p, y));
    CHECK(r.trace.steps.empty());
    CHECK(r.trace.initial_rank == 1);
    CHECK(r.trace.final_rank == 1);
    CHECK(r.solution.objective == doctest::Approx(1.0));
}

TEST_CASE("qcqp rank reduction tightens the slack constraint") {
    const QcqpProblem p = pinned_qcqp();
    Vector y(3);
    y << 0.0, 0.0, 1.0;
    const RankReductionResult r = qcqp_rank_reduce(p, check_feasible(p, y));

    CHECK(r.trace.initial_rank == 3);
    CHECK(r.trace.final_rank == 2);
    REQUIRE(r.trace.steps.size() == 1);
    CHECK(r.trace.steps[0].cone == 1);
    CHECK(r.trace.steps[0].tight_set == std::vector<long long>{0, 1});

    CHECK(r.solution.objective == doctest::Approx(1.0));  // x_2 stays pinned
    CHECK(r.solution.max_residual <= 1e-7);
    const Vector& x = r.solution.vec();
    CHECK(x[0] * x[0] - x[1] - 2.0 == doctest::Approx(0.0));  // constraint now tight
}

TEST_CASE("qcqp rank reduction guards") {
    QcqpProblem p = pinned_qcqp();
    // grow to R^4 with a coordinate no block touches
    for (Matrix& q : p.Q) {
        Matrix grown = Matrix::Zero(4, 4);
        grown.topLeftCorner(3, 3) = q;
        q = grown;
    }
    for (Vector& cv : p.c) {
        Vector grown = Vector::Zero(4);
        grown.head(3) = cv;
        cv = grown;
    }
    Matrix A = Matrix::Zero(1, 4);
    A.leftCols(3) = p.A;
    p.A = A;
    CHECK_THROWS_AS(
        (void)qcqp_rank_reduce(p, check_feasible(p, Vector::Unit(4, 2))),
        KernelConditionViolated);

    const QcqpProblem q3 = pinned_qcqp();
    CHECK_THROWS_AS((void)qcqp_rank_reduce(q3, check_feasible(q3, Vector::Zero(3))),
                    InfeasiblePointError);
}

}  // TEST_SUITE
