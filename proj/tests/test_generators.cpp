#include "doctest.h"

#include <cmath>
#include <random>

#include "conekit/generators.hpp"
#include "conekit/hyperbolic_rank.hpp"
#include "conekit/sparsify.hpp"

using namespace conekit;

TEST_SUITE("generators") {

TEST_CASE("tight qcqp with a lone objective block") {
    const TightInstance inst = tight_qcqp(4, 1, 0, {1});
    const QcqpProblem& p = std::get<QcqpProblem>(inst.problem);
    CHECK(p.k() == 0);
    CHECK(p.Q[0](0, 0) == 1.0);
    CHECK(p.c[0][0] == -2.0);
    CHECK(p.A(0, 2) == 1.0);

    Vector expected(4);
    expected << 1.0, 0.0, 1.0, 0.0;
    CHECK((inst.x_star - expected).norm() == 0.0);
    CHECK(inst.optimal_value == -1.0);
    CHECK(inst.cardinality_bound == 2);

    const Solution sol = check_feasible(p, inst.x_star);
    CHECK(sol.max_residual == 0.0);
    CHECK(sol.objective == doctest::Approx(-1.0));
    CHECK(cardinality(inst.x_star, Tolerances{}.zero_tol) == 2);
}

TEST_CASE("tight qcqp optimum is a sparsification fixed point") {
    const TightInstance inst = tight_qcqp(6, 1, 1, {1, 1});
    const QcqpProblem& p = std::get<QcqpProblem>(inst.problem);

    Vector expected(6);
    expected << 1.0, 0.0, 1.0, 1.0, 1.0, 0.0;
    CHECK((inst.x_star - expected).norm() == 0.0);
    CHECK(inst.optimal_value == 0.0);
    CHECK(inst.cardinality_bound == 4);

    const Solution sol = check_feasible(p, inst.x_star);
    CHECK(sol.objective == doctest::Approx(0.0));
    // the single quadratic constraint is exactly tight at the optimum
    const Vector& x = inst.x_star;
    CHECK(x.dot(p.Q[1] * x) + p.c[1].dot(x) + p.d[0] == doctest::Approx(0.0));

    const SparsifyResult r = sparsify_qcqp(p, sol);
    CHECK(r.trace.final_card == inst.cardinality_bound);
    CHECK(r.trace.pivots.empty());
    CHECK((r.solution.vec() - inst.x_star).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("tight qcqp random feasible points never beat the optimum") {
    const TightInstance inst = tight_qcqp(6, 1, 1, {1, 1});
    const QcqpProblem& p = std::get<QcqpProblem>(inst.problem);
    std::mt19937 gen(5150u);
    const auto pick = [&gen]() { return static_cast<double>(gen() % 2001) / 1000.0 - 1.0; };
    for (int trial = 0; trial < 20; ++trial) {
        Vector x = Vector::Zero(6);
        x[0] = pick();
        x[1] = pick();
        x[2] = pick();
        x[5] = pick();
        x[4] = 1.0;  // Ax = b
        // constraint: x2^2 - 2 x2 - x3 + 2 <= 0
        x[3] = (x[2] - 1.0) * (x[2] - 1.0) + 1.0 + std::abs(pick());
        const Solution sol = check_feasible(p, x);
        REQUIRE(sol.feasible(Tolerances{}));
        CHECK(sol.objective >= inst.optimal_value - 1e-12);
    }
}

TEST_CASE("tight socp marks its optimum doubly tight") {
    const TightInstance inst = tight_socp(5, 1, 1, {1});
    const SocpProblem& p = std::get<SocpProblem>(inst.problem);
    CHECK(p.cones.size() == 1);
    CHECK(p.cones[0].A(0, 0) == 1.0);
    CHECK(p.cones[0].c[1] == 1.0);
    CHECK(p.cones[0].d == -1.0);
    CHECK(p.F(0, 2) == 1.0);

    Vector expected(5);
    expected << 1.0, 1.0, 1.0, 0.0, 0.0;
    CHECK((inst.x_star - expected).norm() == 0.0);
    CHECK(inst.optimal_value == 1.0);
    CHECK(inst.cardinality_bound == 3);

    const Solution sol = check_feasible(p, inst.x_star);
    CHECK(sol.max_residual == 0.0);
    CHECK(sol.objective == doctest::Approx(1.0));

    const HyperbolicSpectrum spec = socp_spectrum(p, inst.x_star);
    CHECK(spec.tight_count == 1);
    CHECK(spec.doubly_zero_count == 1);
    CHECK(spec.rank == 0);

    const SparsifyResult r = sparsify_socp(p, sol);
    CHECK(r.trace.final_card == inst.cardinality_bound);
    CHECK(r.trace.pivots.empty());
}

TEST_CASE("tight socp with two cones") {
    const TightInstance inst = tight_socp(8, 1, 2, {1, 1});
    const SocpProblem& p = std::get<SocpProblem>(inst.problem);
    CHECK(inst.cardinality_bound == 5);
    CHECK(inst.optimal_value == 2.0);
    CHECK(check_feasible(p, inst.x_star).objective == doctest::Approx(2.0));

    const HyperbolicSpectrum spec = socp_spectrum(p, inst.x_star);
    CHECK(spec.tight_count == 2);
    CHECK(spec.doubly_zero_count == 2);
    CHECK(spec.rank == 0);

    // feasible points pay at least 1 + |x_s - 1| per cone
    std::mt19937 gen(99u);
    for (int trial = 0; trial < 20; ++trial) {
        Vector x = Vector::Zero(8);
        x[0] = static_cast<double>(gen() % 200) / 100.0;
        x[2] = static_cast<double>(gen() % 200) / 100.0;
        x[1] = 1.0 + std::abs(x[0] - 1.0) + static_cast<double>(gen() % 100) / 100.0;
        x[3] = 1.0 + std::abs(x[2] - 1.0);
        x[4] = 1.0;
        const Solution sol = check_feasible(p, x);
        REQUIRE(sol.feasible(Tolerances{}));
        CHECK(sol.objective >= inst.optimal_value - 1e-12);
    }
}

TEST_CASE("generator guards") {
    CHECK_THROWS_AS((void)tight_qcqp(3, 1, 0, {2}), BoundNotNontrivial);
    CHECK_THROWS_AS((void)tight_qcqp(4, 1, 1, {1}), std::invalid_argument);
    CHECK_THROWS_AS((void)tight_qcqp(4, 1, 0, {0}), std::invalid_argument);
    CHECK_THROWS_AS((void)tight_socp(3, 1, 1, {1}), BoundNotNontrivial);
    CHECK_THROWS_AS((void)tight_socp(5, 1, 1, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS((void)tight_socp(5, 1, 1, {0}), std::invalid_argument);

    // m = 0 leaves an empty linear block but still works
    const TightInstance inst = tight_qcqp(3, 0, 0, {1});
    CHECK(inst.cardinality_bound == 1);
    CHECK(std::get<QcqpProblem>(inst.problem).m() == 0);
    CHECK(check_feasible(std::get<QcqpProblem>(inst.problem), inst.x_star).objective ==
          doctest::Approx(-1.0));
}

}  // TEST_SUITE
