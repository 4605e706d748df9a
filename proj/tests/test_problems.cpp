#include "doctest.h"

#include <cmath>
#include <limits>

#include "conekit/problems.hpp"

using namespace conekit;

namespace {

LpProblem small_lp() {
    LpProblem p;
    p.A = Matrix(1, 2);
    p.A << 1.0, 1.0;
    p.b = Vector::Ones(1);
    p.c = Vector(2);
    p.c << 1.0, 2.0;
    p.nonneg = true;
    return p;
}

}  // namespace

TEST_SUITE("problems") {

TEST_CASE("lp validation and residuals") {
    LpProblem p = small_lp();
    p.validate();

    Vector x(2);
    x << 0.5, 0.5;
    const Solution s = check_feasible(p, x);
    CHECK(s.objective == doctest::Approx(1.5));
    CHECK(s.max_residual == 0.0);
    CHECK(s.feasible(Tolerances{}));

    x << 1.0, 1.0;
    CHECK(check_feasible(p, x).max_residual == doctest::Approx(1.0));

    x << 1.5, -0.5;  // equality holds, sign constraint violated
    CHECK(check_feasible(p, x).max_residual == doctest::Approx(0.5));

    p.b = Vector::Ones(2);
    CHECK_THROWS_AS(p.validate(), DimensionMismatch);
    p = small_lp();
    p.c[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("qcqp objective and constraint residuals") {
    QcqpProblem p;
    p.Q = {Matrix::Identity(2, 2), Matrix::Identity(2, 2)};
    p.c = {Vector::Zero(2), Vector::Zero(2)};
    p.d = {-1.0};  // ||x||^2 <= 1
    p.A = Matrix(0, 2);
    p.b = Vector(0);
    p.validate();

    CHECK(p.k() == 1);
    CHECK(p.d_of(0) == 0.0);
    CHECK(p.d_of(1) == -1.0);

    Vector x(2);
    x << 1.0, 0.0;
    Solution s = check_feasible(p, x);
    CHECK(s.objective == doctest::Approx(1.0));
    CHECK(s.max_residual == doctest::Approx(0.0));

    x << 1.1, 0.0;
    CHECK(check_feasible(p, x).max_residual == doctest::Approx(0.21));

    p.d.clear();
    CHECK_THROWS_AS(p.validate(), DimensionMismatch);
}

TEST_CASE("socp residual is the worst cone violation") {
    SocpProblem p;
    SocpCone cone;
    cone.A = Matrix::Identity(2, 2);
    cone.b = Vector::Zero(2);
    cone.c = Vector::Zero(2);
    cone.d = 1.0;  // ||x|| <= 1
    p.cones.push_back(cone);
    p.F = Matrix(0, 2);
    p.g = Vector(0);
    p.c = Vector(2);
    p.c << 1.0, 0.0;
    p.validate();

    Vector x(2);
    x << 0.6, 0.8;
    const Solution s = check_feasible(p, x);
    CHECK(s.objective == doctest::Approx(0.6));
    CHECK(s.max_residual == doctest::Approx(0.0));

    x << 0.6, 1.0;
    CHECK(check_feasible(p, x).max_residual ==
          doctest::Approx(std::sqrt(0.36 + 1.0) - 1.0));

    p.cones[0].c = Vector::Zero(3);
    CHECK_THROWS_AS(p.validate(), DimensionMismatch);
}

TEST_CASE("sdp residual covers equalities, inequalities and psd-ness") {
    SdpProblem p;
    p.C = Matrix::Identity(2, 2);
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 1.0;
    p.constraints.push_back({a, 1.0});
    p.validate();

    Matrix x = Matrix::Zero(2, 2);
    x(0, 0) = 1.0;
    Solution s = check_feasible(p, x);
    CHECK(s.objective == doctest::Approx(1.0));
    CHECK(s.max_residual == doctest::Approx(0.0));

    x(0, 1) = 0.5;
    x(1, 0) = 0.5;  // eigenvalues (1 +- sqrt(2)) / 2
    CHECK(check_feasible(p, x).max_residual ==
          doctest::Approx((std::sqrt(2.0) - 1.0) / 2.0));

    Matrix g = Matrix::Zero(2, 2);
    g(1, 1) = 1.0;
    p.ineq_constraints.push_back({g, 2.0});
    x(0, 1) = 0.0;
    x(1, 0) = 0.0;
    CHECK(check_feasible(p, x).max_residual == doctest::Approx(2.0));

    Matrix bad(2, 2);
    bad << 1.0, 1.0, 0.0, 1.0;
    CHECK_THROWS_AS((void)check_feasible(p, bad), NotSymmetricError);
}

TEST_CASE("solution point accessors guard the held alternative") {
    Solution s;
    s.point = Vector(Vector::Ones(2));
    CHECK(s.vec().size() == 2);
    CHECK_THROWS_AS((void)s.mat(), DimensionMismatch);
    s.point = Matrix(Matrix::Identity(2, 2));
    CHECK(s.mat().rows() == 2);
    CHECK_THROWS_AS((void)s.vec(), DimensionMismatch);
}

TEST_CASE("cardinality and clamping share the zero threshold") {
    Vector x(4);
    x << 1.0, 1e-12, -2.0, 0.0;
    CHECK(cardinality(x, 1e-9) == 2);
    const Vector y = clamp_small(x, 1e-9);
    CHECK(y[1] == 0.0);
    CHECK(y[0] == 1.0);
    CHECK(cardinality(y, 0.0) == 2);
}

}  // TEST_SUITE
