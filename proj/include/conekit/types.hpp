#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <variant>

namespace conekit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Shared tolerance policy. zero_tol clamps tiny entries, feas_tol bounds
// acceptable constraint violation, rank_tol_rel is relative to the largest
// singular value when deciding numerical rank.
struct Tolerances {
    double zero_tol = 1e-9;
    double feas_tol = 1e-7;
    double rank_tol_rel = 1e-10;

    void validate() const {
        if (!(zero_tol > 0.0) || !(feas_tol > 0.0) || !(rank_tol_rel > 0.0))
            throw std::invalid_argument("tolerances must be positive");
        if (zero_tol > feas_tol)
            throw std::invalid_argument("zero_tol must not exceed feas_tol");
    }
};

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NotSymmetricError : public Error {
public:
    using Error::Error;
};

class NotPsdError : public Error {
public:
    using Error::Error;
};

// A supplied point violates the feasibility tolerance of its problem.
class InfeasiblePointError : public Error {
public:
    using Error::Error;
};

// A support kernel direction strictly improves the objective, so the input
// point cannot have been optimal.
class NotOptimalInputError : public Error {
public:
    using Error::Error;
};

class KernelConditionViolated : public Error {
public:
    using Error::Error;
};

class NoTighteningDirection : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class TooLargeError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

class BoundNotNontrivial : public Error {
public:
    using Error::Error;
};

// Candidate point together with its recomputed objective and worst residual.
// LP/QCQP/SOCP points are vectors; SDP points are symmetric matrices.
struct Solution {
    std::variant<Vector, Matrix> point;
    double objective = 0.0;
    double max_residual = 0.0;

    const Vector& vec() const {
        if (!std::holds_alternative<Vector>(point))
            throw DimensionMismatch("solution holds a matrix point, vector expected");
        return std::get<Vector>(point);
    }
    const Matrix& mat() const {
        if (!std::holds_alternative<Matrix>(point))
            throw DimensionMismatch("solution holds a vector point, matrix expected");
        return std::get<Matrix>(point);
    }
    bool feasible(const Tolerances& tol) const { return max_residual <= tol.feas_tol; }
};

// Entries with |x_i| <= zero_tol are treated as exact zeros.
inline Index cardinality(const Vector& x, double zero_tol) {
    Index card = 0;
    for (Index i = 0; i < x.size(); ++i)
        if (std::abs(x[i]) > zero_tol) ++card;
    return card;
}

inline Vector clamp_small(Vector x, double zero_tol) {
    for (Index i = 0; i < x.size(); ++i)
        if (std::abs(x[i]) <= zero_tol) x[i] = 0.0;
    return x;
}

}  // namespace conekit
