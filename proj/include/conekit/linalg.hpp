#pragma once

#include "conekit/types.hpp"

namespace conekit {

// Number of singular values exceeding rank_tol_rel times the largest one.
Index numerical_rank(const Matrix& m, const Tolerances& tol = {});

// Orthonormal basis of the numerical null space, one column per kernel
// direction (cols(m) - numerical_rank(m) columns, possibly zero).
Matrix kernel_basis(const Matrix& m, const Tolerances& tol = {});

// Factor a symmetric PSD matrix as q = p^T p with rank(q) rows.
// Eigenvalues in [-feas_tol * scale, 0] are clamped to zero; anything more
// negative raises NotPsdError. Asymmetry beyond feas_tol * scale raises
// NotSymmetricError.
Matrix psd_factor(const Matrix& q, const Tolerances& tol = {});

}  // namespace conekit
