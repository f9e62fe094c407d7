// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "rrr/settings.hpp"
#include "rrr/types.hpp"

namespace rrr {

// n x m matrix whose columns are orthonormal to working precision.
// Construction verifies ||W^H W - I|| <= 1e-12 * sqrt(m).
class OrthonormalBasis {
 public:
  explicit OrthonormalBasis(Matrix W);

  const Matrix& matrix() const { return W_; }
  Index rows() const { return W_.rows(); }
  Index cols() const { return W_.cols(); }

 private:
  Matrix W_;
};

struct EigenpairSet {
  Vector values;                        // finite eigenvalues only
  Matrix right_vectors;                 // unit columns, one per value
  std::optional<Matrix> left_vectors;   // u^H A = lambda u^H B, unit columns
  Index num_infinite = 0;               // pencil: beta ~ 0, alpha away from 0
  Index num_indeterminate = 0;          // pencil: alpha and beta both ~ 0
};

struct SvdResult {
  Matrix U;          // thin
  RealVector sigma;  // nonincreasing, nonnegative
  Matrix V;          // thin
};

// QR-based orthonormalization (modified Gram-Schmidt with one
// reorthogonalization pass). Throws RankDeficient when a column's residual
// after projection falls below rtol * ||M||_F, unless drop_deficient is set,
// in which case the column is skipped.
OrthonormalBasis orthonormalize(const Matrix& M, bool drop_deficient = false,
                                const Settings& cfg = default_settings());

// Canonical angle between span{v} and range(W), in [0, pi/2]. Computed from
// both the projection and the residual so it stays accurate at both ends.
double principal_angle(const Vector& v, const OrthonormalBasis& W);

// Dense eigensolve of a square complex matrix (Hessenberg + shifted QR).
// Pairs are sorted by |value - shift|, ties by real then imaginary part.
EigenpairSet small_eig(const Matrix& M, bool want_left = false,
                       Complex shift = Complex(0, 0));

// Dense generalized eigensolve of the pencil F - xi*G via the QZ algorithm.
// Infinite/indeterminate eigenvalues are counted, never silently dropped.
// Throws SingularPencil when the pencil is singular up to tolerance at
// m+1 probe points.
EigenpairSet small_geig(const Matrix& F, const Matrix& G,
                        bool want_left = false, Complex shift = Complex(0, 0),
                        const Settings& cfg = default_settings());

// Thin SVD with singular values in nonincreasing order.
SvdResult svd(const Matrix& M);

// Spectral norm (largest singular value). Exact for small matrices,
// power iteration on M^H M above the crossover.
double spectral_norm(const Matrix& M);

// X with M X = B via partially pivoted LU. Throws SingularMatrix when a
// pivot falls below rtol * ||M||_F.
Matrix solve(const Matrix& M, const Matrix& B,
             const Settings& cfg = default_settings());

// exp(t*G) v by scaling and squaring with a truncated Taylor series on the
// substeps; tol is the per-call relative accuracy target.
Vector expm_action(const Matrix& G, double t, const Vector& v,
                   double tol = 1e-13);

}  // namespace rrr
