// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rrr/linalg.hpp"
#include "rrr/matrix_function.hpp"
#include "rrr/settings.hpp"

namespace rrr {

// Output of the Galerkin (test = trial) extraction. Failure modes are
// reported explicitly so experiment tables can tell "wrong answer" from
// "no answer": near-singular compressed pencils raise SingularPencil, and
// defective compressed matrices show up in eigenvector_condition.
struct RitzSet {
  Vector values;
  Matrix coefficient_vectors;  // m x k
  Matrix ambient_vectors;      // n x k, unit columns in range(W)
  RealVector residuals;        // ||A(mu) W y|| per pair
  double eigenvector_condition = 0.0;  // cond of the compressed eigenbasis
};

// Eigenpairs of W^H A0 W lifted to the ambient space, ordered by distance
// to the shift.
RitzSet rayleigh_ritz_standard(const Matrix& A0, const OrthonormalBasis& W,
                               Complex shift = Complex(0, 0));

// Eigenpairs of (W^H A0 W, W^H A1 W). Throws SingularPencil when the
// compressed mass matrix has vanished relative to A1 (neutral-mode
// subspaces) or when the compressed pencil is singular.
RitzSet rayleigh_ritz_pencil(const Matrix& A0, const Matrix& A1,
                             const OrthonormalBasis& W,
                             Complex shift = Complex(0, 0),
                             const Settings& cfg = default_settings());

// Compressed m x m nonlinear problem W^H A(.) W solved by the same
// machinery as the randomized path; pairs nearest the shift.
RitzSet rayleigh_ritz_nep(const MatrixFunction& A, const OrthonormalBasis& W,
                          Complex shift,
                          const Settings& cfg = default_settings());

}  // namespace rrr
