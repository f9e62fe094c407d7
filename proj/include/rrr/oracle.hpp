// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rrr/linalg.hpp"
#include "rrr/matrix_function.hpp"

namespace rrr {

// Brute-force references backing every derived expectation in the test
// suites. This module deliberately does not include the randomized
// extraction path, so it cannot validate it circularly.

struct ReferenceEigenpair {
  enum class Method { dense, residual_inverse_iteration };
  Complex lambda;
  Vector v;                 // unit
  std::optional<Vector> u;  // unit left eigenvector
  double residual = 0.0;    // ||A(lambda) v||
  Method method = Method::dense;
};

// Full dense eigensolve (standard or pencil), eigenpair nearest the shift,
// with left vector.
ReferenceEigenpair dense_reference_eigen(const MatrixFunction& A,
                                         Complex shift);

// Residual inverse iteration run to `tol`, certified by the residual. The
// scalar root solve is self-contained here.
ReferenceEigenpair nep_reference(const MatrixFunction& A, Complex sigma,
                                 double tol = 1e-12, int max_steps = 400,
                                 std::uint64_t seed = 1234,
                                 const Vector* start = nullptr);

// Least-squares log-log slope of the central-difference error against h.
// Floor detection trips when errors sit at rounding level or h is too small
// for meaningful differences.
struct SlopeCheck {
  double slope = 0.0;
  bool floor_detected = false;
  std::vector<double> errors;
};

SlopeCheck fd_derivative_check(const MatrixFunction& A, Complex xi,
                               const std::vector<double>& h_list,
                               int order = 1);

// Empirical tail probabilities for the extreme singular values of complex
// Gaussian matrices, with binomial standard errors.
struct TailRow {
  double delta = 0.0;
  double threshold_norm = 0.0;   // sqrt(n) + sqrt(m) + sqrt(ln(2/delta))
  double threshold_inv = 0.0;    // sqrt(m/delta), square case only
  double p_norm = 0.0;
  double p_inv = 0.0;
  double stderr_norm = 0.0;
  double stderr_inv = 0.0;
};

struct TailTable {
  std::vector<TailRow> rows;
  std::vector<double> norm_samples;  // ||Omega|| per trial
  std::vector<double> inv_samples;   // ||Omega^{-1}|| per trial (square only)
  Index trials = 0;
};

TailTable mc_tail(Index rows, Index cols, Index trials,
                  const std::vector<double>& deltas,
                  std::uint64_t master_seed);

}  // namespace rrr
