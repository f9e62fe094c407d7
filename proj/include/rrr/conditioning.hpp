// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "rrr/linalg.hpp"
#include "rrr/matrix_function.hpp"

namespace rrr {

// Condition numbers of a simple eigenvalue together with the probabilistic
// bound constants attached to a failure budget delta.
struct CondReport {
  double kappa_val = 0.0;
  double kappa_vec = 0.0;
  double C0 = 0.0;      // sqrt(m) + sqrt(2) + sqrt(ln(2/delta))
  double Cr_val = 0.0;  // C0 * kappa_val / sqrt(delta)
  double Cr_vec = 0.0;  // 1 + C0 * sqrt(m-1) * kappa_vec / sqrt(delta)
  double delta = 0.0;
  Index m = 0;
};

// ||u|| ||v|| / |u^H A'(lambda) v|. Throws DefectiveEigenvalue when the
// denominator is negligible (simplicity violated).
double kappa_val(const MatrixFunction& A, Complex lambda, const Vector& u,
                 const Vector& v);

// Spectral norm of the inverse of Q_perp^H A(lambda) V_perp, where Q_perp
// and V_perp are orthonormal complements of span{A'(lambda) v} and span{v}.
double kappa_vec(const MatrixFunction& A, Complex lambda, const Vector& v);

// Exact arithmetic of the bound constants for 0 < delta < 1/4.
CondReport bound_constants(Index m, double delta, double kval, double kvec);

// First-order perturbation predictions for a simple eigenpair (lambda, y)
// of B with left vector x, under the normalization y^H (y_new - y) = 0.
struct PerturbPrediction {
  double value_bound = 0.0;        // kappa_val(B, lambda) * ||DeltaB(lambda)||
  double vector_bound = 0.0;       // kappa_vec(B, lambda) * ||DeltaB(lambda)||
  Complex value_first_order{0, 0}; // -x^H DeltaB(lambda) y / (x^H B'(lambda) y)
};

PerturbPrediction perturb_predict(const MatrixFunction& B, Complex lambda,
                                  const Vector& x, const Vector& y,
                                  const Matrix& delta_b_at_lambda);

// Monte Carlo check of how sketching affects the condition numbers:
// per-trial B(.) = Omega^H A(.) W with v in range(W), compressed condition
// numbers versus the ambient ones.
struct CondExceedRow {
  double delta = 0.0;
  double p_val = 0.0;  // empirical P(kappa_val(B) > kappa_val(A)/sqrt(delta))
  double p_vec = 0.0;  // empirical P(kappa_vec(B) > sqrt(m-1) kappa_vec(A)/sqrt(delta))
  double stderr_val = 0.0;
  double stderr_vec = 0.0;
  Index trials = 0;
};

struct CondStudy {
  std::vector<CondExceedRow> rows;
  std::vector<double> kval_samples;  // per-trial kappa_val(B, lambda)
  std::vector<double> kvec_samples;
  double kappa_val_ambient = 0.0;
  double kappa_vec_ambient = 0.0;
};

CondStudy mc_condition_study(const MatrixFunction& A, Complex lambda,
                             const Vector& u, const Vector& v,
                             const OrthonormalBasis& W, Index trials,
                             std::uint64_t master_seed,
                             const std::vector<double>& delta_grid);

}  // namespace rrr
