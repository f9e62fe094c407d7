// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rrr/gallery.hpp"
#include "rrr/linalg.hpp"
#include "rrr/matrix_function.hpp"

namespace rrr {

// Per-step record of a trial-subspace construction. For accumulative
// builders (track_subspace, residual_inverse_iteration) the bases are
// nested with growing dimension; shift_invert_block iterates a fixed-size
// block instead, replacing it each step.
struct SubspaceTrace {
  std::vector<OrthonormalBasis> bases;
  std::vector<double> angles;     // to the reference vector, when given
  std::vector<double> residuals;  // builder-specific per-step residual
};

// W_{k+1} = orth((A0 - sigma A1)^{-1} A1 W_k) from a seeded Gaussian block.
// Angles are recorded against v_ref when provided.
SubspaceTrace shift_invert_block(const Matrix& A0, const Matrix& A1,
                                 Complex sigma, Index m, int steps,
                                 std::uint64_t seed,
                                 const Vector* v_ref = nullptr,
                                 const Settings& cfg = default_settings());

// w_{k+1} = eta (w_k - A(sigma)^{-1} A(rho_k) w_k) with rho_k the root of
// w_k^H A(.) w_k nearest sigma. Stops early once ||A(rho_k) w_k|| <= tol.
struct RiiResult {
  SubspaceTrace trace;        // W_k = orth([w_1 ... w_k]), accumulative
  Matrix iterates;            // columns w_1 ... w_K
  std::vector<Complex> rhos;  // per-step Rayleigh functional values
};

RiiResult residual_inverse_iteration(const MatrixFunction& A, Complex sigma,
                                     int steps, std::uint64_t seed, double tol,
                                     const Vector* v_ref = nullptr,
                                     const Vector* start = nullptr,
                                     const Settings& cfg = default_settings());

// W_k = orth(span{v(tau_1), ..., v(tau_k)}) along the instance track, with
// angles against v(tau0).
SubspaceTrace track_subspace(const HamiltonianInstance& H,
                             const std::vector<double>& taus,
                             const Settings& cfg = default_settings());

}  // namespace rrr
