// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rrr/linalg.hpp"
#include "rrr/matrix_function.hpp"
#include "rrr/settings.hpp"

namespace rrr {

// The sketched problem B(xi) = Omega^H A(xi) W, kept in split form so every
// term is an m x m matrix. The sketch seed is retained for reproducibility.
struct CompressedProblem {
  MatrixFunction fn;       // m x m terms, region inherited from A
  std::uint64_t sketch_seed = 0;
  Index m = 0;             // trial dimension
  Index ambient_dim = 0;   // n
};

// Draws Omega = gaussian_matrix(n, m, seed) and compresses every term.
// The sketch dimension equals the trial dimension; oversampling is a
// separate opt-in path (rrr_extract_oversampled).
CompressedProblem sketch(const MatrixFunction& A, const OrthonormalBasis& W,
                         std::uint64_t seed);

// All finite eigenpairs of the m x m pencil (linear problems only).
EigenpairSet solve_compressed_linear(const CompressedProblem& P,
                                     Complex shift = Complex(0, 0),
                                     const Settings& cfg = default_settings());

// Matrix polynomial eigenproblem via companion linearization of the
// coefficient-balanced polynomial; eigenvectors are read off the first
// block and ghost pairs are residual-filtered.
EigenpairSet solve_compressed_poly(const CompressedProblem& P, Complex shift,
                                   const Settings& cfg = default_settings());

// Newton-type nonlinear inverse iteration from `restarts` perturbed shifts;
// converged roots are merged by clustering and ordered by distance to the
// shift. Works for any term kinds.
EigenpairSet solve_compressed_general(const CompressedProblem& P,
                                      Complex shift, int restarts = 6,
                                      const Settings& cfg = default_settings());

// Dispatch on the term kinds of an m x m problem; shared with the Galerkin
// baseline for nonlinear problems.
EigenpairSet solve_small_nep(const MatrixFunction& B, Complex shift,
                             int restarts = 6,
                             const Settings& cfg = default_settings());

// The `count` pairs nearest the shift under |mu - shift|, ties broken by
// real then imaginary part. Deterministic.
EigenpairSet select_pairs(const EigenpairSet& pairs, Complex shift,
                          Index count);

// --------------------------------------------------------------------------
// Refinement of randomized Ritz values from a randomized Ritz vector.

// rho = w^H A0 w / w^H w (standard problems).
Complex refine_rq(const Matrix& A0, const Vector& w);

// rho = w^H A0 w / w^H A1 w. Throws DegenerateDenominator when w^H A1 w is
// negligible (neutral mode); callers fall back to refine_stationary.
Complex refine_rq_pencil(const Matrix& A0, const Matrix& A1, const Vector& w,
                         const Settings& cfg = default_settings());

// Root of w^H A(rho) w = 0 nearest the shift. Exact root selection for
// polynomial problems, damped scalar Newton otherwise.
Complex refine_rayleigh_functional(const MatrixFunction& A, const Vector& w,
                                   Complex shift,
                                   const Settings& cfg = default_settings());

// Stationary point of rho -> ||A(rho) w||^2 (Wirtinger gradient zero).
// Closed form for pencils, damped Wirtinger-Newton from rho0 otherwise;
// of several stationary points the one nearest rho0 is returned.
Complex refine_stationary(const MatrixFunction& A, const Vector& w,
                          Complex rho0,
                          const Settings& cfg = default_settings());

enum class RefineMethod {
  rayleigh_quotient,
  pencil_quotient,
  rayleigh_functional,
  stationary_point,
  none,
};

const char* to_string(RefineMethod m);

// One extraction: randomized Ritz pair, refined value, diagnostics.
struct Extraction {
  Complex mu;                  // randomized Ritz value
  Vector y;                    // coefficient vector (length m)
  Vector w;                    // ambient unit vector W y
  std::optional<Complex> rho;  // refined value; unset when refinement failed
  RefineMethod refine_method = RefineMethod::none;
  double residual = 0.0;       // ||A(mu) w||
  std::uint64_t sketch_seed = 0;
};

// Full pipeline: sketch -> solve (dispatch on term kinds) -> select the
// `count` pairs nearest the shift inside the region -> refine. The
// refinement method is auto-selected and recorded; a failed refinement
// leaves rho unset rather than copying mu. An empty result means no
// eigenvalue was found inside the region.
std::vector<Extraction> rrr_extract(const MatrixFunction& A,
                                    const OrthonormalBasis& W, Complex shift,
                                    Index count, std::uint64_t seed,
                                    const Settings& cfg = default_settings());

// Total-least-squares reduction of the rectangular pencil F - xi G with
// F, G of size (m+s) x m: the right singular subspace of [G F] belonging to
// the m smallest singular values is split into top/bottom blocks whose
// m x m pencil carries the eigenvalues. Results are residual-filtered
// against the original rectangular pencil.
EigenpairSet rect_pencil_solve(const Matrix& F, const Matrix& G,
                               Complex shift = Complex(0, 0),
                               const Settings& cfg = default_settings());

// Oversampled variant for linear pencils: Omega has m+s columns and the
// rectangular compressed pencil is solved by rect_pencil_solve. With s = 0
// this reduces to rrr_extract with the same seed.
std::vector<Extraction> rrr_extract_oversampled(
    const MatrixFunction& A, const OrthonormalBasis& W, Index s, Complex shift,
    Index count, std::uint64_t seed, const Settings& cfg = default_settings());

}  // namespace rrr
