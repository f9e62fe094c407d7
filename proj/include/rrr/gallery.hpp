// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "rrr/linalg.hpp"
#include "rrr/matrix_function.hpp"
#include "rrr/types.hpp"

namespace rrr {

// A trial basis together with its measured angle to a reference eigenvector.
struct GalleryBasis {
  OrthonormalBasis basis;
  double epsilon;  // recomputed canonical angle to target_vector
  Vector target_vector;
  std::optional<Complex> target_value;
};

struct ExampleProblem {
  MatrixFunction fn;
  GalleryBasis basis;
};

// diag(-1, 0, 1) with the explicit 3x2 basis whose compression couples the
// extreme eigenvectors; target eigenpair (0, e2).
ExampleProblem example_hermitian_interior(double eps);

// Non-Hermitian 3x3 upper triangular with a nearly defective compression;
// target eigenpair (0, e1).
ExampleProblem example_nonhermitian(double eps);

// 2x2 pencil whose compressed pencil vanishes with eps; the Galerkin Ritz
// value locks at 3/2. Target eigenpair (2, [1,0]).
ExampleProblem example_pencil(double eps);

enum class G21Mode { zero, gaussian };

// 2n x 2n pencil with a prescribed eigenvalue whose eigenvector track stays
// neutral (v^H A1 v = 0). Retains all construction ingredients for oracle
// checks.
struct HamiltonianInstance {
  Matrix A0;        // 2n x 2n
  Matrix A1;        // [[0, I], [I, 0]]
  Complex lambda;   // target eigenvalue, right eigenvector track(tau0)
  Matrix Q;         // 2n x 2n unitary with Q^H A1 Q = A1
  Matrix G;         // n x n track generator
  Vector v1;        // unit vector seeding the track
  double tau0 = 0.0;

  Index half_dim() const { return v1.size(); }
  // Unit track vector v(tau) = eta * Q [exp((tau - tau0) G) v1; 0].
  Vector track(double tau, double tol = 1e-13) const;
  MatrixFunction pencil_fn() const;
};

HamiltonianInstance gen_hamiltonian(Index half_n, Complex lambda,
                                    std::uint64_t seed, G21Mode mode);

// Default coefficient vector; chosen so the eigenvalues spread to |xi| ~ 2.
inline constexpr std::array<double, 5> kButterflyDefaultCoeffs = {
    1.0, 0.5, 0.25, 0.125, 0.0625};

// Quartic sum c_i xi^i A_i with A0, A2, A4 real symmetric and A1, A3 real
// skew-symmetric, built from seeded random banded matrices. Structure only;
// exact coefficient files can be imported through the manifest format.
MatrixFunction gen_butterfly_like(
    Index n, std::array<double, 5> c = kButterflyDefaultCoeffs,
    std::uint64_t seed = 7);

// A0 - xi A1 with independent complex Gaussian A0, A1.
MatrixFunction gen_random_pencil(Index n, std::uint64_t seed);

// W = [v cos(eps) + w sin(eps), W_perp] with [v, w, W_perp] orthonormal and
// w, W_perp drawn from a seeded Gaussian block. The measured angle to v is
// exactly eps. Requires dim(v) >= m + 1.
GalleryBasis make_angled_basis(const Vector& v, double eps_angle, Index m,
                               std::uint64_t seed,
                               std::optional<Complex> target_value = {});

}  // namespace rrr
