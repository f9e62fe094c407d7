// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "rrr/errors.hpp"
#include "rrr/gallery.hpp"
#include "rrr/oracle.hpp"
#include "rrr/prng.hpp"
#include "rrr/subspace.hpp"

using namespace rrr;

TEST_SUITE_BEGIN("subspace");

TEST_CASE("shift-invert contraction follows the spectral ratio") {
  // Diagonal standard problem: the angle to e1 contracts by about
  // |sigma - l1| / |sigma - l2| per step.
  const Index n = 30;
  Matrix a0 = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) a0(i, i) = 1.0 + static_cast<double>(i);
  const Matrix a1 = Matrix::Identity(n, n);
  const Complex sigma(1.05, 0);
  Vector e1 = Vector::Zero(n);
  e1[0] = 1;
  const SubspaceTrace trace = shift_invert_block(a0, a1, sigma, 4, 6, 7, &e1);
  REQUIRE(trace.angles.size() == 7);
  const double ratio = std::abs(sigma - Complex(1, 0)) /
                       std::abs(sigma - Complex(2, 0));  // ~0.0526
  for (std::size_t k = 2; k + 1 < trace.angles.size(); ++k) {
    if (trace.angles[k] < 1e-13) break;  // rounding floor
    const double observed = trace.angles[k + 1] / trace.angles[k];
    CHECK(observed <= 5 * ratio);
    CHECK(observed >= ratio / 5);
  }
  // steps = 0 leaves a random block: O(1) angle.
  const SubspaceTrace start = shift_invert_block(a0, a1, sigma, 4, 0, 7, &e1);
  CHECK(start.angles[0] > 0.1);
}

TEST_CASE("shift-invert rejects a singular shift") {
  Matrix a0 = Matrix::Identity(3, 3);
  const Matrix a1 = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(shift_invert_block(a0, a1, Complex(1, 0), 2, 1, 5),
                  SingularMatrix);
}

TEST_CASE("residual inverse iteration converges on a Hermitian problem") {
  Matrix h = gaussian_matrix(24, 24, 31);
  h = h + h.adjoint();
  const MatrixFunction fn =
      MatrixFunction::standard(h, Region::disc({0, 0}, h.norm() + 1));
  const EigenpairSet eig = small_eig(h);
  const Complex sigma = eig.values[2] + Complex(0.05, 0.0);
  const RiiResult rii = residual_inverse_iteration(fn, sigma, 40, 32, 1e-12);
  REQUIRE(!rii.trace.residuals.empty());
  CHECK(rii.trace.residuals.back() <= 1e-10 * h.norm());
  CHECK(rii.trace.residuals.back() < rii.trace.residuals.front());
}

TEST_CASE("residual inverse iteration fixes exact eigenvectors") {
  const MatrixFunction fn = gen_butterfly_like(24);
  const ReferenceEigenpair ref = nep_reference(fn, Complex(0, 2), 1e-13);
  const RiiResult rii = residual_inverse_iteration(
      fn, Complex(0, 2), 3, 0, /*tol=*/1e-12, nullptr, &ref.v);
  REQUIRE(!rii.trace.residuals.empty());
  CHECK(rii.trace.residuals.front() <= 1e-12);
  CHECK(principal_angle(ref.v, rii.trace.bases.front()) <= 1e-10);
}

TEST_CASE("track subspace: angles, nesting, permutation invariance") {
  const HamiltonianInstance h =
      gen_hamiltonian(24, Complex(1, 0), 41, G21Mode::zero);
  const std::vector<double> taus = {1e-3, 2e-3, 3e-3, 4e-3, 5e-3};
  const SubspaceTrace trace = track_subspace(h, taus);
  REQUIRE(trace.bases.size() == taus.size());

  // tau0 alone contains the target exactly.
  const SubspaceTrace at0 = track_subspace(h, {h.tau0});
  CHECK(at0.angles[0] <= 1e-12);

  // Angles are nonincreasing and the recorded values recompute.
  const Vector v0 = h.track(h.tau0);
  for (std::size_t k = 0; k < trace.bases.size(); ++k) {
    CHECK(std::abs(trace.angles[k] - principal_angle(v0, trace.bases[k])) <=
          1e-12);
    if (k > 0) CHECK(trace.angles[k] <= trace.angles[k - 1] + 1e-12);
  }

  // Nesting: each basis is contained in the next.
  for (std::size_t k = 0; k + 1 < trace.bases.size(); ++k) {
    const Matrix& small = trace.bases[k].matrix();
    for (Index j = 0; j < small.cols(); ++j) {
      CHECK(principal_angle(small.col(j), trace.bases[k + 1]) <= 1e-12);
    }
  }

  // Permuting the tau list leaves the final span unchanged.
  const SubspaceTrace perm = track_subspace(h, {4e-3, 1e-3, 5e-3, 3e-3, 2e-3});
  const Matrix& a = trace.bases.back().matrix();
  const OrthonormalBasis& b = perm.bases.back();
  for (Index j = 0; j < a.cols(); ++j) {
    CHECK(principal_angle(a.col(j), b) <= 1e-10);
  }
}

TEST_CASE("track subspace flags coincident vectors") {
  const HamiltonianInstance h =
      gen_hamiltonian(8, Complex(1, 0), 43, G21Mode::zero);
  CHECK_THROWS_AS(track_subspace(h, {1e-3, 1e-3}), RankDeficient);
}

TEST_CASE("builders are deterministic under the seed") {
  const MatrixFunction p = gen_random_pencil(20, 51);
  const SubspaceTrace t1 = shift_invert_block(
      p.pencil_a0(), p.pencil_a1(), Complex(0.01, 0), 4, 3, 52);
  const SubspaceTrace t2 = shift_invert_block(
      p.pencil_a0(), p.pencil_a1(), Complex(0.01, 0), 4, 3, 52);
  CHECK((t1.bases.back().matrix() - t2.bases.back().matrix()).norm() == 0.0);
}

TEST_SUITE_END();
