// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "rrr/errors.hpp"
#include "rrr/gallery.hpp"
#include "rrr/oracle.hpp"
#include "rrr/prng.hpp"
#include "rrr/rayleigh_ritz.hpp"
#include "rrr/subspace.hpp"

using namespace rrr;

TEST_SUITE_BEGIN("rayleigh_ritz");

TEST_CASE("interior example: values converge linearly, vectors not at all") {
  const double eps = 0.01;
  const auto eg = example_hermitian_interior(eps);
  const RitzSet rr = rayleigh_ritz_standard(eg.fn.pencil_a0(), eg.basis.basis);
  REQUIRE(rr.values.size() == 2);
  CHECK(std::abs(std::abs(rr.values[0]) - eps) <= 1e-14);
  CHECK(std::abs(std::abs(rr.values[1]) - eps) <= 1e-14);
  // Both Ritz vectors sit at arccos sqrt((1-eps^2)/2) ~ pi/4 from e2.
  const double expected = std::acos(std::sqrt((1 - eps * eps) / 2));
  for (Index i = 0; i < 2; ++i) {
    const double ang = principal_angle(
        eg.basis.target_vector, OrthonormalBasis(rr.ambient_vectors.col(i)));
    CHECK(std::abs(ang - expected) <= 1e-10);
  }
}

TEST_CASE("invariant subspace gives exact Ritz values") {
  Matrix a0 = Matrix::Zero(3, 3);
  a0(0, 0) = 1;
  a0(1, 1) = 2;
  a0(2, 2) = 3;
  Matrix w = Matrix::Zero(3, 2);
  w(0, 0) = 1;
  w(1, 1) = 1;
  const RitzSet rr = rayleigh_ritz_standard(a0, OrthonormalBasis(w));
  REQUIRE(rr.values.size() == 2);
  CHECK(std::abs(rr.values[0] - 1.0) <= 1e-14);
  CHECK(std::abs(rr.values[1] - 2.0) <= 1e-14);
}

TEST_CASE("defective example: values collapse to +-2^(-1/4) sqrt(eps)") {
  const double eps = 1e-4;
  const auto eg = example_nonhermitian(eps);
  const RitzSet rr = rayleigh_ritz_standard(eg.fn.pencil_a0(), eg.basis.basis);
  const double target = std::pow(2.0, -0.25) * std::sqrt(eps);
  REQUIRE(rr.values.size() == 2);
  for (Index i = 0; i < 2; ++i) {
    CHECK(std::min(std::abs(rr.values[i] - target),
                   std::abs(rr.values[i] + target)) <= 10 * eps);
  }
}

TEST_CASE("pencil example locks at 3/2 for every eps") {
  for (const double eps : {1e-1, 1e-3, 1e-6, 1e-8}) {
    const auto eg = example_pencil(eps);
    const RitzSet rr = rayleigh_ritz_pencil(eg.fn.pencil_a0(),
                                            eg.fn.pencil_a1(), eg.basis.basis);
    REQUIRE(rr.values.size() == 1);
    CHECK(std::abs(rr.values[0] - 1.5) <= 1e-12);
  }
}

TEST_CASE("pencil baseline is exact on an eigenvector subspace") {
  const MatrixFunction p = gen_random_pencil(12, 7);
  const EigenpairSet full = small_geig(p.pencil_a0(), p.pencil_a1());
  REQUIRE(full.values.size() >= 3);
  Matrix span(12, 2);
  span.col(0) = full.right_vectors.col(0);
  span.col(1) = full.right_vectors.col(1);
  const OrthonormalBasis w = orthonormalize(span);
  const RitzSet rr =
      rayleigh_ritz_pencil(p.pencil_a0(), p.pencil_a1(), w, full.values[0]);
  REQUIRE(rr.values.size() >= 1);
  CHECK(std::abs(rr.values[0] - full.values[0]) <=
        1e-9 * (1 + std::abs(full.values[0])));
}

TEST_CASE("neutral-mode subspace makes the Galerkin pencil unusable") {
  const HamiltonianInstance h = gen_hamiltonian(16, Complex(1, 0), 3,
                                                G21Mode::gaussian);
  const SubspaceTrace trace = track_subspace(h, {1e-3, 2e-3, 3e-3, 4e-3});
  const OrthonormalBasis& w = trace.bases.back();
  bool flagged = false;
  double val_err = 0.0;
  try {
    const RitzSet rr = rayleigh_ritz_pencil(h.A0, h.A1, w, h.lambda);
    double best = 1e300;
    for (Index i = 0; i < rr.values.size(); ++i) {
      best = std::min(best, std::abs(rr.values[i] - h.lambda));
    }
    val_err = best;
  } catch (const SingularPencil&) {
    flagged = true;
  }
  CHECK((flagged || val_err >= 1e-2));
}

TEST_CASE("nonlinear baseline recovers an eigenpair it contains") {
  const MatrixFunction fn = gen_butterfly_like(48);
  const ReferenceEigenpair ref = nep_reference(fn, Complex(0, 2), 1e-12);
  const GalleryBasis gb = make_angled_basis(ref.v, 0.0, 5, 21, ref.lambda);
  const RitzSet rr = rayleigh_ritz_nep(fn, gb.basis, Complex(0, 2));
  REQUIRE(rr.values.size() >= 1);
  CHECK(std::abs(rr.values[0] - ref.lambda) <= 1e-8);
}

TEST_CASE("Galerkin residual orthogonality") {
  const Matrix a0 = gaussian_matrix(20, 20, 5);
  const OrthonormalBasis w = orthonormalize(gaussian_matrix(20, 4, 6));
  const RitzSet rr = rayleigh_ritz_standard(a0, w);
  for (Index i = 0; i < rr.values.size(); ++i) {
    const Vector wy = rr.ambient_vectors.col(i);
    const Vector res = w.matrix().adjoint() * (a0 * wy - rr.values[i] * wy);
    CHECK(res.norm() <= 1e-12 * a0.norm());
  }
}

TEST_CASE("basis invariance under unitary recombination") {
  const Matrix a0 = gaussian_matrix(15, 15, 8);
  const OrthonormalBasis w = orthonormalize(gaussian_matrix(15, 4, 9));
  const OrthonormalBasis u = orthonormalize(gaussian_matrix(4, 4, 10));
  const OrthonormalBasis wu(w.matrix() * u.matrix());

  const RitzSet r1 = rayleigh_ritz_standard(a0, w);
  const RitzSet r2 = rayleigh_ritz_standard(a0, wu);
  REQUIRE(r1.values.size() == r2.values.size());
  for (Index i = 0; i < r1.values.size(); ++i) {
    CHECK(std::abs(r1.values[i] - r2.values[i]) <= 1e-10 * (1 + a0.norm()));
    const double ang =
        principal_angle(Vector(r1.ambient_vectors.col(i)),
                        OrthonormalBasis(r2.ambient_vectors.col(i)));
    CHECK(ang <= 1e-8);
  }
}

TEST_SUITE_END();
