// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "rrr/conditioning.hpp"
#include "rrr/errors.hpp"
#include "rrr/gallery.hpp"
#include "rrr/oracle.hpp"
#include "rrr/prng.hpp"
#include "rrr/stats.hpp"

using namespace rrr;

TEST_SUITE_BEGIN("conditioning");

TEST_CASE("kappa_val closed forms") {
  // Hermitian standard problem, u = v: |u^H (-I) v| = 1.
  Matrix h = gaussian_matrix(8, 8, 1);
  h = h + h.adjoint();
  const MatrixFunction fn =
      MatrixFunction::standard(h, Region::disc({0, 0}, h.norm() + 1));
  const EigenpairSet eig = small_eig(h);
  const Vector v = eig.right_vectors.col(0);
  CHECK(std::abs(kappa_val(fn, eig.values[0], v, v) - 1.0) <= 1e-12);
  // Rescaling either eigenvector leaves it unchanged.
  CHECK(std::abs(kappa_val(fn, eig.values[0], 2.0 * v, v) - 1.0) <= 1e-12);
  CHECK(std::abs(kappa_val(fn, eig.values[0], Complex(0, 1) * v, v) - 1.0) <=
        1e-12);

  // Vanishing pencil example at lambda = 2: u = e2, v = e1, A' = -A1.
  const auto eg = example_pencil(1e-3);
  Vector u = Vector::Zero(2), w = Vector::Zero(2);
  u[1] = 1;
  w[0] = 1;
  CHECK(std::abs(kappa_val(eg.fn, Complex(2, 0), u, w) - 1.0) <= 1e-12);
}

TEST_CASE("kappa_vec closed forms") {
  Matrix a0 = Matrix::Zero(3, 3);
  a0(1, 1) = 2;
  a0(2, 2) = 3;
  const MatrixFunction fn =
      MatrixFunction::standard(a0, Region::disc({0, 0}, 5.0));
  Vector e1 = Vector::Zero(3);
  e1[0] = 1;
  // Complement compression is diag(2, 3): norm of the inverse is 1/2.
  CHECK(std::abs(kappa_vec(fn, Complex(0, 0), e1) - 0.5) <= 1e-12);
  // Unit-modulus rescaling of v leaves it unchanged.
  CHECK(std::abs(kappa_vec(fn, Complex(0, 0), Complex(0.6, 0.8) * e1) - 0.5) <=
        1e-12);

  const auto eg = example_hermitian_interior(0.1);
  Vector e2 = Vector::Zero(3);
  e2[1] = 1;
  CHECK(std::abs(kappa_vec(eg.fn, Complex(0, 0), e2) - 1.0) <= 1e-12);
}

TEST_CASE("bound constants reproduce their formulas") {
  const CondReport r = bound_constants(10, 0.1, 1.0, 1.0);
  const double c0 =
      std::sqrt(10.0) + std::sqrt(2.0) + std::sqrt(std::log(20.0));
  CHECK(std::abs(r.C0 - c0) <= 1e-15 * c0);
  CHECK(std::abs(r.Cr_val - c0 / std::sqrt(0.1)) <= 1e-12);
  CHECK(std::abs(r.Cr_vec - (1.0 + c0 * 3.0 / std::sqrt(0.1))) <= 1e-12);

  const CondReport one = bound_constants(1, 0.2, 3.0, 7.0);
  CHECK(one.Cr_vec == 1.0);  // the sqrt(m-1) factor vanishes

  CHECK_THROWS_AS(bound_constants(10, 0.3, 1, 1), BadDelta);
  CHECK_THROWS_AS(bound_constants(10, -0.1, 1, 1), BadDelta);
}

TEST_CASE("perturbation prediction: zero perturbation and alignment") {
  const MatrixFunction p = gen_random_pencil(8, 11);
  const EigenpairSet eig =
      small_geig(p.pencil_a0(), p.pencil_a1(), /*want_left=*/true);
  const Complex lam = eig.values[0];
  const Vector y = eig.right_vectors.col(0);
  const Vector x = eig.left_vectors->col(0);

  const PerturbPrediction zero =
      perturb_predict(p, lam, x, y, Matrix::Zero(8, 8));
  CHECK(zero.value_bound == 0.0);
  CHECK(zero.vector_bound == 0.0);

  // Worst-case aligned rank-1 direction attains the value bound.
  const Matrix aligned = (x / x.norm()) * (y / y.norm()).adjoint();
  const PerturbPrediction pr =
      perturb_predict(p, lam, x, y, Matrix(1e-5 * aligned));
  CHECK(std::abs(pr.value_first_order) <= pr.value_bound * (1 + 1e-10));
  CHECK(std::abs(pr.value_first_order) >= pr.value_bound * (1 - 1e-10));
}

TEST_CASE("first-order remainder decays quadratically") {
  const MatrixFunction p = gen_random_pencil(8, 21);
  const EigenpairSet eig =
      small_geig(p.pencil_a0(), p.pencil_a1(), /*want_left=*/true);
  const Complex lam = eig.values[0];
  const Vector y = eig.right_vectors.col(0);
  const Vector x = eig.left_vectors->col(0);
  const Matrix dir = gaussian_matrix(8, 8, 22);

  std::vector<double> eps_list = {1e-3, 1e-4, 1e-5};
  std::vector<double> remainders;
  for (const double eps : eps_list) {
    const Matrix delta = eps * dir / dir.norm();
    // Constant perturbation of the A0 coefficient only.
    const MatrixFunction pert = MatrixFunction::pencil(
        Matrix(p.pencil_a0() + delta), p.pencil_a1(), p.region());
    const ReferenceEigenpair ref = dense_reference_eigen(pert, lam);
    const PerturbPrediction pr = perturb_predict(p, lam, x, y, delta);
    remainders.push_back(std::abs((ref.lambda - lam) - pr.value_first_order));
  }
  CHECK(std::abs(loglog_slope(eps_list, remainders) - 2.0) <= 0.3);
}

TEST_CASE("sketching preserves condition numbers with high probability") {
  const Matrix a0 = gaussian_matrix(40, 40, 41);
  const MatrixFunction fn =
      MatrixFunction::standard(a0, Region::disc({0, 0}, a0.norm() + 1));
  const ReferenceEigenpair ref = dense_reference_eigen(fn, Complex(0.2, 0.1));
  const GalleryBasis gb = make_angled_basis(ref.v, 0.0, 6, 42, ref.lambda);
  CHECK_THROWS_AS(
      mc_condition_study(fn, ref.lambda, *ref.u,
                         Vector(gaussian_vector(40, 43)), gb.basis, 10, 44,
                         {0.5}),
      Error);

  const CondStudy study = mc_condition_study(fn, ref.lambda, *ref.u, ref.v,
                                             gb.basis, 1500, 45, {0.5, 0.1});
  for (const auto& row : study.rows) {
    CHECK(row.p_val <= row.delta + 3 * row.stderr_val + 1e-12);
    CHECK(row.p_vec <= row.delta + 3 * row.stderr_vec + 1e-12);
  }
}

TEST_SUITE_END();
