// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "rrr/errors.hpp"
#include "rrr/linalg.hpp"
#include "rrr/prng.hpp"

using namespace rrr;

TEST_SUITE_BEGIN("dense");

TEST_CASE("gaussian matrix is deterministic under the seed") {
  const Matrix a = gaussian_matrix(3, 2, 12345);
  const Matrix b = gaussian_matrix(3, 2, 12345);
  CHECK((a - b).norm() == 0.0);
  const Matrix c = gaussian_matrix(3, 2, 12346);
  CHECK((a - c).norm() > 0.0);
}

TEST_CASE("gaussian entries have unit second moment") {
  Prng rng(987);
  const int n = 1000000;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += std::norm(rng.next_cnormal());
  CHECK(std::abs(acc / n - 1.0) < 0.01);
}

TEST_CASE("smallest singular value tail matches the 1/sqrt(delta) law") {
  // P(||Omega^{-1}|| >= sqrt(m/delta)) <= delta at m = 10, delta = 0.1.
  const int trials = 10000;
  const double delta = 0.1;
  const double threshold = std::sqrt(10.0 / delta);
  int exceed = 0;
  for (int t = 0; t < trials; ++t) {
    const Matrix omega = gaussian_matrix(10, 10, derive_seed(5150, t));
    Eigen::JacobiSVD<Matrix> dec(omega);
    const double smin = dec.singularValues().tail(1)(0);
    if (1.0 / smin >= threshold) ++exceed;
  }
  const double p = static_cast<double>(exceed) / trials;
  const double se = std::sqrt(delta * (1 - delta) / trials);
  CHECK(p <= delta + 3 * se);
}

TEST_CASE("orthonormalize keeps orthonormal inputs and rescales") {
  const Matrix eye = Matrix::Identity(4, 4);
  CHECK((orthonormalize(eye).matrix() - eye).norm() <= 1e-14);

  Matrix col = Matrix::Zero(3, 1);
  col(0, 0) = 2.0;
  const Matrix q = orthonormalize(col).matrix();
  CHECK(std::abs(q(0, 0) - 1.0) <= 1e-15);
}

TEST_CASE("orthonormalize of a random block preserves the range") {
  const Matrix m = gaussian_matrix(100, 5, 77);
  const OrthonormalBasis q = orthonormalize(m);
  CHECK((q.matrix().adjoint() * q.matrix() - Matrix::Identity(5, 5)).norm() <=
        1e-12);
  const Matrix res = m - q.matrix() * (q.matrix().adjoint() * m);
  CHECK(res.norm() <= 1e-12 * m.norm());
}

TEST_CASE("orthonormalize flags dependent columns; dropping is opt-in") {
  Matrix m(3, 2);
  m.col(0) = Vector::Ones(3);
  m.col(1) = 2.0 * Vector::Ones(3);
  CHECK_THROWS_AS(orthonormalize(m), RankDeficient);
  const OrthonormalBasis q = orthonormalize(m, /*drop_deficient=*/true);
  CHECK(q.cols() == 1);
}

TEST_CASE("principal angle at the extremes") {
  const OrthonormalBasis w(Matrix::Identity(4, 2));
  Vector in_range = Vector::Zero(4);
  in_range[0] = Complex(0.3, -0.4);
  CHECK(principal_angle(in_range, w) <= 1e-12);

  Vector perp = Vector::Zero(4);
  perp[3] = 1.0;
  CHECK(std::abs(principal_angle(perp, w) - M_PI / 2) <= 1e-12);

  CHECK_THROWS_AS(principal_angle(Vector::Zero(4), w), ZeroVector);
}

TEST_CASE("principal angle of e2 against the interior-example basis") {
  const double eps = 0.1;
  Matrix w(3, 2);
  const double s = std::sqrt(0.5);
  w << Complex(eps * s), Complex(s),                    //
      Complex(std::sqrt(1 - eps * eps)), Complex(0.0),  //
      Complex(eps * s), Complex(-s);
  Vector e2 = Vector::Zero(3);
  e2[1] = 1;
  CHECK(std::abs(principal_angle(e2, OrthonormalBasis(w)) - std::asin(eps)) <=
        1e-12);
}

TEST_CASE("principal angle is invariant under complex rescaling") {
  Prng rng(31);
  const Matrix block = gaussian_matrix(12, 4, 32);
  const OrthonormalBasis w = orthonormalize(block);
  for (int t = 0; t < 20; ++t) {
    const Vector v = gaussian_vector(12, derive_seed(33, t));
    const Complex alpha(rng.next_normal(), rng.next_normal());
    if (std::abs(alpha) < 1e-3) continue;
    CHECK(std::abs(principal_angle(v, w) - principal_angle(alpha * v, w)) <=
          1e-12);
  }
}

TEST_CASE("small_eig on a diagonal matrix") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 1;
  m(1, 1) = 2;
  m(2, 2) = 3;
  const EigenpairSet eig = small_eig(m);
  REQUIRE(eig.values.size() == 3);
  // Shift 0 ordering: by modulus.
  CHECK(std::abs(eig.values[0] - 1.0) <= 1e-14);
  CHECK(std::abs(eig.values[1] - 2.0) <= 1e-14);
  CHECK(std::abs(eig.values[2] - 3.0) <= 1e-14);
}

TEST_CASE("small_eig reproduces the interior-example compressed spectrum") {
  const double eps = 0.01;
  Matrix c(2, 2);
  c << Complex(0), Complex(-eps), Complex(-eps), Complex(0);
  const EigenpairSet eig = small_eig(c);
  REQUIRE(eig.values.size() == 2);
  CHECK(std::abs(std::abs(eig.values[0]) - eps) <= 1e-14);
  CHECK(std::abs(std::abs(eig.values[1]) - eps) <= 1e-14);
  CHECK(std::abs(eig.values[0] + eig.values[1]) <= 1e-14);
}

TEST_CASE("small_eig on the near-defective compressed matrix") {
  const double eps = 1e-4;
  // Exact 2x2 compression of the non-Hermitian example.
  const double r = std::sqrt((1 - eps * eps) / 2);
  Matrix c(2, 2);
  c << Complex(eps * (3 * eps + r)), Complex(r - 2 * eps),  //
      Complex(eps), Complex(0);
  const EigenpairSet eig = small_eig(c);
  REQUIRE(eig.values.size() == 2);
  const double target = std::pow(2.0, -0.25) * std::sqrt(eps);
  for (Index i = 0; i < 2; ++i) {
    const double err = std::min(std::abs(eig.values[i] - target),
                                std::abs(eig.values[i] + target));
    CHECK(err <= 10 * eps);  // +-2^(-1/4) sqrt(eps) up to O(eps)
  }
}

TEST_CASE("small_eig left vectors satisfy the adjoint residual") {
  const Matrix m = gaussian_matrix(12, 12, 55);
  const EigenpairSet eig = small_eig(m, /*want_left=*/true);
  REQUIRE(eig.left_vectors.has_value());
  for (Index i = 0; i < eig.values.size(); ++i) {
    const Vector u = eig.left_vectors->col(i);
    const double res = (u.adjoint() * m - eig.values[i] * u.adjoint()).norm();
    CHECK(res <= 1e-10 * m.norm());
    const Vector v = eig.right_vectors.col(i);
    CHECK((m * v - eig.values[i] * v).norm() <= 1e-10 * m.norm());
    CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("small_geig basics") {
  Matrix f = Matrix::Zero(2, 2), g = Matrix::Identity(2, 2);
  f(0, 0) = 1;
  f(1, 1) = 2;
  const EigenpairSet eig = small_geig(f, g);
  REQUIRE(eig.values.size() == 2);
  CHECK(std::abs(eig.values[0] - 1.0) <= 1e-13);
  CHECK(std::abs(eig.values[1] - 2.0) <= 1e-13);
}

TEST_CASE("small_geig on the vanishing scalar pencil") {
  for (const double eps : {1e-2, 1e-6, 1e-10}) {
    Matrix f(1, 1), g(1, 1);
    f(0, 0) = 3 * eps;
    g(0, 0) = 2 * eps;
    const EigenpairSet eig = small_geig(f, g);
    REQUIRE(eig.values.size() == 1);
    CHECK(std::abs(eig.values[0] - 1.5) <= 1e-12);
  }
}

TEST_CASE("small_geig residuals on a random pencil") {
  const Matrix f = gaussian_matrix(10, 10, 91);
  const Matrix g = gaussian_matrix(10, 10, 92);
  const EigenpairSet eig = small_geig(f, g);
  REQUIRE(eig.values.size() == 10);
  for (Index i = 0; i < 10; ++i) {
    const Vector y = eig.right_vectors.col(i);
    const double res = (f * y - eig.values[i] * (g * y)).norm();
    CHECK(res <= 1e-10 * (f.norm() + std::abs(eig.values[i]) * g.norm()));
  }
}

TEST_CASE("small_geig flags infinite eigenvalues instead of dropping them") {
  Matrix f = Matrix::Identity(3, 3);
  Matrix g = Matrix::Zero(3, 3);
  g(0, 0) = 1;  // two infinite eigenvalues
  const EigenpairSet eig = small_geig(f, g);
  CHECK(eig.values.size() == 1);
  CHECK(eig.num_infinite == 2);
}

TEST_CASE("small_geig detects a singular pencil") {
  // Common null space makes det(F - xi G) vanish identically.
  Matrix f = Matrix::Zero(2, 2), g = Matrix::Zero(2, 2);
  f(0, 0) = 1;
  g(0, 0) = 2;
  CHECK_THROWS_AS(small_geig(f, g), SingularPencil);
}

TEST_CASE("svd basics and reconstruction") {
  const SvdResult id = svd(Matrix::Identity(3, 3));
  CHECK((id.sigma - RealVector::Ones(3)).norm() <= 1e-14);

  const Vector a = gaussian_vector(20, 1), b = gaussian_vector(10, 2);
  const Matrix rank1 = a * b.adjoint();
  const SvdResult r1 = svd(rank1);
  int above = 0;
  for (Index i = 0; i < r1.sigma.size(); ++i) {
    if (r1.sigma[i] > 1e-12 * a.norm() * b.norm()) ++above;
  }
  CHECK(above == 1);

  const Matrix m = gaussian_matrix(20, 10, 3);
  const SvdResult d = svd(m);
  const Matrix rec = d.U * d.sigma.asDiagonal() * d.V.adjoint();
  CHECK((rec - m).norm() <= 1e-12 * m.norm());
  for (Index i = 1; i < d.sigma.size(); ++i) CHECK(d.sigma[i - 1] >= d.sigma[i]);
}

TEST_CASE("solve basics and singularity detection") {
  const Matrix b = gaussian_matrix(4, 2, 11);
  CHECK((solve(Matrix::Identity(4, 4), b) - b).norm() <= 1e-14);

  Matrix two(1, 1), four(1, 1);
  two(0, 0) = 2;
  four(0, 0) = 4;
  CHECK(std::abs(solve(two, four)(0, 0) - 2.0) <= 1e-15);

  const Matrix m = gaussian_matrix(50, 50, 12);
  const Matrix rhs = gaussian_matrix(50, 3, 13);
  const Matrix x = solve(m, rhs);
  CHECK((m * x - rhs).norm() <= 1e-10 * rhs.norm());

  Matrix sing = Matrix::Zero(2, 2);
  sing(0, 0) = 1;
  CHECK_THROWS_AS(solve(sing, Matrix::Identity(2, 2)), SingularMatrix);
}

TEST_CASE("expm_action against a step-halved recomputation") {
  const Vector v = gaussian_vector(50, 21);
  const Matrix g = gaussian_matrix(50, 50, 22);

  CHECK((expm_action(g, 0.0, v, 1e-13) - v).norm() == 0.0);

  Matrix one(1, 1);
  one(0, 0) = 1;
  Vector e1(1);
  e1[0] = 1;
  CHECK(std::abs(expm_action(one, 1.0, e1, 1e-14)[0] - std::exp(1.0)) <=
        1e-13 * std::exp(1.0));

  const double t = 1e-3;
  const Vector direct = expm_action(g, t, v, 1e-14);
  const Vector halved = expm_action(g, t / 2, expm_action(g, t / 2, v, 1e-14),
                                    1e-14);
  CHECK((direct - halved).norm() <= 1e-12 * direct.norm());
}

TEST_SUITE_END();
