// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include "rrr/gallery.hpp"

#include <cmath>

#include "rrr/errors.hpp"
#include "rrr/prng.hpp"

namespace rrr {

namespace {

GalleryBasis finish_basis(Matrix W, Vector target, std::optional<Complex> val) {
  OrthonormalBasis basis(std::move(W));
  const double eps = principal_angle(target, basis);
  return GalleryBasis{std::move(basis), eps, std::move(target), val};
}

// Unitary factor of a seeded square complex Gaussian matrix.
Matrix gaussian_unitary(Index n, std::uint64_t seed) {
  const Matrix g = gaussian_matrix(n, n, seed);
  Eigen::HouseholderQR<Matrix> qr(g);
  return Matrix(qr.householderQ()) * Matrix::Identity(n, n);
}

// Real Gaussian matrix with |i - j| <= half_bw, as a complex matrix.
Matrix banded_real_gaussian(Index n, Index half_bw, Prng& rng) {
  Matrix b = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = std::max<Index>(0, j - half_bw);
         i <= std::min(n - 1, j + half_bw); ++i) {
      b(i, j) = Complex(rng.next_normal(), 0.0);
    }
  }
  return b;
}

}  // namespace

ExampleProblem example_hermitian_interior(double eps) {
  if (!(eps > 0 && eps < 1)) throw Error("example: need 0 < eps < 1");
  Matrix a0 = Matrix::Zero(3, 3);
  a0(0, 0) = -1;
  a0(2, 2) = 1;
  const double s = std::sqrt(0.5);
  Matrix w(3, 2);
  w << Complex(eps * s), Complex(s),                     //
      Complex(std::sqrt(1 - eps * eps)), Complex(0.0),   //
      Complex(eps * s), Complex(-s);
  Vector e2 = Vector::Zero(3);
  e2[1] = 1;
  return ExampleProblem{
      MatrixFunction::standard(std::move(a0), Region::disc({0, 0}, 2.0)),
      finish_basis(std::move(w), std::move(e2), Complex(0, 0))};
}

ExampleProblem example_nonhermitian(double eps) {
  if (!(eps > 0 && eps < 1)) throw Error("example: need 0 < eps < 1");
  Matrix a0 = Matrix::Zero(3, 3);
  a0(0, 1) = 1;
  a0(1, 1) = 1;
  a0(1, 2) = 3;
  a0(2, 2) = 2;
  const double s = std::sqrt(0.5);
  Matrix w(3, 2);
  w << Complex(std::sqrt(1 - eps * eps)), Complex(0.0),  //
      Complex(eps * s), Complex(s),                      //
      Complex(eps * s), Complex(-s);
  Vector e1 = Vector::Zero(3);
  e1[0] = 1;
  return ExampleProblem{
      MatrixFunction::standard(std::move(a0), Region::disc({0, 0}, 3.0)),
      finish_basis(std::move(w), std::move(e1), Complex(0, 0))};
}

ExampleProblem example_pencil(double eps) {
  if (!(eps >= 0 && eps < 1)) throw Error("example: need 0 <= eps < 1");
  Matrix a0(2, 2), a1(2, 2);
  a0 << Complex(0), Complex(1), Complex(2), Complex(0);
  a1 << Complex(0), Complex(1), Complex(1), Complex(0);
  Matrix w(2, 1);
  const double nrm = std::sqrt(1 + eps * eps);
  w << Complex(1 / nrm), Complex(eps / nrm);
  Vector v = Vector::Zero(2);
  v[0] = 1;
  return ExampleProblem{
      MatrixFunction::pencil(std::move(a0), std::move(a1),
                             Region::disc({0, 0}, 3.0)),
      finish_basis(std::move(w), std::move(v), Complex(2, 0))};
}

Vector HamiltonianInstance::track(double tau, double tol) const {
  const Index n = half_dim();
  Vector x = expm_action(G, tau - tau0, v1, tol);
  x /= x.norm();
  Vector full = Vector::Zero(2 * n);
  full.head(n) = x;
  return Q * full;
}

MatrixFunction HamiltonianInstance::pencil_fn() const {
  const double radius = A0.norm() + std::abs(lambda) + 1.0;
  return MatrixFunction::pencil(A0, A1, Region::disc({0, 0}, radius));
}

HamiltonianInstance gen_hamiltonian(Index half_n, Complex lambda,
                                    std::uint64_t seed, G21Mode mode) {
  if (half_n < 2) throw Error("gen_hamiltonian: need n >= 2");
  const Index n = half_n;
  const Matrix q1 = gaussian_unitary(n, derive_seed(seed, 1));
  const Matrix q2 = gaussian_unitary(n, derive_seed(seed, 2));
  Vector v1 = gaussian_vector(n, derive_seed(seed, 3));
  v1 /= v1.norm();
  const Matrix g = gaussian_matrix(n, n, derive_seed(seed, 4));
  const Matrix g11 = gaussian_matrix(n, n, derive_seed(seed, 5));
  const Matrix g22 = gaussian_matrix(n, n, derive_seed(seed, 6));
  const Matrix g21 = (mode == G21Mode::zero)
                         ? Matrix::Zero(n, n)
                         : gaussian_matrix(n, n, derive_seed(seed, 7));

  Matrix q(2 * n, 2 * n);
  q.topLeftCorner(n, n) = 0.5 * (q1 + q2);
  q.topRightCorner(n, n) = 0.5 * (q1 - q2);
  q.bottomLeftCorner(n, n) = 0.5 * (q1 - q2);
  q.bottomRightCorner(n, n) = 0.5 * (q1 + q2);

  const Matrix proj = Matrix::Identity(n, n) - v1 * v1.adjoint();
  Matrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = proj * (g11 + g11.adjoint()) * proj;
  m.topRightCorner(n, n) =
      -std::conj(lambda) * (v1 * v1.adjoint()) - proj * g21.adjoint();
  m.bottomLeftCorner(n, n) = lambda * (v1 * v1.adjoint()) + g21 * proj;
  m.bottomRightCorner(n, n) = g22 + g22.adjoint();

  HamiltonianInstance out;
  out.A0 = q * m * q.adjoint();
  out.A1 = Matrix::Zero(2 * n, 2 * n);
  out.A1.topRightCorner(n, n) = Matrix::Identity(n, n);
  out.A1.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  out.lambda = lambda;
  out.Q = q;
  out.G = g;
  out.v1 = v1;
  out.tau0 = 0.0;
  return out;
}

MatrixFunction gen_butterfly_like(Index n, std::array<double, 5> c,
                                  std::uint64_t seed) {
  if (n < 4) throw Error("gen_butterfly_like: need n >= 4");
  std::vector<Matrix> mats;
  mats.reserve(5);
  for (int i = 0; i < 5; ++i) {
    Prng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const Matrix b = banded_real_gaussian(n, 2, rng);
    if (i % 2 == 0) {
      mats.push_back(0.5 * (b + b.transpose()));  // real symmetric
    } else {
      mats.push_back(0.5 * (b - b.transpose()));  // real skew-symmetric
    }
  }
  return MatrixFunction::polynomial({c[0], c[1], c[2], c[3], c[4]},
                                    std::move(mats), Region::disc({0, 0}, 3.5));
}

MatrixFunction gen_random_pencil(Index n, std::uint64_t seed) {
  return MatrixFunction::pencil(gaussian_matrix(n, n, derive_seed(seed, 1)),
                                gaussian_matrix(n, n, derive_seed(seed, 2)),
                                Region::disc({0, 0}, 100.0));
}

GalleryBasis make_angled_basis(const Vector& v, double eps_angle, Index m,
                               std::uint64_t seed,
                               std::optional<Complex> target_value) {
  const Index n = v.size();
  if (!(eps_angle >= 0 && eps_angle < M_PI / 2)) {
    throw Error("make_angled_basis: need 0 <= eps < pi/2");
  }
  if (n < m + 1) {
    throw RankDeficient("make_angled_basis: need dim(v) >= m + 1");
  }
  const double vn = v.norm();
  if (vn == 0.0) throw ZeroVector("make_angled_basis: zero vector");
  const Vector vhat = v / vn;

  // Orthonormal block [w, W_perp] orthogonal to v.
  Matrix block = gaussian_matrix(n, m, derive_seed(seed, 1));
  block -= vhat * (vhat.adjoint() * block);
  block -= vhat * (vhat.adjoint() * block);
  const OrthonormalBasis u = orthonormalize(block);

  Matrix w(n, m);
  w.col(0) =
      vhat * std::cos(eps_angle) + u.matrix().col(0) * std::sin(eps_angle);
  if (m > 1) w.rightCols(m - 1) = u.matrix().rightCols(m - 1);
  return finish_basis(std::move(w), vhat, target_value);
}

}  // namespace rrr
