// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "rrr/errors.hpp"
#include "rrr/gallery.hpp"
#include "rrr/matrix_function.hpp"
#include "rrr/oracle.hpp"
#include "rrr/prng.hpp"

using namespace rrr;

TEST_SUITE_BEGIN("matrix_function");

namespace {

MatrixFunction analytic_exp_problem(Index n, std::uint64_t seed) {
  std::vector<MatrixFunction::Term> terms;
  terms.emplace_back(
      ScalarTerm::analytic([](Complex z) { return std::exp(z); },
                           [](Complex z) { return std::exp(z); },
                           [](Complex z) { return std::exp(z); }),
      gaussian_matrix(n, n, seed));
  terms.emplace_back(ScalarTerm::constant(Complex(2, 0)),
                     Matrix::Identity(n, n));
  return MatrixFunction(std::move(terms), Region::disc({0, 0}, 1.0));
}

}  // namespace

TEST_CASE("pencil derivative is constant") {
  const Matrix a0 = gaussian_matrix(5, 5, 1);
  const Matrix a1 = gaussian_matrix(5, 5, 2);
  const MatrixFunction fn =
      MatrixFunction::pencil(a0, a1, Region::disc({0, 0}, 2.0));
  for (const Complex xi : {Complex(0, 0), Complex(0.5, -0.3), Complex(1, 1)}) {
    CHECK((fn.eval(xi, 1) + a1).norm() <= 1e-14 * a1.norm());
    CHECK((fn.eval(xi, 2)).norm() == 0.0);
    CHECK((fn.eval(xi, 0) - (a0 - xi * a1)).norm() <= 1e-14 * (a0.norm() + a1.norm()));
  }
}

TEST_CASE("quartic derivative follows the polynomial rule") {
  const MatrixFunction fn = gen_butterfly_like(8);
  const Complex xi(0.7, 0.2);
  Matrix expect = Matrix::Zero(8, 8);
  for (const auto& [st, mat] : fn.terms()) {
    const int p = st.power();
    if (p >= 1) {
      expect += st.coeff() * static_cast<double>(p) *
                std::pow(xi, p - 1) * mat;
    }
  }
  CHECK((fn.eval(xi, 1) - expect).norm() <= 1e-13 * expect.norm());
}

TEST_CASE("analytic term passes the central-difference slope test") {
  const MatrixFunction fn = analytic_exp_problem(6, 42);
  const SlopeCheck s1 =
      fd_derivative_check(fn, Complex(0.1, -0.2), {1e-3, 1e-4, 1e-5}, 1);
  CHECK(!s1.floor_detected);
  CHECK(std::abs(s1.slope - 2.0) <= 0.2);
  // Second differences need larger steps before cancellation sets in.
  const SlopeCheck s2 =
      fd_derivative_check(fn, Complex(0.1, -0.2), {3e-2, 1e-2, 3e-3}, 2);
  CHECK(!s2.floor_detected);
  CHECK(std::abs(s2.slope - 2.0) <= 0.2);
}

TEST_CASE("eval rejects points outside the region") {
  const MatrixFunction fn = analytic_exp_problem(4, 7);
  CHECK_THROWS_AS(fn.eval(Complex(3, 3)), OutOfRegion);
  // Boundary is allowed.
  CHECK_NOTHROW(fn.eval(Complex(1, 0)));
}

TEST_CASE("apply_block matches the explicit product") {
  const MatrixFunction fn = gen_butterfly_like(10);
  const Matrix w = gaussian_matrix(10, 3, 9);
  const Complex xi(0.4, 0.1);
  for (const int order : {0, 1, 2}) {
    const Matrix direct = fn.eval(xi, order) * w;
    CHECK((fn.apply_block(xi, w, order) - direct).norm() <=
          1e-13 * (1.0 + direct.norm()));
  }
  CHECK((fn.apply_block(xi, Matrix::Zero(10, 2))).norm() == 0.0);
  CHECK((fn.apply_block(xi, Matrix::Identity(10, 10)) - fn.eval(xi)).norm() <=
        1e-13 * fn.eval(xi).norm());
}

TEST_CASE("sup-norm estimate: constants, identity scaling, refinement") {
  Matrix a0 = gaussian_matrix(6, 6, 11);
  std::vector<MatrixFunction::Term> terms;
  terms.emplace_back(ScalarTerm::constant(), a0);
  const MatrixFunction constant_fn(std::move(terms), Region::disc({0, 0}, 1.0));
  CHECK(std::abs(constant_fn.sup_norm_estimate(0, 16) - spectral_norm(a0)) <=
        1e-12 * spectral_norm(a0));

  // A(xi) = xi I on the unit disc has sup-norm exactly 1.
  std::vector<MatrixFunction::Term> t2;
  t2.emplace_back(ScalarTerm::monomial(Complex(1, 0), 1),
                  Matrix::Identity(4, 4));
  t2.emplace_back(ScalarTerm::constant(Complex(1e-9, 0)),
                  Matrix::Identity(4, 4));
  const MatrixFunction xi_fn(std::move(t2), Region::disc({0, 0}, 1.0));
  CHECK(std::abs(xi_fn.sup_norm_estimate(0, 32) - 1.0) <= 1e-6);

  // Nested sampling is monotone and a 10x refinement changes little.
  const MatrixFunction quartic = gen_butterfly_like(16, {1, 1, 1, 1, 1}, 3);
  const double coarse = quartic.sup_norm_estimate(0, 16);
  const double mid = quartic.sup_norm_estimate(0, 32);
  const double fine = quartic.sup_norm_estimate(0, 160);
  CHECK(coarse <= mid + 1e-13);
  CHECK(mid <= fine + 1e-13);
  CHECK(fine <= 1.05 * mid);
}

TEST_CASE("regularity witness") {
  const MatrixFunction id_pencil = MatrixFunction::standard(
      gaussian_matrix(5, 5, 21), Region::disc({0, 0}, 10.0));
  CHECK(id_pencil.is_regular(Complex(0, 0)));

  // The all-zero function never constructs (no regular point exists).
  std::vector<MatrixFunction::Term> terms;
  terms.emplace_back(ScalarTerm::constant(), Matrix::Zero(3, 3));
  CHECK_THROWS_AS(MatrixFunction(std::move(terms), Region::disc({0, 0}, 1.0)),
                  Error);

  const auto eg = example_pencil(1e-3);
  CHECK(eg.fn.is_regular(Complex(0, 0)));
}

TEST_CASE("linearity of eval across a term split") {
  const Matrix a = gaussian_matrix(5, 5, 31);
  const Matrix b = gaussian_matrix(5, 5, 32);
  std::vector<MatrixFunction::Term> both;
  both.emplace_back(ScalarTerm::monomial(Complex(1, 0), 2), a);
  both.emplace_back(ScalarTerm::constant(), b);
  const MatrixFunction sum(std::move(both), Region::disc({0, 0}, 2.0));
  const Complex xi(0.3, 0.8);
  const Matrix expect = std::pow(xi, 2) * a + b;
  CHECK((sum.eval(xi) - expect).norm() <= 1e-14 * expect.norm());
}

TEST_CASE("problem kind detection") {
  CHECK(MatrixFunction::standard(gaussian_matrix(4, 4, 41),
                                 Region::disc({0, 0}, 9.0))
            .kind() == ProblemKind::standard);
  CHECK(gen_random_pencil(6, 42).kind() == ProblemKind::pencil);
  CHECK(gen_butterfly_like(8).kind() == ProblemKind::polynomial);
  CHECK(analytic_exp_problem(4, 43).kind() == ProblemKind::general);
}

TEST_SUITE_END();
