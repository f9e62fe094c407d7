// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include "rrr/rayleigh_ritz.hpp"

#include <limits>

#include "rrr/errors.hpp"
#include "rrr/rrr.hpp"

namespace rrr {

namespace {

double basis_condition(const Matrix& Y) {
  if (Y.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> dec(Y);
  const double smin = dec.singularValues().tail(1)(0);
  const double smax = dec.singularValues()(0);
  return (smin > 0) ? smax / smin : std::numeric_limits<double>::infinity();
}

RitzSet lift(const MatrixFunction& A, const OrthonormalBasis& W,
             const EigenpairSet& pairs) {
  RitzSet out;
  const Index k = pairs.values.size();
  out.values = pairs.values;
  out.coefficient_vectors = pairs.right_vectors;
  out.ambient_vectors.resize(W.rows(), k);
  out.residuals.resize(k);
  for (Index i = 0; i < k; ++i) {
    Vector w = W.matrix() * pairs.right_vectors.col(i);
    w /= w.norm();
    out.ambient_vectors.col(i) = w;
    // Ritz values may land far outside the declared region; the residual is
    // still well defined there.
    out.residuals[i] = A.apply_anywhere(out.values[i], w).norm();
  }
  out.eigenvector_condition = basis_condition(pairs.right_vectors);
  return out;
}

}  // namespace

RitzSet rayleigh_ritz_standard(const Matrix& A0, const OrthonormalBasis& W,
                               Complex shift) {
  const Matrix compressed = W.matrix().adjoint() * (A0 * W.matrix());
  const EigenpairSet pairs = small_eig(compressed, /*want_left=*/false, shift);
  const double radius = A0.norm() + std::abs(shift) + 1.0;
  const MatrixFunction fn =
      MatrixFunction::standard(A0, Region::disc({0, 0}, radius));
  return lift(fn, W, pairs);
}

RitzSet rayleigh_ritz_pencil(const Matrix& A0, const Matrix& A1,
                             const OrthonormalBasis& W, Complex shift,
                             const Settings& cfg) {
  const Matrix f = W.matrix().adjoint() * (A0 * W.matrix());
  const Matrix g = W.matrix().adjoint() * (A1 * W.matrix());
  if (g.norm() <= cfg.mass_floor * A1.norm()) {
    throw SingularPencil(
        "rayleigh_ritz_pencil: compressed mass matrix vanished "
        "(neutral-mode subspace)");
  }
  const EigenpairSet pairs = small_geig(f, g, /*want_left=*/false, shift, cfg);
  const double radius =
      (A0.norm() + std::abs(shift) + 1.0) * std::max(1.0, A1.norm());
  const MatrixFunction fn =
      MatrixFunction::pencil(A0, A1, Region::disc({0, 0}, radius));
  return lift(fn, W, pairs);
}

RitzSet rayleigh_ritz_nep(const MatrixFunction& A, const OrthonormalBasis& W,
                          Complex shift, const Settings& cfg) {
  const MatrixFunction compressed = compress(A, W.matrix(), W.matrix());
  const EigenpairSet pairs = solve_small_nep(compressed, shift, 6, cfg);
  return lift(A, W, pairs);
}

}  // namespace rrr
