// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include "rrr/conditioning.hpp"

#include <cmath>

#include "rrr/errors.hpp"
#include "rrr/prng.hpp"
#include "rrr/rrr.hpp"

namespace rrr {

namespace {

// Orthonormal basis of the complement of span{x} via a full Householder QR.
Matrix complement_basis(const Vector& x) {
  const Index n = x.size();
  if (x.norm() == 0.0) throw ZeroVector("complement_basis: zero vector");
  const Matrix xm = x;
  Eigen::HouseholderQR<Matrix> qr(xm);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - 1);
}

}  // namespace

double kappa_val(const MatrixFunction& A, Complex lambda, const Vector& u,
                 const Vector& v) {
  const double un = u.norm(), vn = v.norm();
  if (un == 0.0 || vn == 0.0) throw ZeroVector("kappa_val: zero eigenvector");
  const Complex denom = u.dot(Vector(A.apply_anywhere(lambda, v, 1)));
  if (std::abs(denom) <= 1e-14 * un * vn * A.sup_norm(1)) {
    throw DefectiveEigenvalue("kappa_val: u^H A'(lambda) v vanishes");
  }
  return un * vn / std::abs(denom);
}

double kappa_vec(const MatrixFunction& A, Complex lambda, const Vector& v) {
  if (v.norm() == 0.0) throw ZeroVector("kappa_vec: zero eigenvector");
  const Vector av = Vector(A.apply_anywhere(lambda, v, 1));
  if (av.norm() == 0.0) {
    throw DefectiveEigenvalue("kappa_vec: A'(lambda) v vanishes");
  }
  const Matrix q_perp = complement_basis(av);
  const Matrix v_perp = complement_basis(v);
  const Matrix compressed =
      q_perp.adjoint() * A.apply_anywhere(lambda, v_perp);
  Eigen::BDCSVD<Matrix> dec(compressed);
  const double smin = dec.singularValues().tail(1)(0);
  if (smin <= 1e-14 * dec.singularValues()(0) || smin == 0.0) {
    throw SingularCompression("kappa_vec: complement compression singular");
  }
  return 1.0 / smin;
}

CondReport bound_constants(Index m, double delta, double kval, double kvec) {
  if (!(delta > 0.0 && delta < 0.25)) {
    throw BadDelta("bound_constants: need 0 < delta < 1/4");
  }
  if (m < 1) throw Error("bound_constants: need m >= 1");
  CondReport r;
  r.m = m;
  r.delta = delta;
  r.kappa_val = kval;
  r.kappa_vec = kvec;
  r.C0 = std::sqrt(static_cast<double>(m)) + std::sqrt(2.0) +
         std::sqrt(std::log(2.0 / delta));
  r.Cr_val = r.C0 / std::sqrt(delta) * kval;
  r.Cr_vec =
      1.0 + r.C0 * std::sqrt(static_cast<double>(m - 1)) / std::sqrt(delta) *
                kvec;
  return r;
}

PerturbPrediction perturb_predict(const MatrixFunction& B, Complex lambda,
                                  const Vector& x, const Vector& y,
                                  const Matrix& delta_b_at_lambda) {
  PerturbPrediction out;
  const double dnorm = spectral_norm(delta_b_at_lambda);
  out.value_bound = kappa_val(B, lambda, x, y) * dnorm;
  out.vector_bound = kappa_vec(B, lambda, y) * dnorm;
  const Complex denom = x.dot(Vector(B.apply_anywhere(lambda, y, 1)));
  out.value_first_order = -x.dot(delta_b_at_lambda * y) / denom;
  return out;
}

CondStudy mc_condition_study(const MatrixFunction& A, Complex lambda,
                             const Vector& u, const Vector& v,
                             const OrthonormalBasis& W, Index trials,
                             std::uint64_t master_seed,
                             const std::vector<double>& delta_grid) {
  if (principal_angle(v, W) > 1e-12) {
    throw Error("mc_condition_study: v must lie in range(W)");
  }
  CondStudy out;
  out.kappa_val_ambient = kappa_val(A, lambda, u, v);
  out.kappa_vec_ambient = kappa_vec(A, lambda, v);
  out.kval_samples.reserve(static_cast<std::size_t>(trials));
  out.kvec_samples.reserve(static_cast<std::size_t>(trials));

  const Index m = W.cols();
  for (Index t = 0; t < trials; ++t) {
    const std::uint64_t seed = derive_seed(master_seed, static_cast<std::uint64_t>(t));
    const CompressedProblem P = sketch(A, W, seed);
    // Locate the eigenvalue of B(.) nearest lambda with both eigenvectors.
    EigenpairSet pairs;
    if (P.fn.kind() == ProblemKind::standard ||
        P.fn.kind() == ProblemKind::pencil) {
      pairs = small_geig(P.fn.pencil_a0(), P.fn.pencil_a1(),
                         /*want_left=*/true, lambda);
    } else {
      throw Error("mc_condition_study: linear problems only");
    }
    if (pairs.values.size() == 0) continue;
    const Complex mu = pairs.values[0];
    const Vector yb = pairs.right_vectors.col(0);
    const Vector xb = pairs.left_vectors->col(0);
    out.kval_samples.push_back(kappa_val(P.fn, mu, xb, yb));
    out.kvec_samples.push_back(kappa_vec(P.fn, mu, yb));
  }

  const double n_eff = static_cast<double>(out.kval_samples.size());
  for (const double delta : delta_grid) {
    CondExceedRow row;
    row.delta = delta;
    row.trials = static_cast<Index>(out.kval_samples.size());
    const double val_bound = out.kappa_val_ambient / std::sqrt(delta);
    const double vec_bound = std::sqrt(static_cast<double>(m - 1)) *
                             out.kappa_vec_ambient / std::sqrt(delta);
    Index nv = 0, nw = 0;
    for (std::size_t i = 0; i < out.kval_samples.size(); ++i) {
      if (out.kval_samples[i] > val_bound) ++nv;
      if (out.kvec_samples[i] > vec_bound) ++nw;
    }
    row.p_val = nv / n_eff;
    row.p_vec = nw / n_eff;
    row.stderr_val = std::sqrt(std::max(row.p_val * (1 - row.p_val), 1e-12) / n_eff);
    row.stderr_vec = std::sqrt(std::max(row.p_vec * (1 - row.p_vec), 1e-12) / n_eff);
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace rrr
