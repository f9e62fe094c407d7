// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include "rrr/oracle.hpp"

#include <cmath>
#include <limits>

#include "rrr/errors.hpp"
#include "rrr/prng.hpp"
#include "rrr/stats.hpp"

namespace rrr {

namespace {

// Scalar Newton for w^H A(rho) w = 0 from sigma. Kept local so the oracle
// path shares nothing with the extraction-side refinement code.
Complex scalar_rayleigh_root(const MatrixFunction& A, const Vector& w,
                             Complex sigma, double tol_rel) {
  std::vector<Complex> samples;
  samples.reserve(A.terms().size());
  for (const auto& [st, mat] : A.terms()) samples.push_back(w.dot(mat * w));
  const auto g = [&](Complex rho, int order) {
    Complex acc(0, 0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      acc += A.terms()[i].first.eval(rho, order) * samples[i];
    }
    return acc;
  };
  const double tol = tol_rel * A.sup_norm(0) * w.squaredNorm();
  Complex rho = sigma;
  for (int it = 0; it < 200; ++it) {
    const Complex val = g(rho, 0);
    if (std::abs(val) <= tol) return rho;
    const Complex der = g(rho, 1);
    if (std::abs(der) <= 1e-300) break;
    Complex step = -val / der;
    int halvings = 0;
    while (halvings < 40 && std::abs(g(rho + step, 0)) > std::abs(val)) {
      step *= 0.5;
      ++halvings;
    }
    rho += step;
    if (halvings >= 40) break;
  }
  if (std::abs(g(rho, 0)) <= tol) return rho;
  throw NoConvergence("scalar_rayleigh_root: Newton stalled");
}

Vector left_null_vector(const Matrix& M) {
  const SvdResult dec = svd(M);
  Vector u = dec.U.col(dec.U.cols() - 1);
  return u / u.norm();
}

}  // namespace

ReferenceEigenpair dense_reference_eigen(const MatrixFunction& A,
                                         Complex shift) {
  if (A.kind() != ProblemKind::standard && A.kind() != ProblemKind::pencil) {
    throw Error("dense_reference_eigen: linear problems only");
  }
  EigenpairSet pairs;
  if (A.kind() == ProblemKind::standard) {
    pairs = small_eig(A.pencil_a0(), /*want_left=*/true, shift);
  } else {
    pairs = small_geig(A.pencil_a0(), A.pencil_a1(), /*want_left=*/true,
                       shift);
  }
  if (pairs.values.size() == 0) {
    throw Error("dense_reference_eigen: no finite eigenvalues");
  }
  ReferenceEigenpair out;
  out.method = ReferenceEigenpair::Method::dense;
  out.lambda = pairs.values[0];
  out.v = pairs.right_vectors.col(0);
  out.u = pairs.left_vectors->col(0);
  out.residual = (A.apply_anywhere(out.lambda, out.v)).norm();
  return out;
}

ReferenceEigenpair nep_reference(const MatrixFunction& A, Complex sigma,
                                 double tol, int max_steps,
                                 std::uint64_t seed, const Vector* start) {
  const Matrix a_sigma = A.eval(sigma);
  Eigen::PartialPivLU<Matrix> lu(a_sigma);
  if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() <=
      1e-14 * a_sigma.norm()) {
    throw SingularMatrix("nep_reference: A(sigma) singular");
  }

  Vector w = start ? *start : Vector(gaussian_vector(A.dim(), seed));
  w /= w.norm();
  Complex rho = sigma;
  double best_resid = std::numeric_limits<double>::infinity();
  for (int k = 0; k < max_steps; ++k) {
    rho = scalar_rayleigh_root(A, w, sigma, 1e-14);
    const Vector r = A.apply_anywhere(rho, w);
    best_resid = r.norm();
    if (best_resid <= tol) break;
    w -= lu.solve(r);
    w /= w.norm();
  }
  if (best_resid > tol) {
    throw NoConvergence("nep_reference: residual " +
                        std::to_string(best_resid) + " above tolerance");
  }
  ReferenceEigenpair out;
  out.method = ReferenceEigenpair::Method::residual_inverse_iteration;
  out.lambda = rho;
  out.v = w;
  out.u = left_null_vector(A.eval_anywhere(rho));
  out.residual = best_resid;
  return out;
}

SlopeCheck fd_derivative_check(const MatrixFunction& A, Complex xi,
                               const std::vector<double>& h_list, int order) {
  if (order != 1 && order != 2) {
    throw Error("fd_derivative_check: order must be 1 or 2");
  }
  SlopeCheck out;
  const double scale = A.sup_norm(order);
  const double base = A.eval_anywhere(xi).norm();
  std::vector<double> hs, errs;
  for (const double h : h_list) {
    Matrix cd;
    if (order == 1) {
      cd = (A.eval_anywhere(xi + h) - A.eval_anywhere(xi - h)) / (2 * h);
    } else {
      cd = (A.eval_anywhere(xi + h) - 2 * A.eval_anywhere(xi) +
            A.eval_anywhere(xi - h)) /
           (h * h);
    }
    const double err = (cd - A.eval_anywhere(xi, order)).norm();
    out.errors.push_back(err);
    // Second differences amplify rounding by 1/h^2; points in that regime
    // would corrupt the fit.
    const double noise = (order == 2) ? 4e-15 * base / (h * h) : 0.0;
    if (h < 1e-8 || err <= 1e-12 * std::max(scale, 1.0) ||
        (order == 2 && err <= 10.0 * noise)) {
      out.floor_detected = true;
      continue;
    }
    hs.push_back(h);
    errs.push_back(err);
  }
  if (hs.size() >= 2) {
    out.slope = loglog_slope(hs, errs);
  } else {
    out.floor_detected = true;
  }
  return out;
}

TailTable mc_tail(Index rows, Index cols, Index trials,
                  const std::vector<double>& deltas,
                  std::uint64_t master_seed) {
  if (trials < 1) throw Error("mc_tail: need at least one trial");
  TailTable out;
  out.trials = trials;
  const bool square = (rows == cols);
  out.norm_samples.reserve(static_cast<std::size_t>(trials));
  if (square) out.inv_samples.reserve(static_cast<std::size_t>(trials));

  for (Index t = 0; t < trials; ++t) {
    const Matrix omega =
        gaussian_matrix(rows, cols, derive_seed(master_seed, static_cast<std::uint64_t>(t)));
    Eigen::JacobiSVD<Matrix> dec(omega);
    out.norm_samples.push_back(dec.singularValues()(0));
    if (square) {
      const double smin = dec.singularValues().tail(1)(0);
      out.inv_samples.push_back(smin > 0 ? 1.0 / smin
                                         : std::numeric_limits<double>::infinity());
    }
  }

  const double nt = static_cast<double>(trials);
  for (const double delta : deltas) {
    TailRow row;
    row.delta = delta;
    row.threshold_norm = std::sqrt(static_cast<double>(rows)) +
                         std::sqrt(static_cast<double>(cols)) +
                         std::sqrt(std::log(2.0 / delta));
    Index cnt = 0;
    for (const double s : out.norm_samples) {
      if (s >= row.threshold_norm) ++cnt;
    }
    row.p_norm = cnt / nt;
    row.stderr_norm =
        std::sqrt(std::max(row.p_norm * (1 - row.p_norm), 1e-12) / nt);
    if (square) {
      row.threshold_inv = std::sqrt(static_cast<double>(cols) / delta);
      Index ci = 0;
      for (const double s : out.inv_samples) {
        if (s >= row.threshold_inv) ++ci;
      }
      row.p_inv = ci / nt;
      row.stderr_inv =
          std::sqrt(std::max(row.p_inv * (1 - row.p_inv), 1e-12) / nt);
    }
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace rrr
