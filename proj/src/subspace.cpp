// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include "rrr/subspace.hpp"

#include "rrr/errors.hpp"
#include "rrr/prng.hpp"
#include "rrr/rrr.hpp"

namespace rrr {

namespace {

// Incremental Gram-Schmidt with one reorthogonalization pass; stability over
// speed at these block sizes.
class IncrementalQr {
 public:
  explicit IncrementalQr(Index n) : q_(n, 0) {}

  // Returns false when the new vector is dependent up to tolerance.
  bool add(const Vector& v, double rtol) {
    Vector q = v;
    const double scale = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      if (q_.cols() > 0) q -= q_ * (q_.adjoint() * q);
    }
    if (q.norm() <= rtol * scale) return false;
    q_.conservativeResize(Eigen::NoChange, q_.cols() + 1);
    q_.col(q_.cols() - 1) = q / q.norm();
    return true;
  }

  OrthonormalBasis basis() const { return OrthonormalBasis(q_); }

 private:
  Matrix q_;
};

}  // namespace

SubspaceTrace shift_invert_block(const Matrix& A0, const Matrix& A1,
                                 Complex sigma, Index m, int steps,
                                 std::uint64_t seed, const Vector* v_ref,
                                 const Settings& cfg) {
  const Index n = A0.rows();
  const Matrix shifted = A0 - sigma * A1;
  Eigen::PartialPivLU<Matrix> lu(shifted);
  if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() <=
      cfg.rank_rtol * shifted.norm()) {
    throw SingularMatrix("shift_invert_block: A0 - sigma A1 singular");
  }

  SubspaceTrace trace;
  OrthonormalBasis w = orthonormalize(gaussian_matrix(n, m, seed), false, cfg);
  trace.bases.push_back(w);
  if (v_ref) trace.angles.push_back(principal_angle(*v_ref, w));
  for (int k = 0; k < steps; ++k) {
    w = orthonormalize(lu.solve(A1 * w.matrix()), false, cfg);
    trace.bases.push_back(w);
    if (v_ref) trace.angles.push_back(principal_angle(*v_ref, w));
  }
  return trace;
}

RiiResult residual_inverse_iteration(const MatrixFunction& A, Complex sigma,
                                     int steps, std::uint64_t seed, double tol,
                                     const Vector* v_ref, const Vector* start,
                                     const Settings& cfg) {
  const Index n = A.dim();
  const Matrix a_sigma = A.eval(sigma);
  Eigen::PartialPivLU<Matrix> lu(a_sigma);
  if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() <=
      cfg.rank_rtol * a_sigma.norm()) {
    throw SingularMatrix("residual_inverse_iteration: A(sigma) singular");
  }

  RiiResult out;
  IncrementalQr qr(n);
  Vector w = start ? *start : Vector(gaussian_vector(n, seed));
  w /= w.norm();
  out.iterates.resize(n, 0);

  for (int k = 0; k < steps; ++k) {
    const Complex rho = refine_rayleigh_functional(A, w, sigma, cfg);
    const Vector residual_vec = A.apply_anywhere(rho, w);
    out.rhos.push_back(rho);

    w -= lu.solve(residual_vec);
    w /= w.norm();
    out.iterates.conservativeResize(Eigen::NoChange, out.iterates.cols() + 1);
    out.iterates.col(out.iterates.cols() - 1) = w;
    if (!qr.add(w, cfg.rank_rtol)) {
      break;  // iterate already contained in the span
    }
    out.trace.bases.push_back(qr.basis());
    if (v_ref) {
      out.trace.angles.push_back(
          principal_angle(*v_ref, out.trace.bases.back()));
    }
    const double res_next = A.apply_anywhere(rho, w).norm();
    out.trace.residuals.push_back(res_next);
    if (res_next <= tol) break;
  }
  if (out.trace.bases.empty()) {
    throw NoConvergence("residual_inverse_iteration: no iterate accepted");
  }
  return out;
}

SubspaceTrace track_subspace(const HamiltonianInstance& H,
                             const std::vector<double>& taus,
                             const Settings& cfg) {
  if (taus.empty()) throw Error("track_subspace: empty tau list");
  const Vector v0 = H.track(H.tau0);
  SubspaceTrace trace;
  IncrementalQr qr(v0.size());
  for (const double tau : taus) {
    const Vector vt = H.track(tau);
    if (!qr.add(vt, cfg.rank_rtol)) {
      throw RankDeficient(
          "track_subspace: consecutive track vectors coincide to rounding");
    }
    trace.bases.push_back(qr.basis());
    trace.angles.push_back(principal_angle(v0, trace.bases.back()));
  }
  return trace;
}

}  // namespace rrr
