// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include "rrr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rrr/errors.hpp"

extern "C" {
void zgeev_(const char* jobvl, const char* jobvr, const int* n,
            rrr::Complex* a, const int* lda, rrr::Complex* w, rrr::Complex* vl,
            const int* ldvl, rrr::Complex* vr, const int* ldvr,
            rrr::Complex* work, const int* lwork, double* rwork, int* info);

void zggev_(const char* jobvl, const char* jobvr, const int* n,
            rrr::Complex* a, const int* lda, rrr::Complex* b, const int* ldb,
            rrr::Complex* alpha, rrr::Complex* beta, rrr::Complex* vl,
            const int* ldvl, rrr::Complex* vr, const int* ldvr,
            rrr::Complex* work, const int* lwork, double* rwork, int* info);
}

namespace rrr {

namespace {

// Deterministic ordering: distance to shift, then real, then imaginary part.
std::vector<Index> shift_order(const Vector& values, Complex shift) {
  std::vector<Index> idx(static_cast<std::size_t>(values.size()));
  std::iota(idx.begin(), idx.end(), Index(0));
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) {
    const double da = std::abs(values[a] - shift);
    const double db = std::abs(values[b] - shift);
    if (da != db) return da < db;
    if (values[a].real() != values[b].real())
      return values[a].real() < values[b].real();
    return values[a].imag() < values[b].imag();
  });
  return idx;
}

Matrix unit_columns(const Matrix& V) {
  Matrix out = V;
  for (Index j = 0; j < out.cols(); ++j) {
    const double n = out.col(j).norm();
    if (n > 0) out.col(j) /= n;
  }
  return out;
}

bool pencil_singular_at_probes(const Matrix& F, const Matrix& G,
                               const Settings& cfg) {
  const Index m = F.rows();
  const double scale = std::max(F.norm(), G.norm());
  if (scale == 0.0) return true;  // the zero pencil
  // Probe det(F - xi G) at m+1 deterministic points on a circle whose radius
  // balances the two norms; a regular pencil of size m cannot vanish at all
  // of them.
  const double gn = G.norm();
  const double radius = (gn > 0) ? std::max(F.norm() / gn, 1.0) : 1.0;
  for (Index k = 0; k <= m; ++k) {
    const double theta = 2.0 * M_PI * static_cast<double>(k) /
                         static_cast<double>(m + 1) + 0.37;
    const Complex xi = radius * Complex(std::cos(theta), std::sin(theta));
    const Matrix P = F - xi * G;
    Eigen::JacobiSVD<Matrix> dec(P);
    const double smin = dec.singularValues().tail(1)(0);
    if (smin > cfg.rank_rtol * std::sqrt(static_cast<double>(m)) *
                   (F.norm() + std::abs(xi) * G.norm())) {
      return false;
    }
  }
  return true;
}

}  // namespace

OrthonormalBasis::OrthonormalBasis(Matrix W) : W_(std::move(W)) {
  if (W_.rows() < 1 || W_.cols() < 1 || W_.rows() < W_.cols()) {
    throw Error("OrthonormalBasis: need n x m with n >= m >= 1");
  }
  const Index m = W_.cols();
  const Matrix gram = W_.adjoint() * W_;
  const double dev = (gram - Matrix::Identity(m, m)).norm();
  if (!(dev <= 1e-12 * std::sqrt(static_cast<double>(m)))) {
    throw Error("OrthonormalBasis: columns not orthonormal (dev=" +
                std::to_string(dev) + ")");
  }
}

OrthonormalBasis orthonormalize(const Matrix& M, bool drop_deficient,
                                const Settings& cfg) {
  if (M.rows() < 1 || M.cols() < 1) throw Error("orthonormalize: empty input");
  const double scale = M.norm();
  if (scale == 0.0) throw RankDeficient("orthonormalize: zero matrix");
  Matrix Q(M.rows(), M.cols());
  Index r = 0;
  for (Index j = 0; j < M.cols(); ++j) {
    Vector q = M.col(j);
    // Two projection passes keep orthogonality at working precision.
    for (int pass = 0; pass < 2; ++pass) {
      if (r > 0) q -= Q.leftCols(r) * (Q.leftCols(r).adjoint() * q);
    }
    const double nrm = q.norm();
    if (nrm <= cfg.rank_rtol * scale) {
      if (drop_deficient) continue;
      throw RankDeficient("orthonormalize: column " + std::to_string(j) +
                          " dependent up to tolerance");
    }
    Q.col(r++) = q / nrm;
  }
  if (r == 0) throw RankDeficient("orthonormalize: no independent columns");
  return OrthonormalBasis(Q.leftCols(r));
}

double principal_angle(const Vector& v, const OrthonormalBasis& W) {
  const double vn = v.norm();
  if (vn == 0.0) throw ZeroVector("principal_angle: zero vector");
  const Vector u = v / vn;
  const Vector c = W.matrix().adjoint() * u;
  const Vector res = u - W.matrix() * c;
  // atan2(sin, cos) is accurate at both ends of [0, pi/2], and equals
  // asin(||res||) because the two components are complementary.
  return std::atan2(res.norm(), c.norm());
}

EigenpairSet small_eig(const Matrix& M, bool want_left, Complex shift) {
  if (M.rows() != M.cols()) throw Error("small_eig: matrix not square");
  const int n = static_cast<int>(M.rows());
  Matrix A = M;
  Vector w(n);
  Matrix vl(n, want_left ? n : 1), vr(n, n);
  const int ldvl = static_cast<int>(vl.rows());
  std::vector<double> rwork(static_cast<std::size_t>(2 * n));
  int info = 0, lwork = -1;
  Complex wk_query;
  zgeev_(want_left ? "V" : "N", "V", &n, A.data(), &n, w.data(), vl.data(),
         &ldvl, vr.data(), &n, &wk_query, &lwork, rwork.data(), &info);
  lwork = static_cast<int>(wk_query.real());
  std::vector<Complex> work(static_cast<std::size_t>(lwork));
  zgeev_(want_left ? "V" : "N", "V", &n, A.data(), &n, w.data(), vl.data(),
         &ldvl, vr.data(), &n, work.data(), &lwork, rwork.data(), &info);
  if (info != 0) {
    throw NoConvergence("small_eig: QR iteration failed, info=" +
                        std::to_string(info));
  }

  const auto order = shift_order(w, shift);
  EigenpairSet out;
  out.values.resize(n);
  out.right_vectors.resize(M.rows(), n);
  if (want_left) out.left_vectors = Matrix(M.rows(), n);
  for (Index k = 0; k < n; ++k) {
    out.values[k] = w[order[k]];
    out.right_vectors.col(k) = vr.col(order[k]);
    if (want_left) out.left_vectors->col(k) = vl.col(order[k]);
  }
  out.right_vectors = unit_columns(out.right_vectors);
  if (want_left) *out.left_vectors = unit_columns(*out.left_vectors);
  return out;
}

EigenpairSet small_geig(const Matrix& F, const Matrix& G, bool want_left,
                        Complex shift, const Settings& cfg) {
  if (F.rows() != F.cols() || G.rows() != G.cols() || F.rows() != G.rows()) {
    throw Error("small_geig: need square matrices of equal size");
  }
  const int n = static_cast<int>(F.rows());
  Matrix A = F, B = G;
  Vector alpha(n), beta(n);
  Matrix vl(n, want_left ? n : 1), vr(n, n);
  const int ldvl = static_cast<int>(vl.rows());
  std::vector<double> rwork(static_cast<std::size_t>(8 * n));
  int info = 0, lwork = -1;
  Complex wk_query;
  zggev_(want_left ? "V" : "N", "V", &n, A.data(), &n, B.data(), &n,
         alpha.data(), beta.data(), vl.data(), &ldvl, vr.data(), &n, &wk_query,
         &lwork, rwork.data(), &info);
  lwork = static_cast<int>(wk_query.real());
  std::vector<Complex> work(static_cast<std::size_t>(lwork));
  zggev_(want_left ? "V" : "N", "V", &n, A.data(), &n, B.data(), &n,
         alpha.data(), beta.data(), vl.data(), &ldvl, vr.data(), &n,
         work.data(), &lwork, rwork.data(), &info);
  if (info != 0) {
    throw NoConvergence("small_geig: QZ failed, info=" + std::to_string(info));
  }

  const double fscale = F.norm(), gscale = G.norm();
  std::vector<Index> finite;
  Index n_inf = 0, n_indet = 0;
  for (Index j = 0; j < n; ++j) {
    const bool a_small = std::abs(alpha[j]) <= 1e-14 * std::max(fscale, 1e-300);
    const bool b_small = std::abs(beta[j]) <= 1e-14 * std::max(gscale, 1e-300);
    if (a_small && b_small) {
      ++n_indet;
    } else if (b_small) {
      ++n_inf;
    } else {
      finite.push_back(j);
    }
  }
  if (n_indet > 0 || finite.empty()) {
    if (pencil_singular_at_probes(F, G, cfg)) {
      throw SingularPencil("small_geig: pencil singular at probe points");
    }
  }

  Vector vals(static_cast<Index>(finite.size()));
  for (Index k = 0; k < vals.size(); ++k) {
    vals[k] = alpha[finite[static_cast<std::size_t>(k)]] /
              beta[finite[static_cast<std::size_t>(k)]];
  }
  const auto order = shift_order(vals, shift);

  EigenpairSet out;
  out.num_infinite = n_inf;
  out.num_indeterminate = n_indet;
  out.values.resize(vals.size());
  out.right_vectors.resize(F.rows(), vals.size());
  if (want_left) out.left_vectors = Matrix(F.rows(), vals.size());
  for (Index k = 0; k < vals.size(); ++k) {
    const Index src = finite[static_cast<std::size_t>(order[k])];
    out.values[k] = vals[order[k]];
    out.right_vectors.col(k) = vr.col(src);
    if (want_left) out.left_vectors->col(k) = vl.col(src);
  }
  out.right_vectors = unit_columns(out.right_vectors);
  if (want_left) *out.left_vectors = unit_columns(*out.left_vectors);
  return out;
}

SvdResult svd(const Matrix& M) {
  Eigen::BDCSVD<Matrix> dec(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) {
    throw NoConvergence("svd: decomposition did not converge");
  }
  return SvdResult{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

double spectral_norm(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  if (std::min(M.rows(), M.cols()) <= 128) {
    Eigen::JacobiSVD<Matrix> dec(M);
    return dec.singularValues()(0);
  }
  // Power iteration on M^H M with a deterministic start.
  Vector x = Vector::Ones(M.cols());
  x[0] += Complex(0.5, 0.25);  // break symmetry against +/-1 patterns
  x /= x.norm();
  double est = 0.0;
  for (int it = 0; it < 200; ++it) {
    Vector y = M.adjoint() * (M * x);
    const double nrm = y.norm();
    if (nrm == 0.0) return 0.0;
    y /= nrm;
    const double next = std::sqrt(nrm);
    if (std::abs(next - est) <= 1e-12 * std::max(next, 1.0)) {
      return next;
    }
    est = next;
    x.swap(y);
  }
  return est;
}

Matrix solve(const Matrix& M, const Matrix& B, const Settings& cfg) {
  if (M.rows() != M.cols()) throw Error("solve: matrix not square");
  if (M.rows() != B.rows()) throw Error("solve: dimension mismatch");
  Eigen::PartialPivLU<Matrix> lu(M);
  const double pivot_min = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (pivot_min <= cfg.rank_rtol * M.norm()) {
    throw SingularMatrix("solve: pivot " + std::to_string(pivot_min) +
                         " below tolerance");
  }
  return lu.solve(B);
}

Vector expm_action(const Matrix& G, double t, const Vector& v, double tol) {
  if (G.rows() != G.cols() || G.rows() != v.size()) {
    throw Error("expm_action: dimension mismatch");
  }
  if (t == 0.0 || v.norm() == 0.0) return v;
  const double scale = std::abs(t) * G.norm();
  if (!std::isfinite(scale)) throw Error("expm_action: ||tG|| not finite");
  const int squarings =
      (scale > 0.5) ? static_cast<int>(std::ceil(std::log2(scale / 0.5))) : 0;
  const double tau = t / std::ldexp(1.0, squarings);
  const double step_tol =
      std::max(tol / std::ldexp(1.0, squarings), 1e-300);

  Vector y = v;
  for (int s = 0; s < (1 << squarings); ++s) {
    Vector term = y;
    Vector sum = y;
    for (int k = 1; k <= 64; ++k) {
      term = (tau / static_cast<double>(k)) * (G * term);
      sum += term;
      if (!std::isfinite(sum.norm())) {
        throw Error("expm_action: overflow in Taylor series");
      }
      if (term.norm() <= step_tol * sum.norm()) break;
    }
    y = sum;
  }
  return y;
}

}  // namespace rrr
