// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include "rrr/rrr.hpp"

#include <algorithm>
#include <cmath>

#include "rrr/errors.hpp"
#include "rrr/prng.hpp"

namespace rrr {

namespace {

// Scalar samples w^H A_i w per term; reduces every scalar-function question
// about xi to O(#terms) work.
struct ScalarizedFunction {
  std::vector<ScalarTerm> sts;
  std::vector<Complex> samples;

  Complex eval(Complex xi, int order) const {
    Complex acc(0, 0);
    for (std::size_t i = 0; i < sts.size(); ++i) {
      acc += sts[i].eval(xi, order) * samples[i];
    }
    return acc;
  }
};

ScalarizedFunction scalarize(const MatrixFunction& A, const Vector& w) {
  ScalarizedFunction out;
  out.sts.reserve(A.terms().size());
  out.samples.reserve(A.terms().size());
  for (const auto& [st, mat] : A.terms()) {
    out.sts.push_back(st);
    out.samples.push_back(w.dot(mat * w));  // Eigen dot conjugates the lhs
  }
  return out;
}

// Roots of sum_i a_i x^i via the companion matrix of the monic polynomial.
std::vector<Complex> poly_roots(std::vector<Complex> a) {
  while (a.size() > 1 && std::abs(a.back()) <= 1e-300) a.pop_back();
  const int d = static_cast<int>(a.size()) - 1;
  if (d < 1) return {};
  // Scale so the leading coefficient does not swamp the rest.
  double amax = 0;
  for (const auto& c : a) amax = std::max(amax, std::abs(c));
  if (amax == 0) return {};
  const double lead = std::abs(a.back());
  std::vector<Complex> roots;
  if (lead < 1e-14 * amax) {
    // Effectively lower degree; drop the leading term.
    a.pop_back();
    return poly_roots(std::move(a));
  }
  Matrix comp = Matrix::Zero(d, d);
  for (int i = 0; i < d - 1; ++i) comp(i + 1, i) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -a[i] / a[d];
  const EigenpairSet eig = small_eig(comp);
  roots.reserve(static_cast<std::size_t>(eig.values.size()));
  for (Index i = 0; i < eig.values.size(); ++i) roots.push_back(eig.values[i]);
  return roots;
}

double region_filter_slack() { return 1e-6; }

EigenpairSet filter_to_region(const EigenpairSet& pairs, const Region& region) {
  std::vector<Index> keep;
  for (Index i = 0; i < pairs.values.size(); ++i) {
    if (region.contains(pairs.values[i], region_filter_slack())) {
      keep.push_back(i);
    }
  }
  EigenpairSet out;
  out.num_infinite = pairs.num_infinite;
  out.num_indeterminate = pairs.num_indeterminate;
  out.values.resize(static_cast<Index>(keep.size()));
  out.right_vectors.resize(pairs.right_vectors.rows(),
                           static_cast<Index>(keep.size()));
  if (pairs.left_vectors) {
    out.left_vectors = Matrix(pairs.left_vectors->rows(),
                              static_cast<Index>(keep.size()));
  }
  for (std::size_t k = 0; k < keep.size(); ++k) {
    out.values[static_cast<Index>(k)] = pairs.values[keep[k]];
    out.right_vectors.col(static_cast<Index>(k)) =
        pairs.right_vectors.col(keep[k]);
    if (pairs.left_vectors) {
      out.left_vectors->col(static_cast<Index>(k)) =
          pairs.left_vectors->col(keep[k]);
    }
  }
  return out;
}

}  // namespace

const char* to_string(RefineMethod m) {
  switch (m) {
    case RefineMethod::rayleigh_quotient:
      return "rayleigh_quotient";
    case RefineMethod::pencil_quotient:
      return "pencil_quotient";
    case RefineMethod::rayleigh_functional:
      return "rayleigh_functional";
    case RefineMethod::stationary_point:
      return "stationary_point";
    case RefineMethod::none:
      return "none";
  }
  return "none";
}

CompressedProblem sketch(const MatrixFunction& A, const OrthonormalBasis& W,
                         std::uint64_t seed) {
  const Matrix omega = gaussian_matrix(A.dim(), W.cols(), seed);
  return CompressedProblem{compress(A, omega, W.matrix()), seed, W.cols(),
                           A.dim()};
}

EigenpairSet solve_compressed_linear(const CompressedProblem& P, Complex shift,
                                     const Settings& cfg) {
  const auto kind = P.fn.kind();
  if (kind != ProblemKind::pencil && kind != ProblemKind::standard) {
    throw Error("solve_compressed_linear: problem is not a pencil");
  }
  return small_geig(P.fn.pencil_a0(), P.fn.pencil_a1(), /*want_left=*/false,
                    shift, cfg);
}

EigenpairSet solve_compressed_poly(const CompressedProblem& P, Complex shift,
                                   const Settings& cfg) {
  const MatrixFunction& B = P.fn;
  if (B.kind() == ProblemKind::general) {
    throw Error("solve_compressed_poly: analytic terms present");
  }
  const int d = B.degree();
  if (d < 1) throw Error("solve_compressed_poly: degree must be >= 1");
  const Index m = B.dim();
  if (d == 1) return solve_compressed_linear(P, shift, cfg);

  std::vector<Matrix> c(static_cast<std::size_t>(d) + 1);
  std::vector<double> cn(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) {
    c[static_cast<std::size_t>(i)] = B.poly_coefficient(i);
    cn[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)].norm();
  }

  // Balance xi = s * zeta so the extreme coefficients have comparable size.
  double s = 1.0;
  if (cn.front() > 0 && cn.back() > 0) {
    s = std::pow(cn.front() / cn.back(), 1.0 / d);
    s = std::clamp(s, 1e-6, 1e6);
  }
  double gmax = 0.0;
  std::vector<Matrix> cs(c.size());
  for (int i = 0; i <= d; ++i) {
    cs[static_cast<std::size_t>(i)] =
        c[static_cast<std::size_t>(i)] * std::pow(s, i);
    gmax = std::max(gmax, cs[static_cast<std::size_t>(i)].norm());
  }
  if (gmax == 0) throw Error("solve_compressed_poly: zero polynomial");
  for (auto& mat : cs) mat /= gmax;

  // First companion form of the balanced polynomial.
  const Index dm = d * m;
  Matrix F = Matrix::Zero(dm, dm), G = Matrix::Zero(dm, dm);
  for (int i = 0; i < d - 1; ++i) {
    F.block(i * m, (i + 1) * m, m, m) = Matrix::Identity(m, m);
    G.block(i * m, i * m, m, m) = Matrix::Identity(m, m);
  }
  for (int j = 0; j < d; ++j) {
    F.block((d - 1) * m, j * m, m, m) = -cs[static_cast<std::size_t>(j)];
  }
  G.block((d - 1) * m, (d - 1) * m, m, m) = cs[static_cast<std::size_t>(d)];

  const EigenpairSet lin = small_geig(F, G, /*want_left=*/false, shift / s,
                                      cfg);

  // Read eigenvectors off the first block and drop linearization ghosts.
  std::vector<Complex> vals;
  std::vector<Vector> vecs;
  const double sup = B.sup_norm(0);
  for (Index i = 0; i < lin.values.size(); ++i) {
    const Complex mu = s * lin.values[i];
    Vector y = lin.right_vectors.col(i).head(m);
    const double yn = y.norm();
    if (yn <= 1e-8) continue;  // eigenvector lives in the higher blocks
    y /= yn;
    double local = 0.0;
    for (int k = 0; k <= d; ++k) {
      local += cn[static_cast<std::size_t>(k)] * std::pow(std::abs(mu), k);
    }
    const double resid = (B.eval_anywhere(mu) * y).norm();
    if (resid <= cfg.ghost_filter * (sup + local)) {
      vals.push_back(mu);
      vecs.push_back(y);
    }
  }

  EigenpairSet out;
  out.num_infinite = lin.num_infinite;
  out.num_indeterminate = lin.num_indeterminate;
  out.values.resize(static_cast<Index>(vals.size()));
  out.right_vectors.resize(m, static_cast<Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) {
    out.values[static_cast<Index>(i)] = vals[i];
    out.right_vectors.col(static_cast<Index>(i)) = vecs[i];
  }
  return out;
}

EigenpairSet solve_compressed_general(const CompressedProblem& P,
                                      Complex shift, int restarts,
                                      const Settings& cfg) {
  const MatrixFunction& B = P.fn;
  const Index m = B.dim();
  const double scale = B.region().scale();
  const double sup = B.sup_norm(0);
  if (sup == 0) throw Error("solve_compressed_general: zero function");

  std::vector<Complex> vals;
  std::vector<Vector> vecs;
  constexpr double kGolden = 0.6180339887498949;

  for (int r = 0; r < std::max(restarts, 1); ++r) {
    Complex rho = shift;
    if (r > 0) {
      const double ang = 2.0 * M_PI * kGolden * r;
      rho += 0.05 * scale * (static_cast<double>(r) / restarts) *
             Complex(std::cos(ang), std::sin(ang));
    }
    // Start from the best null-vector estimate at the starting point.
    Vector x;
    {
      const SvdResult dec = svd(B.eval_anywhere(rho));
      x = dec.V.col(m - 1);
    }
    bool converged = false;
    for (int it = 0; it < cfg.newton_max_iter; ++it) {
      const Matrix Bx = B.eval_anywhere(rho);
      const double resid = (Bx * x).norm();
      if (resid <= cfg.residual_rtol * sup) {
        converged = true;
        break;
      }
      Vector z;
      try {
        z = solve(Bx, Vector(B.eval_anywhere(rho, 1) * x), cfg);
      } catch (const SingularMatrix&) {
        // rho already sits on an eigenvalue; grab the null vector.
        const SvdResult dec = svd(Bx);
        x = dec.V.col(m - 1);
        converged = (Bx * x).norm() <= cfg.residual_rtol * sup;
        break;
      }
      const Complex denom = x.dot(z);
      if (std::abs(denom) <= 1e-300) break;
      rho -= x.dot(x) / denom;
      x = z / z.norm();
      if (std::abs(rho - B.region().center()) > 4.0 * scale) break;
    }
    if (converged) {
      bool duplicate = false;
      for (const auto& v : vals) {
        if (std::abs(v - rho) <= cfg.cluster_tol * std::max(scale, 1.0)) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) {
        vals.push_back(rho);
        vecs.push_back(x);
      }
    }
  }
  if (vals.empty()) {
    throw NoConvergence(
        "solve_compressed_general: no restart converged; increase restarts");
  }

  // Deterministic ordering by distance to the shift.
  std::vector<std::size_t> idx(vals.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double da = std::abs(vals[a] - shift), db = std::abs(vals[b] - shift);
    if (da != db) return da < db;
    if (vals[a].real() != vals[b].real())
      return vals[a].real() < vals[b].real();
    return vals[a].imag() < vals[b].imag();
  });

  EigenpairSet out;
  out.values.resize(static_cast<Index>(vals.size()));
  out.right_vectors.resize(m, static_cast<Index>(vals.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out.values[static_cast<Index>(k)] = vals[idx[k]];
    out.right_vectors.col(static_cast<Index>(k)) = vecs[idx[k]];
  }
  return out;
}

EigenpairSet solve_small_nep(const MatrixFunction& B, Complex shift,
                             int restarts, const Settings& cfg) {
  CompressedProblem wrapped{B, 0, B.dim(), B.dim()};
  switch (B.kind()) {
    case ProblemKind::standard:
    case ProblemKind::pencil:
      return solve_compressed_linear(wrapped, shift, cfg);
    case ProblemKind::polynomial:
      return solve_compressed_poly(wrapped, shift, cfg);
    case ProblemKind::general:
      return solve_compressed_general(wrapped, shift, restarts, cfg);
  }
  throw Error("solve_small_nep: unknown kind");
}

EigenpairSet select_pairs(const EigenpairSet& pairs, Complex shift,
                          Index count) {
  if (pairs.values.size() == 0) throw Error("select_pairs: empty input");
  std::vector<Index> idx(static_cast<std::size_t>(pairs.values.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<Index>(i);
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) {
    const double da = std::abs(pairs.values[a] - shift);
    const double db = std::abs(pairs.values[b] - shift);
    if (da != db) return da < db;
    if (pairs.values[a].real() != pairs.values[b].real())
      return pairs.values[a].real() < pairs.values[b].real();
    return pairs.values[a].imag() < pairs.values[b].imag();
  });
  const Index k = std::min<Index>(count, pairs.values.size());
  EigenpairSet out;
  out.num_infinite = pairs.num_infinite;
  out.num_indeterminate = pairs.num_indeterminate;
  out.values.resize(k);
  out.right_vectors.resize(pairs.right_vectors.rows(), k);
  if (pairs.left_vectors) out.left_vectors = Matrix(pairs.left_vectors->rows(), k);
  for (Index i = 0; i < k; ++i) {
    out.values[i] = pairs.values[idx[static_cast<std::size_t>(i)]];
    out.right_vectors.col(i) =
        pairs.right_vectors.col(idx[static_cast<std::size_t>(i)]);
    if (pairs.left_vectors) {
      out.left_vectors->col(i) =
          pairs.left_vectors->col(idx[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

Complex refine_rq(const Matrix& A0, const Vector& w) {
  const double n2 = w.squaredNorm();
  if (n2 == 0.0) throw ZeroVector("refine_rq: zero vector");
  return w.dot(A0 * w) / n2;
}

Complex refine_rq_pencil(const Matrix& A0, const Matrix& A1, const Vector& w,
                         const Settings& cfg) {
  const double n2 = w.squaredNorm();
  if (n2 == 0.0) throw ZeroVector("refine_rq_pencil: zero vector");
  const Complex denom = w.dot(A1 * w);
  if (std::abs(denom) < cfg.rank_rtol * spectral_norm(A1) * n2) {
    throw DegenerateDenominator(
        "refine_rq_pencil: w^H A1 w vanishes (neutral mode)");
  }
  return w.dot(A0 * w) / denom;
}

Complex refine_rayleigh_functional(const MatrixFunction& A, const Vector& w,
                                   Complex shift, const Settings& cfg) {
  if (w.norm() == 0.0) throw ZeroVector("refine_rayleigh_functional");
  const ScalarizedFunction g = scalarize(A, w);
  const double w2 = w.squaredNorm();
  const double tol_val = cfg.residual_rtol * A.sup_norm(0) * w2;
  const double tol_der = cfg.rank_rtol * A.sup_norm(1) * w2;

  Complex rho = shift;
  if (A.kind() == ProblemKind::standard || A.kind() == ProblemKind::pencil ||
      A.kind() == ProblemKind::polynomial) {
    // w^H A(.) w is a scalar polynomial: enumerate its roots exactly and
    // take the one nearest the shift.
    std::vector<Complex> coeffs(static_cast<std::size_t>(A.degree()) + 1,
                                Complex(0, 0));
    for (std::size_t i = 0; i < g.sts.size(); ++i) {
      const auto& st = g.sts[i];
      const int p = (st.kind() == ScalarTerm::Kind::monomial) ? st.power() : 0;
      coeffs[static_cast<std::size_t>(p)] += st.coeff() * g.samples[i];
    }
    const auto roots = poly_roots(coeffs);
    if (roots.empty()) {
      throw NoConvergence("refine_rayleigh_functional: no scalar roots");
    }
    rho = *std::min_element(roots.begin(), roots.end(),
                            [&](Complex a, Complex b) {
                              return std::abs(a - shift) < std::abs(b - shift);
                            });
  }

  // Damped Newton polish (and the whole solve for analytic terms).
  for (int it = 0; it < cfg.newton_max_iter; ++it) {
    const Complex val = g.eval(rho, 0);
    if (std::abs(val) <= tol_val) {
      const Complex der = g.eval(rho, 1);
      if (std::abs(der) <= tol_der) {
        throw DerivativeVanishes(
            "refine_rayleigh_functional: w^H A'(rho) w below tolerance");
      }
      return rho;
    }
    const Complex der = g.eval(rho, 1);
    if (std::abs(der) <= tol_der) {
      throw DerivativeVanishes(
          "refine_rayleigh_functional: w^H A'(rho) w below tolerance");
    }
    Complex step = -val / der;
    int halvings = 0;
    while (halvings < 40 && std::abs(g.eval(rho + step, 0)) > std::abs(val)) {
      step *= 0.5;
      ++halvings;
    }
    rho += step;
    if (halvings >= 40) break;
  }
  if (std::abs(g.eval(rho, 0)) <= tol_val) return rho;
  throw NoConvergence("refine_rayleigh_functional: Newton stalled");
}

Complex refine_stationary(const MatrixFunction& A, const Vector& w,
                          Complex rho0, const Settings& cfg) {
  if (w.norm() == 0.0) throw ZeroVector("refine_stationary");
  const double w2 = w.squaredNorm();

  if (A.kind() == ProblemKind::standard || A.kind() == ProblemKind::pencil) {
    // Pencil closed form: rho = (A1 w)^H (A0 w) / ||A1 w||^2.
    const Matrix a1 = A.pencil_a1();
    const Vector a1w = a1 * w;
    const double d = a1w.squaredNorm();
    if (d <= 1e-300 || d <= cfg.rank_rtol * cfg.rank_rtol *
                                spectral_norm(a1) * spectral_norm(a1) * w2) {
      throw NoConvergence("refine_stationary: A1 w vanishes");
    }
    return a1w.dot(A.pencil_a0() * w) / d;
  }

  // General case: Wirtinger-Newton on h(rho) = (A'(rho)w)^H (A(rho)w).
  // Gram matrix of the per-term vectors A_i w makes each evaluation O(t^2).
  const std::size_t t = A.terms().size();
  std::vector<ScalarTerm> sts;
  sts.reserve(t);
  Matrix gram(static_cast<Index>(t), static_cast<Index>(t));
  {
    std::vector<Vector> aw(t);
    for (std::size_t i = 0; i < t; ++i) {
      sts.push_back(A.terms()[i].first);
      aw[i] = A.terms()[i].second * w;
    }
    for (std::size_t i = 0; i < t; ++i) {
      for (std::size_t j = 0; j < t; ++j) {
        gram(static_cast<Index>(i), static_cast<Index>(j)) =
            aw[i].dot(aw[j]);
      }
    }
  }
  // q(o1, o2) = (A^(o1) w)^H (A^(o2) w) at rho.
  const auto q = [&](Complex rho, int o1, int o2) {
    Complex acc(0, 0);
    for (std::size_t i = 0; i < t; ++i) {
      const Complex fi = std::conj(sts[i].eval(rho, o1));
      if (fi == Complex(0, 0)) continue;
      for (std::size_t j = 0; j < t; ++j) {
        acc += fi * sts[j].eval(rho, o2) *
               gram(static_cast<Index>(i), static_cast<Index>(j));
      }
    }
    return acc;
  };

  const double tol = cfg.residual_rtol * A.sup_norm(0) * A.sup_norm(1) * w2;
  Complex rho = rho0;
  for (int it = 0; it < cfg.newton_max_iter; ++it) {
    const Complex h = q(rho, 1, 0);
    if (std::abs(h) <= tol) return rho;
    const Complex alpha = q(rho, 1, 1);  // d h / d rho (real, >= 0)
    const Complex beta = q(rho, 2, 0);   // d h / d conj(rho)
    const double det = std::norm(alpha) - std::norm(beta);
    Complex step;
    if (std::abs(det) > 1e-300) {
      step = (-h * std::conj(alpha) + std::conj(h) * beta) / det;
    } else if (std::abs(alpha) > 1e-300) {
      step = -h / alpha;
    } else {
      break;
    }
    int halvings = 0;
    while (halvings < 40 && std::abs(q(rho + step, 1, 0)) > std::abs(h)) {
      step *= 0.5;
      ++halvings;
    }
    rho += step;
    if (halvings >= 40) break;
  }
  if (std::abs(q(rho, 1, 0)) <= tol) return rho;
  throw NoConvergence("refine_stationary: Newton stalled");
}

namespace {

std::vector<Extraction> refine_and_pack(const MatrixFunction& A,
                                        const OrthonormalBasis& W,
                                        const EigenpairSet& selected,
                                        Complex shift, std::uint64_t seed,
                                        const Settings& cfg) {
  std::vector<Extraction> out;
  for (Index i = 0; i < selected.values.size(); ++i) {
    Extraction ex;
    ex.mu = selected.values[i];
    ex.y = selected.right_vectors.col(i);
    Vector w = W.matrix() * ex.y;
    w /= w.norm();
    ex.w = w;
    ex.sketch_seed = seed;
    ex.residual = A.apply_anywhere(ex.mu, w).norm();

    try {
      switch (A.kind()) {
        case ProblemKind::standard:
          ex.refine_method = RefineMethod::rayleigh_quotient;
          ex.rho = refine_rq(A.pencil_a0(), w);
          break;
        case ProblemKind::pencil:
          try {
            ex.refine_method = RefineMethod::pencil_quotient;
            ex.rho = refine_rq_pencil(A.pencil_a0(), A.pencil_a1(), w, cfg);
          } catch (const DegenerateDenominator&) {
            ex.refine_method = RefineMethod::stationary_point;
            ex.rho = refine_stationary(A, w, ex.mu, cfg);
          }
          break;
        case ProblemKind::polynomial:
        case ProblemKind::general: {
          // The Rayleigh functional needs w^H A'(.) w bounded away from 0.
          const Complex der_proxy = w.dot(Vector(A.apply_anywhere(ex.mu, w, 1)));
          const bool proxy_safe =
              std::abs(der_proxy) > 1e-8 * A.sup_norm(1) * w.squaredNorm();
          if (proxy_safe) {
            try {
              ex.refine_method = RefineMethod::rayleigh_functional;
              ex.rho = refine_rayleigh_functional(A, w, shift, cfg);
              break;
            } catch (const Error&) {
              // fall through to the stationary-point refinement
            }
          }
          ex.refine_method = RefineMethod::stationary_point;
          ex.rho = refine_stationary(A, w, ex.mu, cfg);
          break;
        }
      }
    } catch (const Error&) {
      ex.rho.reset();
      ex.refine_method = RefineMethod::none;
    }
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace

std::vector<Extraction> rrr_extract(const MatrixFunction& A,
                                    const OrthonormalBasis& W, Complex shift,
                                    Index count, std::uint64_t seed,
                                    const Settings& cfg) {
  const CompressedProblem P = sketch(A, W, seed);
  EigenpairSet pairs;
  switch (P.fn.kind()) {
    case ProblemKind::standard:
    case ProblemKind::pencil:
      pairs = solve_compressed_linear(P, shift, cfg);
      break;
    case ProblemKind::polynomial:
      pairs = solve_compressed_poly(P, shift, cfg);
      break;
    case ProblemKind::general:
      pairs = solve_compressed_general(P, shift, 6, cfg);
      break;
  }
  const EigenpairSet in_region = filter_to_region(pairs, A.region());
  if (in_region.values.size() == 0) return {};
  const EigenpairSet selected = select_pairs(in_region, shift, count);
  return refine_and_pack(A, W, selected, shift, seed, cfg);
}

EigenpairSet rect_pencil_solve(const Matrix& F, const Matrix& G, Complex shift,
                               const Settings& cfg) {
  if (F.rows() != G.rows() || F.cols() != G.cols()) {
    throw Error("rect_pencil_solve: dimension mismatch");
  }
  const Index m = F.cols();
  if (F.rows() < m) throw Error("rect_pencil_solve: need at least m rows");

  Matrix stacked(F.rows(), 2 * m);
  stacked.leftCols(m) = G;
  stacked.rightCols(m) = F;
  Eigen::BDCSVD<Matrix> dec(stacked, Eigen::ComputeThinU | Eigen::ComputeFullV);
  if (dec.info() != Eigen::Success) {
    throw NoConvergence("rect_pencil_solve: SVD failed");
  }
  const Matrix V = dec.matrixV();
  const Index L = std::min<Index>(F.rows(), 2 * m);
  // Largest singular value that the minimal perturbation removes.
  const double sigma_tls =
      (L > m) ? dec.singularValues()(m) : 0.0;

  const Matrix vsmall = V.rightCols(m);
  const Matrix v_top = vsmall.topRows(m);     // multiplies -xi (G side)
  const Matrix v_bot = vsmall.bottomRows(m);  // recovers the eigenvector
  {
    Eigen::JacobiSVD<Matrix> top(v_top);
    if (top.singularValues().tail(1)(0) <= 1e-12) {
      throw SingularReduction("rect_pencil_solve: top block rank-deficient");
    }
  }

  // v_top c = -xi v_bot c carries the eigenvalues of the perturbed pencil.
  const EigenpairSet inner =
      small_geig(v_top, Matrix(-v_bot), /*want_left=*/false, shift, cfg);

  std::vector<Complex> vals;
  std::vector<Vector> vecs;
  const double fn = F.norm(), gn = G.norm();
  for (Index i = 0; i < inner.values.size(); ++i) {
    const Complex mu = inner.values[i];
    Vector x = v_bot * inner.right_vectors.col(i);
    const double xn = x.norm();
    if (xn <= 1e-12) continue;
    x /= xn;
    const double resid = (F * x - mu * (G * x)).norm();
    const double thresh =
        std::max(cfg.ghost_filter * (fn + std::abs(mu) * gn),
                 4.0 * sigma_tls * std::sqrt((1.0 + std::norm(mu)) *
                                             static_cast<double>(m)));
    if (resid <= thresh) {
      vals.push_back(mu);
      vecs.push_back(x);
    }
  }

  EigenpairSet out;
  out.num_infinite = inner.num_infinite;
  out.num_indeterminate = inner.num_indeterminate;
  out.values.resize(static_cast<Index>(vals.size()));
  out.right_vectors.resize(m, static_cast<Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) {
    out.values[static_cast<Index>(i)] = vals[i];
    out.right_vectors.col(static_cast<Index>(i)) = vecs[i];
  }
  return out;
}

std::vector<Extraction> rrr_extract_oversampled(const MatrixFunction& A,
                                                const OrthonormalBasis& W,
                                                Index s, Complex shift,
                                                Index count,
                                                std::uint64_t seed,
                                                const Settings& cfg) {
  if (A.kind() != ProblemKind::standard && A.kind() != ProblemKind::pencil) {
    throw Error("rrr_extract_oversampled: pencil terms only");
  }
  if (s < 0) throw Error("rrr_extract_oversampled: s must be >= 0");
  const Index m = W.cols();
  const Matrix omega = gaussian_matrix(A.dim(), m + s, seed);
  const Matrix F = omega.adjoint() * (A.pencil_a0() * W.matrix());
  const Matrix G = omega.adjoint() * (A.pencil_a1() * W.matrix());
  const EigenpairSet pairs = rect_pencil_solve(F, G, shift, cfg);
  const EigenpairSet in_region = filter_to_region(pairs, A.region());
  if (in_region.values.size() == 0) return {};
  const EigenpairSet selected = select_pairs(in_region, shift, count);
  return refine_and_pack(A, W, selected, shift, seed, cfg);
}

}  // namespace rrr
