// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "rrr/settings.hpp"
#include "rrr/types.hpp"

namespace rrr {

// Bounded domain on which a matrix-valued function is declared: a disc or an
// axis-aligned rectangle. Sup-norms are estimated by sampling the boundary
// (maximum principle), so the boundary parameterization is part of the API.
class Region {
 public:
  static Region disc(Complex center, double radius);
  static Region rect(double re_lo, double re_hi, double im_lo, double im_hi);

  bool is_disc() const { return disc_; }
  Complex center() const;
  // Characteristic size (radius, or half-diagonal for rectangles).
  double scale() const;
  bool contains(Complex z, double slack_rel) const;
  // Boundary point at parameter t in [0, 1); doubling the sample count
  // yields a superset of the previous sample set.
  Complex boundary_point(double t) const;

  // disc: "disc cre cim r"; rect: "rect re_lo re_hi im_lo im_hi"
  std::string describe() const;
  static Region parse(const std::string& text);

 private:
  Region() = default;
  bool disc_ = true;
  Complex center_{0, 0};
  double radius_ = 1.0;
  double re_lo_ = 0, re_hi_ = 0, im_lo_ = 0, im_hi_ = 0;
};

// One scalar factor f_i in A(xi) = sum_i f_i(xi) A_i. Analytic terms carry
// user-supplied first and second derivatives (no automatic differentiation).
class ScalarTerm {
 public:
  enum class Kind { constant, monomial, analytic };
  using Fn = std::function<Complex(Complex)>;

  static ScalarTerm constant(Complex coeff = Complex(1, 0));
  static ScalarTerm monomial(Complex coeff, int power);
  static ScalarTerm analytic(Fn f, Fn df, Fn ddf);

  Complex eval(Complex xi, int order) const;
  Kind kind() const { return kind_; }
  Complex coeff() const { return coeff_; }
  int power() const { return power_; }

 private:
  ScalarTerm() = default;
  Kind kind_ = Kind::constant;
  Complex coeff_{1, 0};
  int power_ = 0;
  Fn f_, df_, ddf_;
};

enum class ProblemKind { standard, pencil, polynomial, general };

// Holomorphic matrix-valued function in split form sum_i f_i(xi) A_i with a
// declared region and a stored regularity witness. Immutable after
// construction; evaluation is pure.
class MatrixFunction {
 public:
  using Term = std::pair<ScalarTerm, Matrix>;

  MatrixFunction(std::vector<Term> terms, Region region,
                 const Settings& cfg = default_settings());

  // A0 - xi * I
  static MatrixFunction standard(Matrix A0, Region region);
  // A0 - xi * A1
  static MatrixFunction pencil(Matrix A0, Matrix A1, Region region);
  // sum_i coeffs[i] * xi^i * mats[i]
  static MatrixFunction polynomial(const std::vector<double>& coeffs,
                                   std::vector<Matrix> mats, Region region);

  // A(xi), A'(xi) or A''(xi); order in {0, 1, 2}. Throws OutOfRegion when xi
  // lies outside the declared region beyond tolerance.
  Matrix eval(Complex xi, int order = 0) const;

  // eval(xi, order) * W without materializing the n x n matrix.
  Matrix apply_block(Complex xi, const Matrix& W, int order = 0) const;

  // Same results without the region membership check; meant for residual
  // screening of candidates that may fall outside the declared region.
  Matrix eval_anywhere(Complex xi, int order = 0) const;
  Matrix apply_anywhere(Complex xi, const Matrix& W, int order = 0) const;

  // Max spectral norm over `samples` boundary points plus the center.
  // Monotone nondecreasing for nested sample sets. Cached per order for the
  // default sample count.
  double sup_norm_estimate(int order, int samples) const;
  double sup_norm(int order = 0) const;  // cached, default sample count

  // True iff the smallest singular value of A(xi0) clears rtol * ||A(xi0)||.
  bool is_regular(Complex xi0) const;

  Index dim() const { return dim_; }
  const Region& region() const { return region_; }
  const std::vector<Term>& terms() const { return terms_; }
  ProblemKind kind() const { return kind_; }
  int degree() const { return degree_; }
  Complex probe_point() const { return probe_; }

  // Assembled coefficient of xi^p (polynomial kinds only).
  Matrix poly_coefficient(int p) const;
  // Pencil view A(xi) = A0 - xi*A1 (standard/pencil kinds only).
  Matrix pencil_a0() const;
  Matrix pencil_a1() const;

 private:
  std::vector<Term> terms_;
  Region region_;
  Index dim_ = 0;
  ProblemKind kind_ = ProblemKind::general;
  int degree_ = 0;
  Complex probe_{0, 0};
  double slack_ = 1e-9;

  struct Cache {
    std::array<std::once_flag, 3> flags;
    std::array<double, 3> norms{0, 0, 0};
  };
  std::shared_ptr<Cache> cache_;
  int default_samples_ = 64;
};

// T^H A(.) W, term by term. Shared by the randomized sketch (T random) and
// the Galerkin baseline (T = W). The result inherits A's region.
MatrixFunction compress(const MatrixFunction& A, const Matrix& T,
                        const Matrix& W);

}  // namespace rrr
