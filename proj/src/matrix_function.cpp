// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include "rrr/matrix_function.hpp"

#include <cmath>
#include <sstream>

#include "rrr/errors.hpp"
#include "rrr/linalg.hpp"

namespace rrr {

// ---------------------------------------------------------------------------
// Region

Region Region::disc(Complex center, double radius) {
  if (!(radius > 0)) throw Error("Region::disc: radius must be positive");
  Region r;
  r.disc_ = true;
  r.center_ = center;
  r.radius_ = radius;
  return r;
}

Region Region::rect(double re_lo, double re_hi, double im_lo, double im_hi) {
  if (!(re_lo < re_hi) || !(im_lo < im_hi)) {
    throw Error("Region::rect: empty rectangle");
  }
  Region r;
  r.disc_ = false;
  r.re_lo_ = re_lo;
  r.re_hi_ = re_hi;
  r.im_lo_ = im_lo;
  r.im_hi_ = im_hi;
  return r;
}

Complex Region::center() const {
  if (disc_) return center_;
  return Complex(0.5 * (re_lo_ + re_hi_), 0.5 * (im_lo_ + im_hi_));
}

double Region::scale() const {
  if (disc_) return radius_;
  return 0.5 * std::hypot(re_hi_ - re_lo_, im_hi_ - im_lo_);
}

bool Region::contains(Complex z, double slack_rel) const {
  const double slack = slack_rel * scale();
  if (disc_) return std::abs(z - center_) <= radius_ + slack;
  return z.real() >= re_lo_ - slack && z.real() <= re_hi_ + slack &&
         z.imag() >= im_lo_ - slack && z.imag() <= im_hi_ + slack;
}

Complex Region::boundary_point(double t) const {
  t -= std::floor(t);
  if (disc_) {
    const double theta = 2.0 * M_PI * t;
    return center_ + radius_ * Complex(std::cos(theta), std::sin(theta));
  }
  // Perimeter walk: four sides at equal parameter share so that doubling the
  // sample count keeps previous points.
  const double w = re_hi_ - re_lo_, h = im_hi_ - im_lo_;
  const double s = 4.0 * t;
  if (s < 1.0) return Complex(re_lo_ + s * w, im_lo_);
  if (s < 2.0) return Complex(re_hi_, im_lo_ + (s - 1.0) * h);
  if (s < 3.0) return Complex(re_hi_ - (s - 2.0) * w, im_hi_);
  return Complex(re_lo_, im_hi_ - (s - 3.0) * h);
}

std::string Region::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (disc_) {
    os << "disc " << center_.real() << " " << center_.imag() << " " << radius_;
  } else {
    os << "rect " << re_lo_ << " " << re_hi_ << " " << im_lo_ << " " << im_hi_;
  }
  return os.str();
}

Region Region::parse(const std::string& text) {
  std::istringstream is(text);
  std::string kind;
  is >> kind;
  if (kind == "disc") {
    double cr, ci, rad;
    if (!(is >> cr >> ci >> rad)) throw ParseError("bad disc region: " + text);
    return disc(Complex(cr, ci), rad);
  }
  if (kind == "rect") {
    double a, b, c, d;
    if (!(is >> a >> b >> c >> d)) throw ParseError("bad rect region: " + text);
    return rect(a, b, c, d);
  }
  throw ParseError("unknown region kind: " + text);
}

// ---------------------------------------------------------------------------
// ScalarTerm

ScalarTerm ScalarTerm::constant(Complex coeff) {
  ScalarTerm t;
  t.kind_ = Kind::constant;
  t.coeff_ = coeff;
  return t;
}

ScalarTerm ScalarTerm::monomial(Complex coeff, int power) {
  if (power < 0) throw Error("ScalarTerm::monomial: negative power");
  ScalarTerm t;
  t.kind_ = Kind::monomial;
  t.coeff_ = coeff;
  t.power_ = power;
  return t;
}

ScalarTerm ScalarTerm::analytic(Fn f, Fn df, Fn ddf) {
  if (!f || !df || !ddf) {
    throw Error("ScalarTerm::analytic: f, f' and f'' are all required");
  }
  ScalarTerm t;
  t.kind_ = Kind::analytic;
  t.f_ = std::move(f);
  t.df_ = std::move(df);
  t.ddf_ = std::move(ddf);
  return t;
}

Complex ScalarTerm::eval(Complex xi, int order) const {
  switch (kind_) {
    case Kind::constant:
      return order == 0 ? coeff_ : Complex(0, 0);
    case Kind::monomial: {
      int p = power_;
      Complex c = coeff_;
      for (int d = 0; d < order; ++d) {
        c *= static_cast<double>(p);
        if (p == 0) return Complex(0, 0);
        --p;
      }
      return c * std::pow(xi, p);
    }
    case Kind::analytic:
      return order == 0 ? f_(xi) : (order == 1 ? df_(xi) : ddf_(xi));
  }
  return Complex(0, 0);
}

// ---------------------------------------------------------------------------
// MatrixFunction

MatrixFunction::MatrixFunction(std::vector<Term> terms, Region region,
                               const Settings& cfg)
    : terms_(std::move(terms)),
      region_(region),
      cache_(std::make_shared<Cache>()),
      default_samples_(cfg.sup_norm_samples) {
  if (terms_.empty()) throw Error("MatrixFunction: no terms");
  slack_ = cfg.region_slack;
  dim_ = terms_.front().second.rows();
  bool any_analytic = false;
  for (const auto& [st, mat] : terms_) {
    if (mat.rows() != dim_ || mat.cols() != dim_) {
      throw Error("MatrixFunction: term dimensions disagree");
    }
    if (!mat.allFinite()) throw Error("MatrixFunction: non-finite entries");
    if (st.kind() == ScalarTerm::Kind::analytic) any_analytic = true;
    if (st.kind() == ScalarTerm::Kind::monomial)
      degree_ = std::max(degree_, st.power());
  }
  if (any_analytic) {
    kind_ = ProblemKind::general;
  } else if (degree_ <= 1) {
    kind_ = ProblemKind::pencil;
    // A pencil whose mass matrix is the identity is a standard problem.
    const Matrix c1 = poly_coefficient(1);
    if (degree_ == 1 &&
        (c1 + Matrix::Identity(dim_, dim_)).norm() <= 1e-14 * c1.norm()) {
      kind_ = ProblemKind::standard;
    }
  } else {
    kind_ = ProblemKind::polynomial;
  }

  // Regularity witness: det A(xi0) != 0 must hold somewhere in the region.
  const Settings probe_cfg = cfg;
  Complex best = region_.center();
  bool found = false;
  for (int k = -1; k < 8 && !found; ++k) {
    const Complex xi0 = (k < 0) ? region_.center()
                                : region_.boundary_point((k + 0.5) / 8.0);
    if (is_regular(xi0)) {
      best = xi0;
      found = true;
    }
  }
  (void)probe_cfg;
  if (!found) {
    throw Error("MatrixFunction: no regular point found (function singular "
                "on the probed region)");
  }
  probe_ = best;
}

MatrixFunction MatrixFunction::standard(Matrix A0, Region region) {
  const Index n = A0.rows();
  std::vector<Term> terms;
  terms.emplace_back(ScalarTerm::constant(), std::move(A0));
  terms.emplace_back(ScalarTerm::monomial(Complex(-1, 0), 1),
                     Matrix::Identity(n, n));
  return MatrixFunction(std::move(terms), region);
}

MatrixFunction MatrixFunction::pencil(Matrix A0, Matrix A1, Region region) {
  std::vector<Term> terms;
  terms.emplace_back(ScalarTerm::constant(), std::move(A0));
  terms.emplace_back(ScalarTerm::monomial(Complex(-1, 0), 1), std::move(A1));
  return MatrixFunction(std::move(terms), region);
}

MatrixFunction MatrixFunction::polynomial(const std::vector<double>& coeffs,
                                          std::vector<Matrix> mats,
                                          Region region) {
  if (coeffs.size() != mats.size() || coeffs.empty()) {
    throw Error("MatrixFunction::polynomial: coefficient/matrix mismatch");
  }
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    terms.emplace_back(
        ScalarTerm::monomial(Complex(coeffs[i], 0), static_cast<int>(i)),
        std::move(mats[i]));
  }
  return MatrixFunction(std::move(terms), region);
}

Matrix MatrixFunction::eval(Complex xi, int order) const {
  if (!region_.contains(xi, slack_)) {
    throw OutOfRegion("eval: point outside the declared region");
  }
  return eval_anywhere(xi, order);
}

Matrix MatrixFunction::apply_block(Complex xi, const Matrix& W,
                                   int order) const {
  if (!region_.contains(xi, slack_)) {
    throw OutOfRegion("apply_block: point outside the declared region");
  }
  return apply_anywhere(xi, W, order);
}

Matrix MatrixFunction::eval_anywhere(Complex xi, int order) const {
  if (order < 0 || order > 2) throw Error("eval: order must be 0, 1 or 2");
  Matrix out = Matrix::Zero(dim_, dim_);
  for (const auto& [st, mat] : terms_) {
    const Complex f = st.eval(xi, order);
    if (f != Complex(0, 0)) out += f * mat;
  }
  return out;
}

Matrix MatrixFunction::apply_anywhere(Complex xi, const Matrix& W,
                                      int order) const {
  if (order < 0 || order > 2) throw Error("apply_block: bad order");
  if (W.rows() != dim_) throw Error("apply_block: dimension mismatch");
  Matrix out = Matrix::Zero(dim_, W.cols());
  for (const auto& [st, mat] : terms_) {
    const Complex f = st.eval(xi, order);
    if (f != Complex(0, 0)) out += f * (mat * W);
  }
  return out;
}

double MatrixFunction::sup_norm_estimate(int order, int samples) const {
  if (samples < 8) throw Error("sup_norm_estimate: need at least 8 samples");
  double best = spectral_norm(eval(region_.center(), order));
  for (int k = 0; k < samples; ++k) {
    const Complex xi =
        region_.boundary_point(static_cast<double>(k) / samples);
    best = std::max(best, spectral_norm(eval(xi, order)));
  }
  return best;
}

double MatrixFunction::sup_norm(int order) const {
  if (order < 0 || order > 2) throw Error("sup_norm: bad order");
  std::call_once(cache_->flags[static_cast<std::size_t>(order)], [&] {
    cache_->norms[static_cast<std::size_t>(order)] =
        sup_norm_estimate(order, default_samples_);
  });
  return cache_->norms[static_cast<std::size_t>(order)];
}

bool MatrixFunction::is_regular(Complex xi0) const {
  // No region gate: the witness probe may sit exactly on the boundary.
  const Matrix A = eval_anywhere(xi0, 0);
  Eigen::BDCSVD<Matrix> dec(A);
  const double smax = dec.singularValues()(0);
  const double smin = dec.singularValues().tail(1)(0);
  if (smax == 0.0) return false;
  return smin > 1e-12 * smax;
}

Matrix MatrixFunction::poly_coefficient(int p) const {
  Matrix out = Matrix::Zero(dim_, dim_);
  for (const auto& [st, mat] : terms_) {
    if (st.kind() == ScalarTerm::Kind::constant && p == 0) {
      out += st.coeff() * mat;
    } else if (st.kind() == ScalarTerm::Kind::monomial && st.power() == p) {
      out += st.coeff() * mat;
    } else if (st.kind() == ScalarTerm::Kind::analytic) {
      throw Error("poly_coefficient: analytic term present");
    }
  }
  return out;
}

Matrix MatrixFunction::pencil_a0() const {
  if (kind_ != ProblemKind::standard && kind_ != ProblemKind::pencil) {
    throw Error("pencil_a0: not a linear problem");
  }
  return poly_coefficient(0);
}

Matrix MatrixFunction::pencil_a1() const {
  if (kind_ != ProblemKind::standard && kind_ != ProblemKind::pencil) {
    throw Error("pencil_a1: not a linear problem");
  }
  return -poly_coefficient(1);
}

MatrixFunction compress(const MatrixFunction& A, const Matrix& T,
                        const Matrix& W) {
  if (T.rows() != A.dim() || W.rows() != A.dim()) {
    throw Error("compress: dimension mismatch");
  }
  std::vector<MatrixFunction::Term> terms;
  terms.reserve(A.terms().size());
  for (const auto& [st, mat] : A.terms()) {
    terms.emplace_back(st, T.adjoint() * (mat * W));
  }
  return MatrixFunction(std::move(terms), A.region());
}

}  // namespace rrr
