// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include "rrr/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <limits>

#include "rrr/conditioning.hpp"
#include "rrr/csv.hpp"
#include "rrr/errors.hpp"
#include "rrr/manifest.hpp"
#include "rrr/matrix_market.hpp"
#include "rrr/oracle.hpp"
#include "rrr/prng.hpp"
#include "rrr/rayleigh_ritz.hpp"
#include "rrr/rrr.hpp"
#include "rrr/stats.hpp"
#include "rrr/subspace.hpp"

namespace rrr {

namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string out_path(const ExperimentConfig& config, const std::string& name) {
  fs::create_directories(config.out_dir);
  return (fs::path(config.out_dir) / name).string();
}

Complex effective_shift(const ExperimentConfig& config, Complex fallback) {
  return config.shift_set ? config.shift : fallback;
}

// Index of the value nearest the target, deterministic tie-breaking.
Index nearest_index(const Vector& values, Complex target) {
  Index best = 0;
  for (Index i = 1; i < values.size(); ++i) {
    const double di = std::abs(values[i] - target);
    const double db = std::abs(values[best] - target);
    if (di < db) best = i;
  }
  return best;
}

struct SweepRow {
  double angle = kInf;
  double rr_vec = kInf, rr_val = kInf;
  double rrr_vec = kInf, rrr_val = kInf, rrr_reval = kInf;
};

void write_sweep_csv(const std::string& path, const ExperimentConfig& config,
                     const std::vector<SweepRow>& rows) {
  CsvWriter csv(path,
                {"k", "angle", "rr_vec_err", "rr_val_err", "rrr_vec_err",
                 "rrr_val_err", "rrr_reval_err"},
                config.deterministic);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv.field(static_cast<Index>(i + 1))
        .field(rows[i].angle)
        .field(rows[i].rr_vec)
        .field(rows[i].rr_val)
        .field(rows[i].rrr_vec)
        .field(rows[i].rrr_val)
        .field(rows[i].rrr_reval);
    csv.end_row();
  }
}

}  // namespace

std::vector<std::string> run_ham(const ExperimentConfig& config) {
  const Complex lambda = effective_shift(config, Complex(1, 0));
  const HamiltonianInstance H =
      gen_hamiltonian(config.n, lambda, derive_seed(config.seed, 1),
                      config.g21);
  const MatrixFunction pencil = H.pencil_fn();
  const Vector v_ref = H.track(H.tau0);

  std::vector<double> taus;
  for (int k = 1; k <= config.steps; ++k) taus.push_back(1e-3 * k);
  const SubspaceTrace trace = track_subspace(H, taus);

  std::vector<SweepRow> rows;
  for (std::size_t k = 0; k < trace.bases.size(); ++k) {
    SweepRow row;
    row.angle = trace.angles[k];
    const OrthonormalBasis& W = trace.bases[k];

    try {
      const RitzSet rr = rayleigh_ritz_pencil(H.A0, H.A1, W, lambda);
      if (rr.values.size() > 0) {
        const Index i = nearest_index(rr.values, lambda);
        row.rr_val = std::abs(rr.values[i] - lambda);
        row.rr_vec = principal_angle(
            v_ref, OrthonormalBasis(rr.ambient_vectors.col(i) /
                                    rr.ambient_vectors.col(i).norm()));
      }
    } catch (const Error&) {
      // Flagged singular; the row keeps inf for the baseline columns.
    }

    try {
      const auto ex = rrr_extract(pencil, W, lambda, 1,
                                  derive_seed(config.seed, 1000 + k));
      if (!ex.empty()) {
        row.rrr_val = std::abs(ex[0].mu - lambda);
        row.rrr_vec = principal_angle(v_ref, OrthonormalBasis(ex[0].w));
        if (ex[0].rho) row.rrr_reval = std::abs(*ex[0].rho - lambda);
      }
    } catch (const Error&) {
    }
    rows.push_back(row);
  }

  const std::string path = out_path(config, "ham.csv");
  write_sweep_csv(path, config, rows);
  return {path};
}

std::vector<std::string> run_butterfly(const ExperimentConfig& config) {
  const Complex sigma = effective_shift(config, Complex(0, 2));
  const MatrixFunction A =
      gen_butterfly_like(config.n, kButterflyDefaultCoeffs,
                         derive_seed(config.seed, 1));
  const std::uint64_t start_seed = derive_seed(config.seed, 2);
  const ReferenceEigenpair ref = nep_reference(A, sigma, 1e-12, 400,
                                               start_seed);

  // The trial subspace accumulates the same iteration that produced the
  // reference, restarted from the identical seed.
  const RiiResult rii = residual_inverse_iteration(
      A, sigma, config.steps, start_seed, /*tol=*/0.0, &ref.v);

  std::vector<SweepRow> rows;
  for (std::size_t k = 0; k < rii.trace.bases.size(); ++k) {
    SweepRow row;
    row.angle = rii.trace.angles[k];
    const OrthonormalBasis& W = rii.trace.bases[k];

    try {
      const RitzSet rr = rayleigh_ritz_nep(A, W, sigma);
      if (rr.values.size() > 0) {
        const Index i = nearest_index(rr.values, sigma);
        row.rr_val = std::abs(rr.values[i] - ref.lambda);
        Vector w = rr.ambient_vectors.col(i);
        row.rr_vec = principal_angle(ref.v, OrthonormalBasis(w / w.norm()));
      }
    } catch (const Error&) {
    }

    try {
      const auto ex = rrr_extract(A, W, sigma, 1,
                                  derive_seed(config.seed, 3000 + k));
      if (!ex.empty()) {
        row.rrr_val = std::abs(ex[0].mu - ref.lambda);
        row.rrr_vec = principal_angle(ref.v, OrthonormalBasis(ex[0].w));
        if (ex[0].rho) row.rrr_reval = std::abs(*ex[0].rho - ref.lambda);
      }
    } catch (const Error&) {
    }
    rows.push_back(row);
  }

  const std::string path = out_path(config, "butterfly.csv");
  write_sweep_csv(path, config, rows);
  return {path};
}

std::vector<std::string> run_fp(const ExperimentConfig& config) {
  const Complex sigma = effective_shift(config, Complex(0.01, 0));
  const MatrixFunction pencil =
      gen_random_pencil(config.n, derive_seed(config.seed, 1));
  const ReferenceEigenpair ref = dense_reference_eigen(pencil, sigma);

  const SubspaceTrace trace = shift_invert_block(
      pencil.pencil_a0(), pencil.pencil_a1(), sigma, config.m, config.steps,
      derive_seed(config.seed, 2), &ref.v);
  const OrthonormalBasis& W = trace.bases.back();
  const double eps = trace.angles.back();

  const std::string trials_path = out_path(config, "fp_trials.csv");
  std::vector<double> mu_err[2], vec_ang[2], rho_err[2];
  {
    CsvWriter csv(trials_path,
                  {"trial", "mu_err", "vec_angle", "rho_err", "seed",
                   "oversampled"},
                  config.deterministic);
    csv.comment("subspace angle eps = " + format_double(eps));
    for (Index t = 0; t < config.trials; ++t) {
      for (int os = 0; os < 2; ++os) {
        const std::uint64_t seed_t =
            derive_seed(config.seed, 10000 + 2 * static_cast<std::uint64_t>(t) +
                                          static_cast<std::uint64_t>(os));
        double me = kInf, va = kInf, re = kInf;
        try {
          const auto ex =
              (os == 0)
                  ? rrr_extract(pencil, W, sigma, 1, seed_t)
                  : rrr_extract_oversampled(pencil, W, config.s, sigma, 1,
                                            seed_t);
          if (!ex.empty()) {
            me = std::abs(ex[0].mu - ref.lambda);
            va = principal_angle(ref.v, OrthonormalBasis(ex[0].w));
            if (ex[0].rho) re = std::abs(*ex[0].rho - ref.lambda);
          }
        } catch (const Error&) {
        }
        mu_err[os].push_back(me);
        vec_ang[os].push_back(va);
        rho_err[os].push_back(re);
        csv.field(t).field(me).field(va).field(re).field(seed_t).field(
            std::string(os ? "true" : "false"));
        csv.end_row();
      }
    }
  }

  const std::string quant_path = out_path(config, "fp_quantiles.csv");
  {
    CsvWriter csv(quant_path,
                  {"oversampled", "delta", "q_mu_err", "q_vec_angle",
                   "q_rho_err"},
                  config.deterministic);
    for (int os = 0; os < 2; ++os) {
      for (const double delta : {0.25, 0.1, 0.01}) {
        csv.field(std::string(os ? "true" : "false"))
            .field(delta)
            .field(quantile(mu_err[os], 1 - delta))
            .field(quantile(vec_ang[os], 1 - delta))
            .field(quantile(rho_err[os], 1 - delta));
        csv.end_row();
      }
    }
  }
  return {trials_path, quant_path};
}

std::vector<std::string> run_mc_cond(const ExperimentConfig& config) {
  const Complex shift = effective_shift(config, Complex(0.2, 0.1));
  const Matrix a0 = gaussian_matrix(config.n, config.n,
                                    derive_seed(config.seed, 1));
  const MatrixFunction A = MatrixFunction::standard(
      a0, Region::disc({0, 0}, a0.norm() + 1.0));
  const ReferenceEigenpair ref = dense_reference_eigen(A, shift);
  const GalleryBasis gb =
      make_angled_basis(ref.v, 0.0, config.m, derive_seed(config.seed, 2),
                        ref.lambda);

  const std::vector<double> deltas = {0.5, 0.1};
  const CondStudy study =
      mc_condition_study(A, ref.lambda, *ref.u, ref.v, gb.basis,
                         config.trials, derive_seed(config.seed, 3), deltas);

  const std::string path = out_path(config, "mc_cond.csv");
  CsvWriter csv(path,
                {"delta", "bound", "empirical_probability", "trials",
                 "stderr"},
                config.deterministic);
  csv.comment("ambient kappa_val = " + format_double(study.kappa_val_ambient) +
              ", kappa_vec = " + format_double(study.kappa_vec_ambient));
  for (const auto& row : study.rows) {
    csv.field(row.delta)
        .field(std::string("kappa_val"))
        .field(row.p_val)
        .field(row.trials)
        .field(row.stderr_val);
    csv.end_row();
    csv.field(row.delta)
        .field(std::string("kappa_vec"))
        .field(row.p_vec)
        .field(row.trials)
        .field(row.stderr_vec);
    csv.end_row();
  }
  return {path};
}

// ---------------------------------------------------------------------------
// verify

namespace {

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

void check(std::vector<VerifyCheck>& out, const std::string& name,
           bool pass, const std::string& detail) {
  out.push_back({name, pass, detail});
}

}  // namespace

int run_verify(const ExperimentConfig& config,
               std::vector<std::string>* files) {
  std::vector<VerifyCheck> checks;
  const std::uint64_t seed = config.seed;

  // Sampling moments of the complex normal distribution.
  {
    Prng rng(derive_seed(seed, 1));
    double acc = 0;
    const int nsamp = 100000;
    for (int i = 0; i < nsamp; ++i) acc += std::norm(rng.next_cnormal());
    const double mean = acc / nsamp;
    check(checks, "gaussian_second_moment", std::abs(mean - 1.0) < 0.02,
          "mean |z|^2 = " + format_double(mean));
  }
  {
    const Matrix a = gaussian_matrix(3, 2, 123), b = gaussian_matrix(3, 2, 123);
    check(checks, "gaussian_determinism", (a - b).norm() == 0.0, "");
  }
  {
    const Matrix g = gaussian_matrix(100, 5, derive_seed(seed, 2));
    const OrthonormalBasis q = orthonormalize(g);
    const double dev =
        (q.matrix().adjoint() * q.matrix() - Matrix::Identity(5, 5)).norm();
    const double range_dev =
        (g - q.matrix() * (q.matrix().adjoint() * g)).norm() / g.norm();
    check(checks, "orthonormalize_random", dev <= 1e-12 && range_dev <= 1e-12,
          "orth dev " + format_double(dev));
  }
  {
    const TailTable tails =
        mc_tail(10, 10, 2000, {0.1}, derive_seed(seed, 3));
    const auto& row = tails.rows[0];
    const bool ok = row.p_norm <= row.delta + 3 * row.stderr_norm + 1e-12 &&
                    row.p_inv <= row.delta + 3 * row.stderr_inv + 1e-12;
    check(checks, "gaussian_tail_bounds", ok,
          "p_norm " + format_double(row.p_norm) + ", p_inv " +
              format_double(row.p_inv));
  }
  {
    const auto eg = example_hermitian_interior(0.01);
    const RitzSet rr = rayleigh_ritz_standard(eg.fn.pencil_a0(), eg.basis.basis);
    bool ok = rr.values.size() == 2;
    if (ok) {
      const double a = std::abs(rr.values[0] + 0.01);
      const double b = std::abs(rr.values[1] - 0.01);
      const double a2 = std::abs(rr.values[0] - 0.01);
      const double b2 = std::abs(rr.values[1] + 0.01);
      ok = std::min(a + b, a2 + b2) <= 2e-12;
    }
    check(checks, "example_interior_ritz_values", ok, "");
  }
  {
    const double eps = 1e-4;
    const auto eg = example_nonhermitian(eps);
    const RitzSet rr = rayleigh_ritz_standard(eg.fn.pencil_a0(), eg.basis.basis);
    const double target = std::pow(2.0, -0.25) * std::sqrt(eps);
    bool ok = rr.values.size() == 2;
    if (ok) {
      double e = 0;
      for (Index i = 0; i < 2; ++i) {
        e = std::max(e, std::min(std::abs(rr.values[i] - target),
                                 std::abs(rr.values[i] + target)));
      }
      ok = e <= 10 * eps;
    }
    check(checks, "example_defective_ritz_values", ok, "");
  }
  {
    const auto eg = example_pencil(1e-6);
    const RitzSet rr = rayleigh_ritz_pencil(eg.fn.pencil_a0(),
                                            eg.fn.pencil_a1(), eg.basis.basis);
    const bool ok = rr.values.size() == 1 &&
                    std::abs(rr.values[0] - 1.5) <= 1e-12;
    check(checks, "example_pencil_ritz_value", ok, "");
  }
  {
    // Central differences agree with the declared derivatives.
    const Matrix mat = gaussian_matrix(6, 6, derive_seed(seed, 4));
    std::vector<MatrixFunction::Term> terms;
    terms.emplace_back(
        ScalarTerm::analytic([](Complex z) { return std::exp(z); },
                             [](Complex z) { return std::exp(z); },
                             [](Complex z) { return std::exp(z); }),
        mat);
    terms.emplace_back(ScalarTerm::constant(Complex(0.5, 0)),
                       Matrix::Identity(6, 6));
    const MatrixFunction fn(std::move(terms), Region::disc({0, 0}, 1.0));
    const SlopeCheck sc =
        fd_derivative_check(fn, Complex(0.1, 0.05), {1e-3, 1e-4, 1e-5}, 1);
    check(checks, "fd_derivative_slope",
          !sc.floor_detected && std::abs(sc.slope - 2.0) < 0.2,
          "slope " + format_double(sc.slope));
  }
  {
    // Dense and iterative oracles agree on a linear problem.
    const Matrix a0 = gaussian_matrix(30, 30, derive_seed(seed, 5));
    const MatrixFunction A = MatrixFunction::standard(
        a0, Region::disc({0, 0}, a0.norm() + 1.0));
    const Complex sh(0.3, 0.2);
    const ReferenceEigenpair d = dense_reference_eigen(A, sh);
    const ReferenceEigenpair it = nep_reference(A, sh, 1e-12, 400,
                                                derive_seed(seed, 6));
    check(checks, "cross_oracle_agreement",
          std::abs(d.lambda - it.lambda) <= 1e-9 * (1 + std::abs(d.lambda)),
          "gap " + format_double(std::abs(d.lambda - it.lambda)));
  }
  {
    // Exact recovery on a random pencil with v in range(W).
    const MatrixFunction P = gen_random_pencil(40, derive_seed(seed, 7));
    const ReferenceEigenpair ref = dense_reference_eigen(P, Complex(0.01, 0));
    bool ok = true;
    for (int t = 0; t < 10 && ok; ++t) {
      const GalleryBasis gb = make_angled_basis(
          ref.v, 0.0, 6, derive_seed(seed, 100 + static_cast<std::uint64_t>(t)),
          ref.lambda);
      const auto ex = rrr_extract(P, gb.basis, ref.lambda, 1,
                                  derive_seed(seed, 200 + static_cast<std::uint64_t>(t)));
      ok = !ex.empty() &&
           std::abs(ex[0].mu - ref.lambda) <= 1e-8 * P.sup_norm(0) &&
           principal_angle(ref.v, OrthonormalBasis(ex[0].w)) <= 1e-6;
    }
    check(checks, "exact_recovery", ok, "");
  }
  {
    // Rectangular reduction agrees with the square solver at s = 0.
    const Matrix f = gaussian_matrix(8, 8, derive_seed(seed, 8));
    const Matrix g = gaussian_matrix(8, 8, derive_seed(seed, 9));
    const EigenpairSet sq = small_geig(f, g);
    const EigenpairSet rp = rect_pencil_solve(f, g);
    bool ok = sq.values.size() == rp.values.size();
    if (ok) {
      for (Index i = 0; i < sq.values.size(); ++i) {
        double best = kInf;
        for (Index j = 0; j < rp.values.size(); ++j) {
          best = std::min(best, std::abs(sq.values[i] - rp.values[j]));
        }
        ok = ok && best <= 1e-10 * (1 + std::abs(sq.values[i]));
      }
    }
    check(checks, "rect_pencil_s0_consistency", ok, "");
  }

  const std::string path = out_path(config, "verify.csv");
  CsvWriter csv(path, {"check", "pass", "detail"}, config.deterministic);
  int failures = 0;
  for (const auto& c : checks) {
    csv.field(c.name)
        .field(std::string(c.pass ? "true" : "false"))
        .field(c.detail);
    csv.end_row();
    if (!c.pass) ++failures;
  }
  if (files) files->push_back(path);
  return failures;
}

// ---------------------------------------------------------------------------
// gen / extract

std::vector<std::string> run_gen(const ExperimentConfig& config,
                                 const std::string& problem) {
  fs::create_directories(config.out_dir);
  const fs::path dir(config.out_dir);
  std::vector<std::string> written;

  const auto emit = [&](const MatrixFunction& fn, const GalleryBasis* basis) {
    const std::string manifest = (dir / "problem.manifest").string();
    save_problem(manifest, fn);
    written.push_back(manifest);
    for (std::size_t i = 0; i < fn.terms().size(); ++i) {
      written.push_back((dir / ("A" + std::to_string(i) + ".mtx")).string());
    }
    if (basis) {
      const std::string bpath = (dir / "basis.mtx").string();
      write_matrix_market(bpath, basis->basis.matrix());
      written.push_back(bpath);
      const std::string tpath = (dir / "target.mtx").string();
      write_matrix_market(tpath, basis->target_vector);
      written.push_back(tpath);
      std::ofstream meta(dir / "meta.txt");
      meta.precision(17);
      meta << "epsilon = " << basis->epsilon << "\n";
      if (basis->target_value) {
        meta << "target = " << basis->target_value->real() << " "
             << basis->target_value->imag() << "\n";
      }
      written.push_back((dir / "meta.txt").string());
    }
  };

  if (problem == "eg21") {
    const auto eg = example_hermitian_interior(config.eps);
    emit(eg.fn, &eg.basis);
  } else if (problem == "eg22") {
    const auto eg = example_nonhermitian(config.eps);
    emit(eg.fn, &eg.basis);
  } else if (problem == "eg23") {
    const auto eg = example_pencil(config.eps);
    emit(eg.fn, &eg.basis);
  } else if (problem == "ham") {
    const Complex lambda = effective_shift(config, Complex(1, 0));
    const HamiltonianInstance H = gen_hamiltonian(
        config.n, lambda, derive_seed(config.seed, 1), config.g21);
    std::vector<double> taus;
    for (int k = 1; k <= config.steps; ++k) taus.push_back(1e-3 * k);
    const SubspaceTrace trace = track_subspace(H, taus);
    const GalleryBasis gb{trace.bases.back(), trace.angles.back(),
                          H.track(H.tau0), lambda};
    emit(H.pencil_fn(), &gb);
  } else if (problem == "butterfly") {
    emit(gen_butterfly_like(config.n, kButterflyDefaultCoeffs,
                            derive_seed(config.seed, 1)),
         nullptr);
  } else if (problem == "fp") {
    emit(gen_random_pencil(config.n, derive_seed(config.seed, 1)), nullptr);
  } else {
    throw Error("run_gen: unknown problem '" + problem + "'");
  }
  return written;
}

std::vector<std::string> run_extract(const ExperimentConfig& config,
                                     const std::string& manifest_path,
                                     const std::string& basis_path,
                                     Index count) {
  const MatrixFunction fn = load_problem(manifest_path);
  const Matrix basis_raw = read_matrix_market(basis_path);
  // Accept any full-rank basis file; orthonormalize when needed.
  OrthonormalBasis W = [&] {
    try {
      return OrthonormalBasis(basis_raw);
    } catch (const Error&) {
      return orthonormalize(basis_raw);
    }
  }();

  const Complex shift = effective_shift(config, fn.region().center());
  const auto extractions =
      rrr_extract(fn, W, shift, count, derive_seed(config.seed, 1));

  const std::string path = out_path(config, "extract.csv");
  CsvWriter csv(path,
                {"index", "mu", "rho", "residual", "refine_method",
                 "sketch_seed", "status"},
                config.deterministic);
  if (extractions.empty()) {
    csv.field(Index(0))
        .field(std::string(""))
        .field(std::string(""))
        .field(std::string(""))
        .field(std::string("none"))
        .field(derive_seed(config.seed, 1))
        .field(std::string("no_pairs_in_region"));
    csv.end_row();
  }
  for (std::size_t i = 0; i < extractions.size(); ++i) {
    const auto& ex = extractions[i];
    csv.field(static_cast<Index>(i))
        .field(ex.mu)
        .field(ex.rho ? format_complex(*ex.rho) : std::string(""))
        .field(ex.residual)
        .field(std::string(to_string(ex.refine_method)))
        .field(ex.sketch_seed)
        .field(std::string(ex.rho ? "ok" : "refine_failed"));
    csv.end_row();
  }
  return {path};
}

}  // namespace rrr
