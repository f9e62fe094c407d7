// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrr/gallery.hpp"
#include "rrr/types.hpp"

namespace rrr {

// Shared configuration for the experiment harness. Desk-scale defaults run
// in seconds to minutes; the sizes used for the published figures
// (n = 2000 half-dim, n = 4096, 2^17 trials) are reachable by flags.
struct ExperimentConfig {
  Index n = 200;        // ambient dimension (half-dimension for `ham`)
  Index m = 10;         // trial subspace dimension
  Index s = 10;         // oversampling width (fp)
  int steps = 10;       // subspace growth / iteration steps
  Index trials = 8192;  // Monte Carlo trials (fp, mc-cond)
  Complex shift{0, 0};  // target shift; per-experiment default when unset
  bool shift_set = false;
  std::uint64_t seed = 42;
  G21Mode g21 = G21Mode::zero;
  double eps = 1e-3;    // basis angle for gallery problems (gen)
  std::string out_dir = ".";
  bool deterministic = false;
};

// Each run_* writes figure-ready CSV into config.out_dir and returns the
// list of files written. Numerical failures inside a sweep are recorded in
// the affected rows (as inf) rather than aborting.
std::vector<std::string> run_ham(const ExperimentConfig& config);
std::vector<std::string> run_butterfly(const ExperimentConfig& config);
std::vector<std::string> run_fp(const ExperimentConfig& config);
std::vector<std::string> run_mc_cond(const ExperimentConfig& config);

// Oracle-backed invariant suite; returns the number of failed checks.
int run_verify(const ExperimentConfig& config,
               std::vector<std::string>* files = nullptr);

// Emit a gallery problem (manifest + Matrix Market files, plus basis and
// target files where the problem defines them).
std::vector<std::string> run_gen(const ExperimentConfig& config,
                                 const std::string& problem);

// Ad-hoc extraction on user-supplied files.
std::vector<std::string> run_extract(const ExperimentConfig& config,
                                     const std::string& manifest_path,
                                     const std::string& basis_path,
                                     Index count);

}  // namespace rrr
