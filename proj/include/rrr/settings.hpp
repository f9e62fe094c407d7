// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace rrr {

// One record for every tolerance used by the library. All defaults are
// relative tolerances unless noted. Functions take a Settings argument with
// this default so callers can tighten or relax individual knobs.
struct Settings {
  double residual_rtol = 1e-10;   // eigen/solve residual acceptance
  double rank_rtol = 1e-12;       // orthonormalization / pivot thresholds
  double ghost_filter = 1e-6;     // linearization ghost eigenvalue filter
  double mass_floor = 1e-10;      // compressed-pencil mass considered vanished
  double cluster_tol = 1e-8;      // duplicate eigenvalue merging
  double region_slack = 1e-9;     // membership slack relative to region size
  int newton_max_iter = 100;      // scalar and small-NEP Newton budgets
  int sweeps_per_dim = 100;       // iteration budget multiplier for eigensolves
  int sup_norm_samples = 64;      // boundary samples for sup-norm estimates
};

inline const Settings& default_settings() {
  static const Settings s;
  return s;
}

}  // namespace rrr
