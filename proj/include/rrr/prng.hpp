// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "rrr/types.hpp"

namespace rrr {

// Counter-based generator: the k-th output is a bijective hash of
// (seed + k * gamma), so a stream is a pure function of (seed, k).
// Streams for Monte Carlo trial i are split via derive_seed(master, i),
// which lets trials run in any order (or concurrently) and still
// reproduce bit-for-bit.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform on (0, 1]; never returns 0 so it is safe under log().
  double next_uniform();

  // Standard normal via the Box-Muller transform (exact, not ziggurat).
  double next_normal();

  // Complex normal with independent N(0, 1/2) real and imaginary parts,
  // i.e. E|z|^2 = 1. One Box-Muller pair per sample.
  Complex next_cnormal();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Stream splitting for trial i of a run keyed by `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

// n x m matrix with independent complex normal entries (E|entry|^2 = 1),
// filled column by column. Identical seeds give identical matrices.
Matrix gaussian_matrix(Index rows, Index cols, std::uint64_t seed);

Vector gaussian_vector(Index n, std::uint64_t seed);

}  // namespace rrr
