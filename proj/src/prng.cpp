// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include "rrr/prng.hpp"

#include <cmath>

namespace rrr {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer (Stafford mix13).
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

std::uint64_t Prng::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double Prng::next_uniform() {
  // 53-bit mantissa, shifted into (0, 1].
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Prng::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  have_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

Complex Prng::next_cnormal() {
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  // (x + iy)/sqrt(2) with x, y iid N(0,1) collapses to r*exp(i*theta).
  const double r = std::sqrt(-std::log(u1));
  return Complex(r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(master + kGamma * (stream + 1));
}

Matrix gaussian_matrix(Index rows, Index cols, std::uint64_t seed) {
  Prng rng(seed);
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      out(i, j) = rng.next_cnormal();
    }
  }
  return out;
}

Vector gaussian_vector(Index n, std::uint64_t seed) {
  return gaussian_matrix(n, 1, seed).col(0);
}

}  // namespace rrr
