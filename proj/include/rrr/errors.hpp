// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace rrr {

// Base class for all numerical failures raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RankDeficient : Error {
  using Error::Error;
};
struct ZeroVector : Error {
  using Error::Error;
};
struct NoConvergence : Error {
  using Error::Error;
};
struct SingularPencil : Error {
  using Error::Error;
};
struct SingularMatrix : Error {
  using Error::Error;
};
struct OutOfRegion : Error {
  using Error::Error;
};
struct DegenerateDenominator : Error {
  using Error::Error;
};
struct DerivativeVanishes : Error {
  using Error::Error;
};
struct SingularReduction : Error {
  using Error::Error;
};
struct DefectiveEigenvalue : Error {
  using Error::Error;
};
struct SingularCompression : Error {
  using Error::Error;
};
struct BadDelta : Error {
  using Error::Error;
};

// File / manifest problems; carries the offending path and line.
struct ParseError : Error {
  ParseError(const std::string& path, long line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what) {}
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace rrr
