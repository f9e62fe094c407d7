// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace rrr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;  // dense complex, column-major
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace rrr
