// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "rrr/matrix_function.hpp"

namespace rrr {

// Problem files: a key = value manifest naming the term kinds plus one
// Matrix Market file per coefficient matrix (written next to the manifest).
//
//   n = 3
//   region = disc 0 0 2
//   nterms = 2
//   term0.kind = constant
//   term0.coeff = 1 0
//   term0.matrix = A0.mtx
//   term1.kind = monomial
//   term1.power = 1
//   term1.coeff = -1 0
//   term1.matrix = A1.mtx
//
// Analytic terms have no file representation (callbacks cannot be
// serialized); saving such a problem is an error.
void save_problem(const std::string& manifest_path, const MatrixFunction& fn,
                  const std::string& stem = "A");

MatrixFunction load_problem(const std::string& manifest_path);

}  // namespace rrr
