// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "rrr/types.hpp"

namespace rrr {

// Dense writer: "%%MatrixMarket matrix array complex general", column-major,
// 17 significant digits so doubles round-trip exactly.
void write_matrix_market(const std::string& path, const Matrix& m);

// Reader accepts array and coordinate formats, real/complex/integer fields
// and general/symmetric/hermitian/skew-symmetric symmetry; coordinate input
// is densified.
Matrix read_matrix_market(const std::string& path);

}  // namespace rrr
